#include "dagwish/estimators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "dagwish/errors.hpp"

namespace dagwish {

std::string to_string(Target t) { return t == Target::sigma ? "sigma" : "omega"; }

Matrix mle(const SuffStats& stats, const Dag& d) {
  if (stats.S.rows() != d.p() || stats.S.cols() != d.p())
    throw std::invalid_argument("mle: dimension mismatch");
  int need = 1;
  for (int i = 0; i < d.p(); ++i) need = std::max(need, d.num_parents(i) + 1);
  if (stats.n < need)
    throw std::invalid_argument("mle: sample size " + std::to_string(stats.n) +
                                " is below max(pa_i + 1) = " + std::to_string(need));
  return sigma_from_xi(xi_from_family_blocks(stats.S, d, 1e-12));
}

Matrix map_estimate(const SuffStats& stats, const DagWishartParams& params) {
  DagWishartParams post = posterior(params, stats);
  validate(post);
  require_shape(post, 2.0, "map_estimate");
  const Dag& d = post.dag;
  XiPoint xi{d, Vector(d.p()), Vector(static_cast<Eigen::Index>(d.num_edges()))};
  for (int i = 0; i < d.p(); ++i) {
    Regression r = regress(post.U, i, to_vector(d.parents(i)));
    xi.lambda(i) = r.lambda / post.alpha(i);
    xi.beta.segment(static_cast<Eigen::Index>(d.edge_offset(i)), r.beta.size()) = r.beta;
  }
  return sigma_from_xi(xi);
}

Matrix bayes_sigma(const SuffStats& stats, const DagWishartParams& params) {
  return complete_covariance(mean_incomplete_covariance(posterior(params, stats)));
}

Matrix bayes_omega(const SuffStats& stats, const DagWishartParams& params) {
  return complete_precision(mean_incomplete_precision(posterior(params, stats))).omega;
}

double loss_l2(const Matrix& M, const Matrix& Mhat, const Dag& d) {
  if (M.rows() != d.p() || M.cols() != d.p() || Mhat.rows() != d.p() || Mhat.cols() != d.p())
    throw std::invalid_argument("loss_l2: dimension mismatch");
  double s = 0.0;
  for (const Edge& e : d.edges()) {
    const double diff = M(e.from, e.to) - Mhat(e.from, e.to);
    s += diff * diff;
  }
  return s;
}

double loss_stein(const Matrix& Mhat, const Matrix& M) {
  if (Mhat.rows() != M.rows() || Mhat.cols() != M.cols())
    throw std::invalid_argument("loss_stein: dimension mismatch");
  auto llt_m = require_spd(M, "loss_stein");
  auto llt_hat = require_spd(Mhat, "loss_stein");
  const double tr = llt_m.solve(Mhat).trace();
  return tr - (log_det(llt_hat) - log_det(llt_m)) - static_cast<double>(M.rows());
}

namespace {

struct RepOutcome {
  bool mle_ok = false;
  // [config][estimator][loss]
  std::vector<std::vector<std::array<double, 2>>> losses;
  std::vector<std::vector<bool>> ok;
};

const std::vector<std::pair<std::string, Target>>& estimator_names() {
  static const std::vector<std::pair<std::string, Target>> names = {
      {"Omega_ML", Target::omega},         {"Omega_BAYES", Target::omega},
      {"inv(Sigma_BAYES)", Target::omega}, {"Omega_MAP", Target::omega},
      {"Sigma_ML", Target::sigma},         {"Sigma_BAYES", Target::sigma},
      {"inv(Omega_BAYES)", Target::sigma}, {"Sigma_MAP", Target::sigma},
  };
  return names;
}

}  // namespace

std::vector<ImprovementRow> improvement_table(const CholeskyFactor& truth,
                                              const std::vector<ImprovementConfig>& configs,
                                              const std::vector<int>& ns, int replications,
                                              std::uint64_t seed) {
  if (replications < 1) throw std::invalid_argument("improvement_table: replications < 1");
  validate(truth);
  const Dag& d = truth.dag;
  const Matrix omega_true = precision_from_cholesky(truth);
  const Matrix sigma_true = inverse_spd(omega_true);
  const auto& names = estimator_names();
  const std::size_t n_est = names.size();
  const std::size_t n_cfg = configs.size();

  std::vector<ImprovementRow> rows;
  for (int n : ns) {
    std::vector<RepOutcome> out(replications);
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < replications; ++r) {
      RepOutcome& o = out[r];
      o.losses.assign(n_cfg, std::vector<std::array<double, 2>>(n_est, {0.0, 0.0}));
      o.ok.assign(n_cfg, std::vector<bool>(n_est, false));
      Rng rng = make_rng(seed, "improvement/n=" + std::to_string(n), r);
      Matrix X = sample_data(truth, n, rng);
      SuffStats stats = suff_stats(X);
      Matrix sigma_ml, omega_ml;
      try {
        sigma_ml = mle(stats, d);
        omega_ml = inverse_spd(sigma_ml);
        o.mle_ok = true;
      } catch (const std::exception&) {
        continue;
      }
      for (std::size_t c = 0; c < n_cfg; ++c) {
        const ImprovementConfig& cfg = configs[c];
        DagWishartParams params{d, cfg.u * Matrix::Identity(d.p(), d.p()),
                                alpha_rule(d, cfg.b, cfg.c)};
        std::vector<std::optional<Matrix>> est(n_est);
        est[0] = omega_ml;
        est[4] = sigma_ml;
        try {
          est[1] = bayes_omega(stats, params);
          est[6] = inverse_spd(*est[1]);
        } catch (const std::exception&) {
        }
        try {
          est[5] = bayes_sigma(stats, params);
          est[2] = inverse_spd(*est[5]);
        } catch (const std::exception&) {
        }
        try {
          est[7] = map_estimate(stats, params);
          est[3] = inverse_spd(*est[7]);
        } catch (const std::exception&) {
        }
        for (std::size_t k = 0; k < n_est; ++k) {
          if (!est[k]) continue;
          const Matrix& truth_m = names[k].second == Target::omega ? omega_true : sigma_true;
          try {
            o.losses[c][k] = {loss_stein(*est[k], truth_m), loss_l2(truth_m, *est[k], d)};
            o.ok[c][k] = true;
          } catch (const std::exception&) {
          }
        }
      }
    }

    for (std::size_t c = 0; c < n_cfg; ++c) {
      for (std::size_t k = 0; k < n_est; ++k) {
        const std::size_t base = names[k].second == Target::omega ? 0 : 4;
        for (int loss = 0; loss < 2; ++loss) {
          std::vector<double> e, m;
          int failures = 0;
          for (const RepOutcome& o : out) {
            if (!o.mle_ok || !o.ok[c][k] || !o.ok[c][base]) {
              ++failures;
              continue;
            }
            e.push_back(o.losses[c][k][loss]);
            m.push_back(o.losses[c][base][loss]);
          }
          ImprovementRow row{names[k].first, names[k].second, n, loss == 0 ? "L1" : "L2",
                             std::nan(""), std::nan(""), configs[c].c, configs[c].u,
                             static_cast<int>(e.size()), failures};
          if (!e.empty()) {
            const double cnt = static_cast<double>(e.size());
            double se = 0.0, sm = 0.0;
            for (std::size_t t = 0; t < e.size(); ++t) {
              se += e[t];
              sm += m[t];
            }
            const double me = se / cnt, mm = sm / cnt;
            const double ratio = mm > 0.0 ? me / mm : 1.0;
            double var = 0.0;
            for (std::size_t t = 0; t < e.size(); ++t) {
              const double z = e[t] - ratio * m[t];
              var += z * z;
            }
            var = e.size() > 1 ? var / (cnt - 1.0) : 0.0;
            row.improvement_pct = 100.0 * (1.0 - ratio);
            row.mc_se = mm > 0.0 ? 100.0 * std::sqrt(var / cnt) / mm : 0.0;
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

}  // namespace dagwish
