#include "dagwish/dag.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dagwish {

struct Dag::Impl {
  int p = 0;
  std::vector<Edge> edges;          // sorted by (to, from)
  std::vector<std::size_t> par_off;  // size p + 1
  std::vector<int> par;
  std::vector<std::size_t> ch_off;
  std::vector<int> ch;
  std::uint64_t hash = 0;
};

namespace {

bool column_order(const Edge& a, const Edge& b) {
  return a.to != b.to ? a.to < b.to : a.from < b.from;
}

}  // namespace

Dag::Dag(int p) : Dag(p, {}) {}

Dag::Dag(int p, std::vector<Edge> edges) {
  if (p < 0) throw std::invalid_argument("Dag: negative vertex count");
  for (const Edge& e : edges) {
    if (e.from < 0 || e.to < 0 || e.from >= p || e.to >= p)
      throw std::invalid_argument("Dag: edge vertex out of range");
    if (e.from <= e.to)
      throw std::invalid_argument("Dag: edge " + std::to_string(e.from + 1) + " -> " +
                                  std::to_string(e.to + 1) +
                                  " violates the parent ordering");
  }
  std::sort(edges.begin(), edges.end(), column_order);
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("Dag: duplicate edge");

  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->par_off.assign(p + 1, 0);
  impl->ch_off.assign(p + 1, 0);
  for (const Edge& e : edges) {
    ++impl->par_off[e.to + 1];
    ++impl->ch_off[e.from + 1];
  }
  std::partial_sum(impl->par_off.begin(), impl->par_off.end(), impl->par_off.begin());
  std::partial_sum(impl->ch_off.begin(), impl->ch_off.end(), impl->ch_off.begin());
  impl->par.resize(edges.size());
  impl->ch.resize(edges.size());
  std::vector<std::size_t> fill(impl->ch_off.begin(), impl->ch_off.end() - 1);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    impl->par[k] = edges[k].from;
    impl->ch[fill[edges[k].from]++] = edges[k].to;
  }
  // Children arrive in ascending `to` order because edges are column sorted.
  std::uint64_t h = 0xcbf29ce484222325ULL ^ static_cast<std::uint64_t>(p);
  for (const Edge& e : edges) {
    h = (h ^ static_cast<std::uint64_t>(e.from)) * 0x100000001b3ULL;
    h = (h ^ (static_cast<std::uint64_t>(e.to) << 20)) * 0x100000001b3ULL;
  }
  impl->hash = h;
  impl->edges = std::move(edges);
  impl_ = std::move(impl);
}

Dag Dag::from_one_based(int p, const std::vector<std::pair<int, int>>& edges) {
  std::vector<Edge> e;
  e.reserve(edges.size());
  for (auto [i, j] : edges) {
    if (i < 1 || j < 1 || i > p || j > p)
      throw std::invalid_argument("Dag: edge (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ") out of range for p = " +
                                  std::to_string(p));
    e.push_back({i - 1, j - 1});
  }
  return Dag(p, std::move(e));
}

Dag Dag::complete(int p) {
  std::vector<Edge> e;
  for (int j = 0; j < p; ++j)
    for (int i = j + 1; i < p; ++i) e.push_back({i, j});
  return Dag(p, std::move(e));
}

int Dag::p() const { return impl_->p; }
std::size_t Dag::num_edges() const { return impl_->edges.size(); }
const std::vector<Edge>& Dag::edges() const { return impl_->edges; }

void Dag::check_vertex(int i) const {
  if (i < 0 || i >= impl_->p)
    throw std::out_of_range("Dag: vertex " + std::to_string(i) + " out of range");
}

std::span<const int> Dag::parents(int i) const {
  check_vertex(i);
  const auto& o = impl_->par_off;
  return {impl_->par.data() + o[i], o[i + 1] - o[i]};
}

std::span<const int> Dag::children(int i) const {
  check_vertex(i);
  const auto& o = impl_->ch_off;
  return {impl_->ch.data() + o[i], o[i + 1] - o[i]};
}

std::size_t Dag::edge_offset(int i) const {
  check_vertex(i);
  return impl_->par_off[i];
}

std::vector<int> Dag::family(int i) const {
  auto pa = parents(i);
  std::vector<int> fa;
  fa.reserve(pa.size() + 1);
  fa.push_back(i);
  fa.insert(fa.end(), pa.begin(), pa.end());
  return fa;
}

std::vector<int> Dag::later_nonparents(int i) const {
  auto pa = parents(i);
  std::vector<int> out;
  auto it = pa.begin();
  for (int k = i + 1; k < impl_->p; ++k) {
    if (it != pa.end() && *it == k) {
      ++it;
      continue;
    }
    out.push_back(k);
  }
  return out;
}

bool Dag::has_edge(int from, int to) const {
  if (from <= to || from >= impl_->p || to < 0) return false;
  auto pa = parents(to);
  return std::binary_search(pa.begin(), pa.end(), from);
}

bool Dag::adjacent(int a, int b) const { return has_edge(a, b) || has_edge(b, a); }

long Dag::edge_index(int from, int to) const {
  if (from <= to || from >= impl_->p || to < 0) return -1;
  auto pa = parents(to);
  auto it = std::lower_bound(pa.begin(), pa.end(), from);
  if (it == pa.end() || *it != from) return -1;
  return static_cast<long>(impl_->par_off[to] + (it - pa.begin()));
}

Dag Dag::toggled(int a, int b) const {
  if (a == b) throw std::invalid_argument("Dag::toggled: self-loop");
  Edge e{std::max(a, b), std::min(a, b)};
  check_vertex(e.from);
  check_vertex(e.to);
  std::vector<Edge> edges = impl_->edges;
  auto it = std::lower_bound(edges.begin(), edges.end(), e, column_order);
  if (it != edges.end() && *it == e)
    edges.erase(it);
  else
    edges.insert(it, e);
  return Dag(impl_->p, std::move(edges));
}

std::uint64_t Dag::hash() const { return impl_->hash; }

bool Dag::operator==(const Dag& other) const {
  if (impl_ == other.impl_) return true;
  return impl_->p == other.impl_->p && impl_->edges == other.impl_->edges;
}

VertexSets vertex_sets(const Dag& d, int i) {
  auto pa = d.parents(i);
  auto ch = d.children(i);
  return {std::vector<int>(pa.begin(), pa.end()), std::vector<int>(ch.begin(), ch.end()),
          d.family(i), d.later_nonparents(i)};
}

bool UndirectedEdgeSet::contains(int a, int b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(a, b));
}

UndirectedEdgeSet undirected_edges(const Dag& d) {
  UndirectedEdgeSet u{d.p(), {}};
  for (const Edge& e : d.edges()) u.pairs.emplace_back(e.to, e.from);
  std::sort(u.pairs.begin(), u.pairs.end());
  return u;
}

UndirectedEdgeSet moral_graph(const Dag& d) {
  UndirectedEdgeSet u = undirected_edges(d);
  for (int k = 0; k < d.p(); ++k) {
    auto pa = d.parents(k);
    for (std::size_t a = 0; a < pa.size(); ++a)
      for (std::size_t b = a + 1; b < pa.size(); ++b) u.pairs.emplace_back(pa[a], pa[b]);
  }
  std::sort(u.pairs.begin(), u.pairs.end());
  u.pairs.erase(std::unique(u.pairs.begin(), u.pairs.end()), u.pairs.end());
  return u;
}

Classification classify(const Dag& d) {
  Classification c;
  c.perfect = true;
  c.transitive = true;
  c.no_induced_fork = true;
  for (int v = 0; v < d.p(); ++v) {
    auto pa = d.parents(v);
    for (std::size_t a = 0; a < pa.size() && c.perfect; ++a)
      for (std::size_t b = a + 1; b < pa.size(); ++b)
        if (!d.adjacent(pa[a], pa[b])) {
          c.perfect = false;
          break;
        }
    auto ch = d.children(v);
    for (std::size_t a = 0; a < ch.size() && c.no_induced_fork; ++a)
      for (std::size_t b = a + 1; b < ch.size(); ++b)
        if (!d.adjacent(ch[a], ch[b])) {
          c.no_induced_fork = false;
          break;
        }
    // u -> v -> w requires u -> w
    for (int u : pa) {
      for (int w : ch)
        if (!d.has_edge(u, w)) {
          c.transitive = false;
          break;
        }
      if (!c.transitive) break;
    }
  }
  if (c.transitive && c.perfect)
    c.homogeneous = Homogeneity::type_I;
  else if (c.transitive && c.no_induced_fork)
    c.homogeneous = Homogeneity::type_II;
  return c;
}

Edge candidate_pair(int p, std::size_t index) {
  for (int j = 0; j + 1 < p; ++j) {
    std::size_t width = static_cast<std::size_t>(p - 1 - j);
    if (index < width) return {j + 1 + static_cast<int>(index), j};
    index -= width;
  }
  throw std::out_of_range("candidate_pair: index out of range");
}

std::vector<Edge> sample_toggles(int p, std::size_t count, Rng& rng) {
  const std::size_t total = num_candidate_pairs(p);
  std::vector<Edge> out;
  if (count >= total) {
    for (std::size_t k = 0; k < total; ++k) out.push_back(candidate_pair(p, k));
    return out;
  }
  std::vector<std::size_t> picked;
  picked.reserve(count);
  if (count * 4 > total) {
    std::vector<std::size_t> idx(total);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t k = 0; k < count; ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, total - 1);
      std::swap(idx[k], idx[pick(rng)]);
      picked.push_back(idx[k]);
    }
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, total - 1);
    while (picked.size() < count) {
      std::size_t k = pick(rng);
      if (std::find(picked.begin(), picked.end(), k) == picked.end()) picked.push_back(k);
    }
  }
  for (std::size_t k : picked) out.push_back(candidate_pair(p, k));
  return out;
}

std::vector<Dag> one_edge_neighbors(const Dag& d, std::size_t count, Rng& rng) {
  if (count < 1) throw std::invalid_argument("one_edge_neighbors: count must be >= 1");
  std::vector<Dag> out;
  for (const Edge& e : sample_toggles(d.p(), count, rng)) out.push_back(d.toggled(e.from, e.to));
  return out;
}

}  // namespace dagwish
