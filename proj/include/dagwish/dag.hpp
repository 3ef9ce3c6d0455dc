#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "dagwish/rng.hpp"

namespace dagwish {

// Directed edge from -> to, 0-based. Parent ordering requires from > to.
struct Edge {
  int from;
  int to;
  auto operator<=>(const Edge&) const = default;
};

// Immutable parent-ordered DAG. Copies share storage.
//
// Edges are kept sorted by (to, from), so the edges of column j of L are
// contiguous and parents(j) is ascending. IncompleteMatrix and
// CholeskyFactor use this order for their off-diagonal storage.
class Dag {
 public:
  Dag() : Dag(0) {}
  explicit Dag(int p);
  Dag(int p, std::vector<Edge> edges);

  // Edges given as 1-based (i, j) pairs with i -> j.
  static Dag from_one_based(int p, const std::vector<std::pair<int, int>>& edges);
  static Dag complete(int p);

  int p() const;
  std::size_t num_edges() const;
  const std::vector<Edge>& edges() const;

  std::span<const int> parents(int i) const;
  std::span<const int> children(int i) const;
  int num_parents(int i) const { return static_cast<int>(parents(i).size()); }
  // Offset of column i's first edge within edges().
  std::size_t edge_offset(int i) const;

  // i followed by its parents.
  std::vector<int> family(int i) const;
  // {j > i} minus pa(i), ascending.
  std::vector<int> later_nonparents(int i) const;

  bool has_edge(int from, int to) const;
  bool adjacent(int a, int b) const;
  // Index of edge from -> to within edges(), or -1.
  long edge_index(int from, int to) const;

  // Adds or removes the edge between a and b (oriented from the larger label).
  Dag toggled(int a, int b) const;

  std::uint64_t hash() const;
  bool operator==(const Dag& other) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  void check_vertex(int i) const;
};

struct VertexSets {
  std::vector<int> pa;
  std::vector<int> ch;
  std::vector<int> fa;
  std::vector<int> after_nonparents;
};

VertexSets vertex_sets(const Dag& d, int i);

// Unordered pairs stored as (a, b) with a < b, sorted.
struct UndirectedEdgeSet {
  int p = 0;
  std::vector<std::pair<int, int>> pairs;
  bool contains(int a, int b) const;
  std::size_t size() const { return pairs.size(); }
};

UndirectedEdgeSet undirected_edges(const Dag& d);
UndirectedEdgeSet moral_graph(const Dag& d);

enum class Homogeneity { none, type_I, type_II };

struct Classification {
  bool perfect = false;
  bool transitive = false;
  bool no_induced_fork = false;  // no induced j <- i -> k
  Homogeneity homogeneous = Homogeneity::none;
};

Classification classify(const Dag& d);

// Number of ordered candidate pairs (i, j), i > j.
inline std::size_t num_candidate_pairs(int p) {
  return static_cast<std::size_t>(p) * static_cast<std::size_t>(p - 1) / 2;
}
// Bijection between [0, p(p-1)/2) and candidate pairs (from > to).
Edge candidate_pair(int p, std::size_t index);

// Distinct edge toggles sampled uniformly without replacement; all of them
// if count exceeds the neighborhood size.
std::vector<Edge> sample_toggles(int p, std::size_t count, Rng& rng);

std::vector<Dag> one_edge_neighbors(const Dag& d, std::size_t count, Rng& rng);

}  // namespace dagwish
