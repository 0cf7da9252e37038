#ifndef TOPENT_CLIQUE_H_
#define TOPENT_CLIQUE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace topent {

// Dense undirected graph over vertices 0..n-1, stored as adjacency bitsets.
class DenseGraph {
 public:
  explicit DenseGraph(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t words() const { return words_; }
  void add_edge(std::size_t u, std::size_t v);
  bool adjacent(std::size_t u, std::size_t v) const {
    return (rows_[u * words_ + v / 64] >> (v % 64)) & 1U;
  }
  const std::uint64_t* row(std::size_t u) const { return rows_.data() + u * words_; }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> rows_;
};

struct CliqueResult {
  std::vector<std::size_t> vertices;
  // True when the search finished inside its node budget.
  bool exact = false;
  // Upper bound on the clique number (== vertices.size() when exact).
  std::size_t upper_bound = 0;
  std::uint64_t nodes = 0;
};

// Maximum clique by branch and bound with greedy-coloring bounds, seeded by
// a greedy clique. `seed`, when given, must be a clique and is used as the
// incumbent.
CliqueResult maximum_clique(const DenseGraph& g, const std::vector<std::size_t>& seed = {},
                            std::uint64_t node_budget = 50'000'000);

// Greedy maximal clique scanning vertices in index order, starting from `seed`.
std::vector<std::size_t> greedy_clique(const DenseGraph& g, const std::vector<std::size_t>& seed = {});

}  // namespace topent

#endif  // TOPENT_CLIQUE_H_
