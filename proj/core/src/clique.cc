#include "topent/clique.h"

#include <algorithm>
#include <bit>
#include <numeric>

#include "topent/error.h"

namespace topent {
namespace {

using Bits = std::vector<std::uint64_t>;

bool any(const Bits& b) {
  for (auto w : b) {
    if (w != 0) return true;
  }
  return false;
}

// Bitset branch and bound over a graph relabelled so that vertex 0 has the
// largest degree.
class CliqueSearch {
 public:
  CliqueSearch(const DenseGraph& g, std::uint64_t budget) : g_(g), words_(g.words()), budget_(budget) {}

  void run(std::vector<std::size_t> incumbent) {
    best_ = std::move(incumbent);
    Bits p(words_, 0);
    for (std::size_t v = 0; v < g_.size(); ++v) p[v / 64] |= std::uint64_t{1} << (v % 64);
    std::vector<std::size_t> current;
    root_bound_ = 0;
    expand(p, current, true);
  }

  const std::vector<std::size_t>& best() const { return best_; }
  bool finished() const { return finished_; }
  std::uint64_t nodes() const { return nodes_; }
  std::size_t root_bound() const { return root_bound_; }

 private:
  void color_sort(const Bits& p, std::vector<std::size_t>& order, std::vector<std::size_t>& colors) const {
    Bits uncolored = p;
    std::size_t color = 0;
    while (any(uncolored)) {
      ++color;
      Bits q = uncolored;
      for (std::size_t w = 0; w < words_; ++w) {
        while (q[w] != 0) {
          const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(q[w]));
          q[w] &= q[w] - 1;
          uncolored[v / 64] &= ~(std::uint64_t{1} << (v % 64));
          const std::uint64_t* row = g_.row(v);
          for (std::size_t i = 0; i < words_; ++i) q[i] &= ~row[i];
          order.push_back(v);
          colors.push_back(color);
        }
      }
    }
  }

  void expand(Bits p, std::vector<std::size_t>& current, bool root) {
    if (!finished_) return;
    if (++nodes_ > budget_) {
      finished_ = false;
      return;
    }
    std::vector<std::size_t> order;
    std::vector<std::size_t> colors;
    color_sort(p, order, colors);
    if (root && !colors.empty()) root_bound_ = colors.back();
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current.size() + colors[i] <= best_.size()) return;
      const std::size_t v = order[i];
      current.push_back(v);
      Bits next(words_);
      const std::uint64_t* row = g_.row(v);
      for (std::size_t w = 0; w < words_; ++w) next[w] = p[w] & row[w];
      if (any(next)) {
        expand(std::move(next), current, false);
      } else if (current.size() > best_.size()) {
        best_ = current;
      }
      current.pop_back();
      p[v / 64] &= ~(std::uint64_t{1} << (v % 64));
      if (!finished_) return;
    }
  }

  const DenseGraph& g_;
  std::size_t words_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool finished_ = true;
  std::size_t root_bound_ = 0;
  std::vector<std::size_t> best_;
};

}  // namespace

DenseGraph::DenseGraph(std::size_t n) : n_(n), words_((n + 63) / 64), rows_(n * ((n + 63) / 64), 0) {}

void DenseGraph::add_edge(std::size_t u, std::size_t v) {
  if (u == v) return;
  rows_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
  rows_[v * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
}

std::vector<std::size_t> greedy_clique(const DenseGraph& g, const std::vector<std::size_t>& seed) {
  std::vector<std::size_t> clique = seed;
  std::vector<char> in(g.size(), 0);
  for (auto v : seed) in[v] = 1;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (in[v]) continue;
    bool ok = true;
    for (auto u : clique) {
      if (!g.adjacent(u, v)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      clique.push_back(v);
      in[v] = 1;
    }
  }
  return clique;
}

CliqueResult maximum_clique(const DenseGraph& g, const std::vector<std::size_t>& seed,
                            std::uint64_t node_budget) {
  CliqueResult result;
  const std::size_t n = g.size();
  if (n == 0) {
    result.exact = true;
    return result;
  }
  for (std::size_t i = 0; i < seed.size(); ++i) {
    for (std::size_t j = i + 1; j < seed.size(); ++j) {
      if (!g.adjacent(seed[i], seed[j])) throw InvalidArgument("clique seed is not a clique");
    }
  }

  // Relabel by nonincreasing degree.
  std::vector<std::size_t> degree(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w = 0; w < g.words(); ++w) degree[v] += static_cast<std::size_t>(std::popcount(g.row(v)[w]));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;
  DenseGraph relabelled(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (g.adjacent(u, v)) relabelled.add_edge(rank[u], rank[v]);
    }
  }

  std::vector<std::size_t> incumbent = greedy_clique(g, seed);
  std::vector<std::size_t> relabelled_seed;
  for (auto v : incumbent) relabelled_seed.push_back(rank[v]);
  const auto alt = greedy_clique(relabelled);
  if (alt.size() > relabelled_seed.size()) relabelled_seed = alt;

  CliqueSearch search(relabelled, node_budget);
  search.run(relabelled_seed);
  for (auto v : search.best()) result.vertices.push_back(order[v]);
  std::sort(result.vertices.begin(), result.vertices.end());
  result.exact = search.finished();
  result.upper_bound = result.exact ? result.vertices.size()
                                    : std::max(result.vertices.size(), search.root_bound());
  result.nodes = search.nodes();
  return result;
}

}  // namespace topent
