#include "topent/set_cover.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>

#include "topent/error.h"
#include "topent/rational.h"

namespace topent {
namespace {

using Bits = std::vector<std::uint64_t>;

std::size_t popcount(const Bits& b) {
  std::size_t c = 0;
  for (auto w : b) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t popcount_and_not(const Bits& a, const Bits& covered) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::size_t>(std::popcount(a[i] & ~covered[i]));
  return c;
}

bool is_subset(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] & ~b[i]) != 0) return false;
  }
  return true;
}

class CoverSearch {
 public:
  CoverSearch(std::size_t universe, std::vector<Bits> sets, std::uint64_t budget)
      : universe_(universe), words_((universe + 63) / 64), sets_(std::move(sets)), budget_(budget) {
    elem_sets_.resize(universe_);
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      for (std::size_t e = 0; e < universe_; ++e) {
        if ((sets_[s][e / 64] >> (e % 64)) & 1U) elem_sets_[e].push_back(s);
      }
    }
  }

  std::size_t lower_bound(const Bits& covered) const {
    const std::size_t uncovered = universe_ - popcount(covered);
    if (uncovered == 0) return 0;
    std::size_t widest = 0;
    for (const auto& s : sets_) widest = std::max(widest, popcount_and_not(s, covered));
    const std::size_t by_size = (uncovered + widest - 1) / widest;

    // Elements whose covering families are pairwise disjoint each need their
    // own set.
    std::vector<std::size_t> order;
    for (std::size_t e = 0; e < universe_; ++e) {
      if (!((covered[e / 64] >> (e % 64)) & 1U)) order.push_back(e);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return elem_sets_[a].size() < elem_sets_[b].size();
    });
    std::vector<char> used(sets_.size(), 0);
    std::size_t packing = 0;
    for (auto e : order) {
      bool free = true;
      for (auto s : elem_sets_[e]) {
        if (used[s]) {
          free = false;
          break;
        }
      }
      if (!free) continue;
      ++packing;
      for (auto s : elem_sets_[e]) used[s] = 1;
    }
    return std::max(by_size, packing);
  }

  void run(std::vector<std::size_t> incumbent) {
    best_ = std::move(incumbent);
    Bits covered(words_, 0);
    std::vector<std::size_t> chosen;
    finished_ = true;
    dfs(covered, chosen);
  }

  const std::vector<std::size_t>& best() const { return best_; }
  bool finished() const { return finished_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  void dfs(const Bits& covered, std::vector<std::size_t>& chosen) {
    if (!finished_) return;
    if (++nodes_ > budget_) {
      finished_ = false;
      return;
    }
    if (popcount(covered) == universe_) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    if (chosen.size() + lower_bound(covered) >= best_.size()) return;

    std::size_t pick = universe_;
    for (std::size_t e = 0; e < universe_; ++e) {
      if ((covered[e / 64] >> (e % 64)) & 1U) continue;
      if (pick == universe_ || elem_sets_[e].size() < elem_sets_[pick].size()) pick = e;
    }
    std::vector<std::size_t> branches = elem_sets_[pick];
    std::sort(branches.begin(), branches.end(), [&](std::size_t a, std::size_t b) {
      const auto ga = popcount_and_not(sets_[a], covered);
      const auto gb = popcount_and_not(sets_[b], covered);
      return ga != gb ? ga > gb : a < b;
    });
    Bits next(words_);
    for (auto s : branches) {
      for (std::size_t i = 0; i < words_; ++i) next[i] = covered[i] | sets_[s][i];
      chosen.push_back(s);
      dfs(next, chosen);
      chosen.pop_back();
      if (!finished_) return;
    }
  }

  std::size_t universe_;
  std::size_t words_;
  std::vector<Bits> sets_;
  std::vector<std::vector<std::size_t>> elem_sets_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool finished_ = true;
  std::vector<std::size_t> best_;
};

}  // namespace

std::vector<std::size_t> greedy_set_cover(std::size_t universe,
                                          const std::vector<std::vector<std::uint32_t>>& sets) {
  std::vector<char> covered(universe, 0);
  std::size_t remaining = universe;
  std::vector<std::size_t> chosen;
  std::vector<char> taken(sets.size(), 0);
  while (remaining > 0) {
    std::size_t best = sets.size();
    std::size_t best_gain = 0;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      if (taken[s]) continue;
      std::size_t gain = 0;
      for (auto e : sets[s]) gain += covered[e] ? 0 : 1;
      if (gain > best_gain) {
        best_gain = gain;
        best = s;
      }
    }
    if (best == sets.size()) break;  // not a cover; caller validates
    taken[best] = 1;
    chosen.push_back(best);
    for (auto e : sets[best]) {
      if (!covered[e]) {
        covered[e] = 1;
        --remaining;
      }
    }
  }
  return chosen;
}

std::size_t set_cover_dual_bound(std::size_t universe,
                                 const std::vector<std::vector<std::uint32_t>>& sets) {
  std::vector<std::size_t> widest(universe, 0);
  for (const auto& s : sets) {
    for (auto e : s) widest[e] = std::max(widest[e], s.size());
  }
  std::map<std::size_t, std::int64_t> by_width;
  for (auto w : widest) {
    if (w > 0) ++by_width[w];
  }
  try {
    Rational total;
    for (const auto& [w, count] : by_width) total += Rational(count, static_cast<std::int64_t>(w));
    const std::int64_t q = total.num() / total.den();
    return static_cast<std::size_t>(q + (total.num() % total.den() != 0 ? 1 : 0));
  } catch (const ArithmeticOverflow&) {
    // Too many distinct widths for an exact sum; round the float sum down
    // before taking the ceiling so the bound stays valid.
    long double total = 0;
    for (const auto& [w, count] : by_width) total += static_cast<long double>(count) / static_cast<long double>(w);
    total -= 1e-9L * static_cast<long double>(universe);
    return total <= 0 ? 0 : static_cast<std::size_t>(std::ceil(total));
  }
}

SetCoverResult solve_set_cover(std::size_t universe, const std::vector<std::vector<std::uint32_t>>& sets,
                               const SetCoverOptions& options) {
  SetCoverResult result;
  if (universe == 0) {
    result.exact = true;
    return result;
  }
  const auto greedy = greedy_set_cover(universe, sets);
  const std::size_t dual = set_cover_dual_bound(universe, sets);
  if (universe > options.exact_universe_cap) {
    result.size = greedy.size();
    result.lower_bound = std::min(dual, greedy.size());
    result.exact = result.lower_bound == result.size;
    result.chosen = greedy;
    return result;
  }

  // Drop duplicate and dominated sets; minimum cardinality is unchanged.
  const std::size_t words = (universe + 63) / 64;
  std::vector<Bits> bits(sets.size(), Bits(words, 0));
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (auto e : sets[s]) bits[s][e / 64] |= std::uint64_t{1} << (e % 64);
  }
  std::vector<std::size_t> order(sets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sets[a].size() > sets[b].size(); });
  std::vector<std::size_t> kept;
  for (auto s : order) {
    bool dominated = false;
    for (auto k : kept) {
      if (is_subset(bits[s], bits[k])) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(s);
  }
  std::vector<Bits> reduced;
  reduced.reserve(kept.size());
  for (auto k : kept) reduced.push_back(bits[k]);

  // Incumbent: greedy on the reduced family, mapped to reduced indices.
  std::vector<std::vector<std::uint32_t>> reduced_lists;
  for (auto k : kept) reduced_lists.push_back(sets[k]);
  std::vector<std::size_t> incumbent = greedy_set_cover(universe, reduced_lists);

  CoverSearch search(universe, std::move(reduced), options.node_budget);
  const Bits empty(words, 0);
  const std::size_t root_bound = std::max(dual, search.lower_bound(empty));
  search.run(incumbent);

  for (auto r : search.best()) result.chosen.push_back(kept[r]);
  std::sort(result.chosen.begin(), result.chosen.end());
  result.size = result.chosen.size();
  result.exact = search.finished();
  result.lower_bound = result.exact ? result.size : std::min(root_bound, result.size);
  result.nodes = search.nodes();
  return result;
}

}  // namespace topent
