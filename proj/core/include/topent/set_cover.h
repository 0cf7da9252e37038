#ifndef TOPENT_SET_COVER_H_
#define TOPENT_SET_COVER_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace topent {

struct SetCoverResult {
  // Size of the best cover found; equals the optimum when `exact`.
  std::size_t size = 0;
  // Certified lower bound on the optimum (== size when exact).
  std::size_t lower_bound = 0;
  bool exact = false;
  // Indices into the input family.
  std::vector<std::size_t> chosen;
  std::uint64_t nodes = 0;
};

struct SetCoverOptions {
  // Branch-and-bound is used up to this universe size; beyond it only the
  // greedy upper bound and the dual lower bound are reported.
  std::size_t exact_universe_cap = 256;
  std::uint64_t node_budget = 50'000'000;
};

// Minimum-cardinality cover of {0..universe-1} by the given sets. The union
// of the family must be the whole universe (checked by the caller).
SetCoverResult solve_set_cover(std::size_t universe, const std::vector<std::vector<std::uint32_t>>& sets,
                               const SetCoverOptions& options = {});

std::vector<std::size_t> greedy_set_cover(std::size_t universe,
                                          const std::vector<std::vector<std::uint32_t>>& sets);

// ceil(sum_x 1 / max{|S| : x in S}): feasible for the covering LP dual.
std::size_t set_cover_dual_bound(std::size_t universe,
                                 const std::vector<std::vector<std::uint32_t>>& sets);

}  // namespace topent

#endif  // TOPENT_SET_COVER_H_
