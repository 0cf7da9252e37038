#ifndef TOPENT_COVER_H_
#define TOPENT_COVER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "topent/dynamics.h"
#include "topent/space.h"

namespace topent {

// Indexed family of point subsets of a finite space. Elements are kept as
// sorted, duplicate-free point lists; on a finite space every subset is open.
class OpenCover {
 public:
  OpenCover(std::size_t space_size, std::vector<std::vector<PointId>> elements);

  // Partition with cell i = { x : labels[x] == i }, empty labels dropped.
  static OpenCover from_labels(std::span<const std::uint32_t> labels);
  // The one-element cover {X}.
  static OpenCover trivial(std::size_t space_size);

  std::size_t space_size() const { return space_size_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<std::vector<PointId>>& elements() const { return elements_; }
  const std::vector<PointId>& operator[](std::size_t i) const { return elements_[i]; }

  bool covers_space() const;
  // Elements pairwise disjoint.
  bool is_partition() const;

  // Element index containing each point when this is a partition.
  std::vector<std::uint32_t> partition_labels() const;

 private:
  std::size_t space_size_;
  std::vector<std::vector<PointId>> elements_;
};

// Element i of the result is { x : f_1^j(x) in cover[i] }.
OpenCover preimage_cover(const Nads& sys, const OpenCover& cover, std::size_t j);
OpenCover preimage_cover(const OrbitTable& orbits, const OpenCover& cover, std::size_t j);

// All nonempty intersections taking one element from each cover; repeated
// sets are kept once.
OpenCover join(std::span<const OpenCover> covers);

// join_{j<n} f_1^{-j}(cover).
OpenCover iterated_join(const OrbitTable& orbits, const OpenCover& cover, std::size_t n);
OpenCover iterated_join(const Nads& sys, const OpenCover& cover, std::size_t n);

struct CoverCaps {
  // Largest space on which a partition is counted by the shortcut.
  std::size_t partition_cap = 4096;
  // Largest space on which a general cover goes through branch and bound.
  std::size_t general_cap = 256;
};

struct SubcoverCount {
  std::uint64_t count = 0;  // exact value, or the greedy upper bound
  std::uint64_t lower_bound = 0;
  bool exact = false;
  std::vector<std::size_t> chosen;  // indices of a subcover of size `count`
};

// N(U): the minimal number of elements of `cover` whose union is the space.
// Throws NotACover when the elements do not cover.
SubcoverCount minimal_subcover_count(const OpenCover& cover, const CoverCaps& caps = {});

// U = {U1, U2} of the symbolic X space: split by first symbol, limits on
// their own side.
OpenCover example_first_symbol_cover(const SymbolicLayout& layout);

// V* on the symbolic Y space: V1 = {0} and all levels > n1, plus for each
// level n <= n1 and each block of n2 symbols the points at that level whose
// word carries the block at positions 1..n2.
OpenCover example_v_star_cover(const SymbolicLayout& layout, int n1, int n2);

}  // namespace topent

#endif  // TOPENT_COVER_H_
