#ifndef TOPENT_ENTROPY_H_
#define TOPENT_ENTROPY_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "topent/cover.h"
#include "topent/dynamics.h"
#include "topent/rational.h"

namespace topent {

enum class CountMode { exact, greedy };

struct EntropyCaps {
  // Exact maximum separated sets (maximum clique) up to this many points.
  std::size_t separated = 64;
  // Exact minimum spanning sets (set cover) up to this many points.
  std::size_t spanning = 256;
  std::uint64_t node_budget = 50'000'000;
};

struct SeparatedResult {
  std::uint64_t count = 0;
  // True when `count` is the maximum; otherwise a certified lower bound.
  bool exact = false;
  std::uint64_t upper_bound = 0;
  std::vector<PointId> witness;
};

struct SpanningResult {
  std::uint64_t count = 0;
  // True when `count` is the minimum; otherwise a certified upper bound.
  bool exact = false;
  std::uint64_t lower_bound = 0;
  std::vector<PointId> centers;
};

// s_n(eps): largest E with rho_n(x, y) > eps for distinct x, y in E.
// Exact mode throws SizeCapExceeded beyond caps.separated; greedy mode
// returns a maximal separated set extending `seed`.
SeparatedResult max_separated(const OrbitTable& orbits, std::size_t n, const Rational& eps, CountMode mode,
                              const EntropyCaps& caps = {}, std::span<const PointId> seed = {});
SeparatedResult max_separated(const Nads& sys, std::size_t n, const Rational& eps, CountMode mode,
                              const EntropyCaps& caps = {});
// The same count restricted to a subset of points (e.g. a fiber).
SeparatedResult max_separated_in(const OrbitTable& orbits, std::span<const PointId> subset, std::size_t n,
                                 const Rational& eps, CountMode mode, const EntropyCaps& caps = {});

// r_n(eps): smallest F such that every x has y in F with rho_n(x, y) < eps.
SpanningResult min_spanning(const OrbitTable& orbits, std::size_t n, const Rational& eps, CountMode mode,
                            const EntropyCaps& caps = {});
SpanningResult min_spanning(const Nads& sys, std::size_t n, const Rational& eps, CountMode mode,
                            const EntropyCaps& caps = {});

struct GrowthRow {
  std::size_t n = 0;
  std::uint64_t count = 0;
  double log_count = 0.0;
  bool exact = true;
};

struct GrowthSample {
  std::uint64_t count = 0;
  bool exact = true;
};

// Stand-in for limsup (1/n) log count(n): a least-squares slope over the
// last half of the rows and a tail difference quotient over `window` rows.
struct GrowthTable {
  std::vector<GrowthRow> rows;
  double slope_fit = 0.0;
  double slope_tail = 0.0;
  std::size_t window = 1;

  std::string to_csv() const;
};

GrowthTable growth_table(std::span<const std::size_t> horizons,
                         const std::function<GrowthSample(std::size_t)>& counter, std::size_t window = 0);

}  // namespace topent

#endif  // TOPENT_ENTROPY_H_
