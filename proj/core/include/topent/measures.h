#ifndef TOPENT_MEASURES_H_
#define TOPENT_MEASURES_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "topent/dynamics.h"
#include "topent/rational.h"
#include "topent/space.h"

namespace topent {

// Finitely supported probability measure with exact rational weights.
// Atoms are sorted by point, distinct, with positive weights summing to 1.
class AtomicMeasure {
 public:
  using Atom = std::pair<PointId, Rational>;

  // Merges repeated points; throws InvalidMeasure on nonpositive weights or
  // a total other than 1.
  explicit AtomicMeasure(std::vector<Atom> atoms);
  static AtomicMeasure dirac(PointId x);
  // Uniform measure on the given (distinct) points.
  static AtomicMeasure uniform(std::span<const PointId> points);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t support_size() const { return atoms_.size(); }
  Rational weight(PointId x) const;
  // mu(A) for a sorted point list.
  Rational mass(std::span<const PointId> sorted_set) const;

  friend bool operator==(const AtomicMeasure&, const AtomicMeasure&) = default;

 private:
  AtomicMeasure() = default;
  std::vector<Atom> atoms_;
};

using TestFunction = std::function<Rational(PointId)>;

// sum of weight * g(point)
Rational integrate(const TestFunction& g, const AtomicMeasure& mu);

// f_n^*(mu): atoms mapped through f_n, colliding weights summed.
AtomicMeasure pushforward(const Nads& sys, std::size_t n, const AtomicMeasure& mu);
// (f_1^j)^*(mu) read off an orbit table.
AtomicMeasure pushforward_orbit(const OrbitTable& orbits, std::size_t j, const AtomicMeasure& mu);

// Indexed family g_1, g_2, ... of functions on a finite space with
// sup-norms at most 1.
class TestFunctionFamily {
 public:
  using Eval = std::function<Rational(std::size_t n, PointId x)>;

  TestFunctionFamily(std::size_t space_size, Eval eval);

  Rational operator()(std::size_t n, PointId x) const;
  // ||g_n||_inf over the space.
  Rational sup_norm(std::size_t n) const;
  std::size_t space_size() const { return space_size_; }

  // For distinct x, y some g_n with n <= upto differs on them.
  bool separates_points(std::size_t upto) const;

  // Returns the first pair it cannot separate with n <= upto.
  std::optional<std::pair<PointId, PointId>> first_unseparated(std::size_t upto) const;

 private:
  std::size_t space_size_;
  Eval eval_;
};

// g_n(x) = rho(x, q_n) / diam, with q_1, q_2, ... cycling through the points
// in index order; all zero on a one-point space.
TestFunctionFamily default_family(std::shared_ptr<const FiniteSpace> space);

TestFunctionFamily constant_family(std::size_t space_size, const Rational& value);

enum class WeakStarNormalization {
  // sum_n |int g_n dmu - int g_n dnu| / 2^n
  unit_bound,
  // sum_n |int g_n dmu - int g_n dnu| / (2^n (||g_n|| + 1))
  sup_norm_weighted,
};

struct WeakStarValue {
  // Partial sum over n <= K; a lower bound for the full series.
  Rational value;
  // Upper bound on the omitted tail, 2 * 2^-K.
  Rational tail_bound;
};

WeakStarValue weak_star_distance(const AtomicMeasure& mu, const AtomicMeasure& nu, const TestFunctionFamily& fam,
                                 std::size_t K,
                                 WeakStarNormalization norm = WeakStarNormalization::unit_bound);

// max_{j<n} of the truncated weak* distance between (f_1^j)^* images.
Rational weak_star_bowen_distance(const OrbitTable& orbits, std::size_t n, const AtomicMeasure& mu,
                                  const AtomicMeasure& nu, const TestFunctionFamily& fam, std::size_t K);

// (x_1..x_k) -> sum_i 2^i delta_{x_i} / (2^{k+1} - 2).
AtomicMeasure embed_tuple(std::span<const PointId> points);

// Exact-integer witness that two tuples have different weighted sums:
// with t the first differing index and g the indicator of x_t,
// 2^{t+1} does not divide the x-side tail integral sum_{i>=t} 2^i g(x_i)
// while it divides the y-side one, and the two full integrals differ.
struct TwoAdicWitness {
  std::size_t t = 0;  // 1-based
  std::int64_t x_integral = 0;
  std::int64_t y_integral = 0;
  std::int64_t x_tail = 0;
  std::int64_t y_tail = 0;
  bool x_tail_not_divisible = false;
  bool y_tail_divisible = false;

  bool certifies() const { return x_tail_not_divisible && y_tail_divisible && x_integral != y_integral; }
};

// nullopt when the tuples are equal.
std::optional<TwoAdicWitness> two_adic_witness(std::span<const PointId> x, std::span<const PointId> y);

struct InducedOptions {
  double max_bits = 12.0;
  // Pairwise weak* table is precomputed up to this many tuples.
  std::size_t table_cap = 1024;
  WeakStarNormalization norm = WeakStarNormalization::unit_bound;
};

// The k-tuple subsystem of the induced system on measures: points are
// embedded k-tuples, the metric is the weak* partial sum at K and the maps
// act by pushforward.
struct InducedTupleSystem {
  Nads system;
  TupleLayout layout;
  Rational min_positive_distance;
  Rational tail_bound;
  // min positive distance exceeds the tail bound.
  bool exact = false;
};

// Throws TruncationTooCoarse when the tail bound exceeds half the smallest
// positive pairwise distance.
InducedTupleSystem induced_tuple_system(const Nads& sys, int k, const TestFunctionFamily& fam, std::size_t K,
                                        const InducedOptions& options = {});

// Checks pushforward(f_n, embed(x)) == embed(f_n^{(k)}(x)) for every tuple
// and n <= n_max; returns the first failing (n, tuple id).
std::optional<std::pair<std::size_t, PointId>> check_embedding_equivariance(const Nads& sys, int k,
                                                                            std::size_t n_max);

struct InjectivityReport {
  bool injective = false;
  bool all_two_adic_certified = false;
  Rational min_distance;
  Rational tail_bound;
  std::size_t pairs = 0;
};

// All pairs of distinct k-tuples: embedded measures differ, the 2-adic
// witness certifies it, and the truncated weak* distance exceeds the tail.
InjectivityReport check_embedding_injective(const FiniteSpace& space, int k, const TestFunctionFamily& fam,
                                            std::size_t K);

}  // namespace topent

#endif  // TOPENT_MEASURES_H_
