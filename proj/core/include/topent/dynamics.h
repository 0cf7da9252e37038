#ifndef TOPENT_DYNAMICS_H_
#define TOPENT_DYNAMICS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topent/rational.h"
#include "topent/space.h"

namespace topent {

// Rule giving the n-th map of a nonautonomous system, n >= 1.
using MapRule = std::function<PointId(std::size_t n, PointId x)>;

struct MapSequence {
  MapRule rule;
  std::optional<std::size_t> eventual_period_hint;
};

// A finite nonautonomous dynamical system (X, {f_n}). Cheap to copy: the
// space is shared and immutable.
class Nads {
 public:
  Nads(std::shared_ptr<const FiniteSpace> space, MapSequence maps, std::string name = {});

  const FiniteSpace& space() const { return *space_; }
  const std::shared_ptr<const FiniteSpace>& space_ptr() const { return space_; }
  const MapSequence& maps() const { return maps_; }
  const std::string& name() const { return name_; }
  std::size_t size() const { return space_->size(); }

  // f_n(x) for n >= 1.
  PointId apply(std::size_t n, PointId x) const;

 private:
  std::shared_ptr<const FiniteSpace> space_;
  MapSequence maps_;
  std::string name_;
};

// f_start^length(x): applies f_start, f_start+1, ..., f_start+length-1 in
// that order; length 0 is the identity.
PointId compose(const Nads& sys, std::size_t start, std::size_t length, PointId x);

// Memoized orbits f_1^j(x) for 0 <= j < horizon and every point.
class OrbitTable {
 public:
  OrbitTable(const Nads& sys, std::size_t horizon);

  std::size_t horizon() const { return horizon_; }
  std::size_t size() const { return size_; }
  const Nads& system() const { return sys_; }
  PointId at(std::size_t j, PointId x) const { return orbit_[j * size_ + x]; }

  // rho_n(x, y) = max_{j<n} rho(f_1^j x, f_1^j y), n <= horizon.
  Rational bowen_distance(std::size_t n, PointId x, PointId y) const;
  // rho_n(x, y) > eps, stopping at the first witnessing step.
  bool bowen_exceeds(std::size_t n, PointId x, PointId y, const Rational& eps) const;
  // rho_n(x, y) < eps.
  bool bowen_below(std::size_t n, PointId x, PointId y, const Rational& eps) const;

 private:
  void check_horizon(std::size_t n) const;

  Nads sys_;
  std::size_t horizon_;
  std::size_t size_;
  std::vector<PointId> orbit_;
};

Rational bowen_distance(const Nads& sys, std::size_t n, PointId x, PointId y);

// Mixed-radix encoding of k-tuples over a base space of size `base`.
class TupleLayout {
 public:
  TupleLayout(std::size_t base, int k);

  std::size_t base() const { return base_; }
  int arity() const { return k_; }
  std::size_t size() const { return size_; }

  PointId encode(std::span<const PointId> coords) const;
  std::vector<PointId> decode(PointId id) const;
  PointId coordinate(PointId id, int i) const;

 private:
  std::size_t base_;
  int k_;
  std::size_t size_;
};

struct ProductOptions {
  // Cap on k * log2|X|.
  double max_bits = 16.0;
};

// k-fold product with the max metric and coordinatewise maps.
Nads product_system(const Nads& sys, int k, const ProductOptions& options = {});

// Maps of the symbolic example: f_n shifts the word and deepens the level
// of an interior point of level i < n, and fixes everything else.
PointId example_f(const SymbolicLayout& layout, std::size_t n, PointId x);
// Same rule on a Y-type layout.
PointId example_g(const SymbolicLayout& layout, std::size_t n, PointId y);
// Sends the one-limit to the zero-limit and is the identity on coordinates
// elsewhere.
PointId example_factor(const SymbolicLayout& x_layout, const SymbolicLayout& y_layout, PointId x);

Nads example_x_system(int word_length, int level_cap);
Nads example_y_system(int word_length, int level_cap);
// Autonomous shift on 2^L words with sigma_metric: f_n = sigma for all n.
Nads full_shift_constant(int word_length);
// Random metric on `size` points and maps f_n drawn independently per n
// from a generator keyed by (seed, n).
Nads random_system(std::size_t size, std::uint64_t seed, int max_weight = 6);
// The same space with f_n = id for every n.
Nads identity_system(std::shared_ptr<const FiniteSpace> space);

struct FactorMap {
  Nads domain;
  Nads codomain;
  std::function<PointId(PointId)> map;
};

struct FactorViolation {
  std::size_t n;
  PointId x;
};

struct FactorReport {
  bool surjective = false;
  std::optional<PointId> first_missed;  // a codomain point with empty fiber
  bool equivariant = false;
  std::optional<FactorViolation> first_violation;
  std::size_t max_fiber = 0;
  bool finite_to_one = false;
  std::size_t n_max = 0;

  bool ok() const { return surjective && equivariant; }
};

// pi^{-1}(y) for every codomain point y.
std::vector<std::vector<PointId>> fibers(const FactorMap& fm);

// Checks surjectivity, pi o f_n = g_n o pi for n <= n_max, and reports the
// largest fiber; finite_to_one when that is <= fiber_bound.
FactorReport verify_factor(const FactorMap& fm, std::size_t n_max, std::size_t fiber_bound = 2);

FactorMap example_factor_map(int word_length, int level_cap);

}  // namespace topent

#endif  // TOPENT_DYNAMICS_H_
