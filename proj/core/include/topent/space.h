#ifndef TOPENT_SPACE_H_
#define TOPENT_SPACE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "topent/rational.h"

namespace topent {

using PointId = std::uint32_t;

// Truncation of a point of the one-sided full shift on {0,1}: symbol i is
// bit i of `bits`.
class Word {
 public:
  static constexpr int kMaxLength = 62;

  Word(std::uint64_t bits, int length);
  // "0110" -> symbols 0,1,1,0.
  static Word from_string(std::string_view symbols);

  int length() const { return length_; }
  std::uint64_t bits() const { return bits_; }
  int at(int index) const { return static_cast<int>((bits_ >> index) & 1U); }

  // Drops the first symbol and appends 0.
  Word shifted() const { return Word(bits_ >> 1, length_); }

  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::uint64_t bits_;
  int length_;
};

// Cantor metric: 2^-k with k the first index where the words disagree.
// Throws LengthMismatch for words of different lengths.
Rational sigma_metric(const Word& a, const Word& b);

enum class SymbolicKind { x_type, y_type };

struct SpacePoint {
  enum class Kind { interior, limit_zero, limit_one };

  Kind kind;
  // Limit points carry the constant word 00..0 (zero) or 11..1 (one).
  Word word;
  // 0 for the limit points, 1..level_cap otherwise.
  int level;

  friend bool operator==(const SpacePoint&, const SpacePoint&) = default;
};

// Index scheme for the truncated symbolic spaces. X-type: 0 = zero limit,
// 1 = one limit, then interior points level-major; Y-type drops the one limit.
class SymbolicLayout {
 public:
  SymbolicLayout(SymbolicKind kind, int word_length, int level_cap);

  SymbolicKind kind() const { return kind_; }
  int word_length() const { return word_length_; }
  int level_cap() const { return level_cap_; }
  std::size_t size() const;

  PointId limit_zero() const { return 0; }
  std::optional<PointId> limit_one() const;
  PointId interior(const Word& word, int level) const;
  PointId index_of(const SpacePoint& point) const;
  SpacePoint point(PointId id) const;

  // 1/level, or 0 at the limits.
  Rational height(PointId id) const;
  std::string label(PointId id) const;

 private:
  PointId first_interior() const { return kind_ == SymbolicKind::x_type ? 2 : 1; }

  SymbolicKind kind_;
  int word_length_;
  int level_cap_;
};

using MetricFn = std::function<Rational(PointId, PointId)>;

struct ValidationOptions {
  // Exhaustive triangle checks up to this many points, sampled beyond.
  std::size_t exhaustive_cap = 512;
  std::size_t sampled_triples = 200000;
  std::uint64_t seed = 0x5eed;
};

// A finite metric space. Immutable after construction and safe to share.
class FiniteSpace {
 public:
  std::size_t size() const { return size_; }
  Rational distance(PointId x, PointId y) const;
  const Rational& diameter() const { return diameter_; }
  std::string label(PointId id) const;

  const std::optional<SymbolicLayout>& symbolic() const { return layout_; }

  // Builder name and parameters for named spaces; empty for explicit ones.
  const std::string& builder() const { return builder_; }

  friend FiniteSpace build_finite_space(std::vector<std::string> labels, MetricFn metric,
                                        const ValidationOptions& options);
  friend FiniteSpace build_symbolic_space(const SymbolicLayout& layout, MetricFn metric,
                                          Rational diameter, std::string builder,
                                          const ValidationOptions& options);

 private:
  FiniteSpace() = default;

  std::size_t size_ = 0;
  MetricFn metric_;
  std::vector<Rational> table_;
  std::vector<std::string> labels_;
  std::optional<SymbolicLayout> layout_;
  Rational diameter_;
  std::string builder_;
};

// Checks metric axioms and throws MetricAxiomViolation naming the failing
// pair or triple. Exhaustive up to options.exhaustive_cap points.
void validate_metric(std::size_t size, const MetricFn& metric, const ValidationOptions& options = {});

FiniteSpace build_finite_space(std::vector<std::string> labels, MetricFn metric,
                               const ValidationOptions& options = {});

// Space from a symmetric table in row-major order.
FiniteSpace build_finite_space(std::vector<std::string> labels, std::vector<Rational> table,
                               const ValidationOptions& options = {});

FiniteSpace build_symbolic_space(const SymbolicLayout& layout, MetricFn metric, Rational diameter,
                                 std::string builder, const ValidationOptions& options = {});

// Metric on the truncated X space:
//   |a0 - b0| + |h(x) - h(y)| + min(h(x), h(y)) * sigma_metric(tail(a), tail(b))
Rational example_x_metric(const SymbolicLayout& layout, PointId x, PointId y);
// Metric on the truncated Y space: |h(x) - h(y)| + min(h(x), h(y)) * sigma_metric(a, b)
Rational example_y_metric(const SymbolicLayout& layout, PointId x, PointId y);

// 2^L words per level for levels 1..level_cap plus the two limits.
FiniteSpace build_example_x(int word_length, int level_cap, const ValidationOptions& options = {});
FiniteSpace build_example_y(int word_length, int level_cap, const ValidationOptions& options = {});

// All 2^L words with sigma_metric.
FiniteSpace build_word_space(int word_length, const ValidationOptions& options = {});

// Random metric on `size` points: shortest-path closure of a complete graph
// with integer weights in [1, max_weight]. Distances are integers.
FiniteSpace build_random_space(std::size_t size, std::uint64_t seed, int max_weight = 6);

Rational compute_diameter(const FiniteSpace& space);
// Smallest nonzero pairwise distance, or nullopt on a one-point space.
std::optional<Rational> min_positive_distance(const FiniteSpace& space);

}  // namespace topent

#endif  // TOPENT_SPACE_H_
