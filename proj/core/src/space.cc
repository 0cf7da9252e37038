#include "topent/space.h"

#include <bit>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "topent/error.h"

namespace topent {
namespace {

constexpr std::size_t kTableCap = 2048;

std::uint64_t low_mask(int length) {
  return length >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << length) - 1);
}

// 2^-k for the first set bit k of `diff`, 0 when diff is zero.
Rational dyadic_from_diff(std::uint64_t diff) {
  if (diff == 0) return Rational();
  return Rational::pow2(-std::countr_zero(diff));
}

std::string describe(std::size_t size, const std::vector<std::string>* labels, PointId id) {
  if (labels != nullptr && id < labels->size()) return (*labels)[id];
  (void)size;
  return "#" + std::to_string(id);
}

// Integer image of a distance table under a common denominator, when that
// fits comfortably in 64 bits.
std::optional<std::vector<std::int64_t>> scaled_table(const std::vector<Rational>& table) {
  std::int64_t common = 1;
  constexpr std::int64_t kLimit = std::int64_t{1} << 40;
  for (const auto& r : table) {
    const std::int64_t g = std::gcd(common, r.den());
    const wide_int next = wide_int{common / g} * r.den();
    if (next > kLimit) return std::nullopt;
    common = static_cast<std::int64_t>(next);
  }
  std::vector<std::int64_t> out;
  out.reserve(table.size());
  for (const auto& r : table) {
    const wide_int v = wide_int{r.num()} * (common / r.den());
    if (v > kLimit || v < -kLimit) return std::nullopt;
    out.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

void check_pair_axioms(PointId x, PointId y, const Rational& dxy, const Rational& dyx,
                       const std::vector<std::string>* labels, std::size_t size) {
  if (dxy.sign() < 0) {
    throw MetricAxiomViolation("negative distance between " + describe(size, labels, x) + " and " +
                               describe(size, labels, y));
  }
  if (dxy != dyx) {
    throw MetricAxiomViolation("asymmetric distance between " + describe(size, labels, x) +
                               " and " + describe(size, labels, y));
  }
  if ((x == y) != dxy.is_zero()) {
    throw MetricAxiomViolation(
        (x == y ? "nonzero self-distance at " : "zero distance between distinct points ") +
        describe(size, labels, x) + (x == y ? "" : " and " + describe(size, labels, y)));
  }
}

[[noreturn]] void triangle_failure(PointId x, PointId y, PointId z,
                                   const std::vector<std::string>* labels, std::size_t size) {
  throw MetricAxiomViolation("triangle inequality fails for (" + describe(size, labels, x) + ", " +
                             describe(size, labels, y) + ", " + describe(size, labels, z) + ")");
}

void validate_impl(std::size_t size, const MetricFn& metric, const ValidationOptions& options,
                   const std::vector<std::string>* labels) {
  if (size == 0) throw InvalidArgument("a finite space needs at least one point");
  if (size <= options.exhaustive_cap) {
    std::vector<Rational> table(size * size);
    for (PointId x = 0; x < size; ++x) {
      for (PointId y = 0; y < size; ++y) table[x * size + y] = metric(x, y);
    }
    for (PointId x = 0; x < size; ++x) {
      for (PointId y = x; y < size; ++y) {
        check_pair_axioms(x, y, table[x * size + y], table[y * size + x], labels, size);
      }
    }
    if (auto scaled = scaled_table(table)) {
      const auto& t = *scaled;
      for (PointId x = 0; x < size; ++x) {
        for (PointId y = 0; y < size; ++y) {
          const std::int64_t dxy = t[x * size + y];
          for (PointId z = 0; z < size; ++z) {
            if (t[x * size + z] > dxy + t[y * size + z]) triangle_failure(x, y, z, labels, size);
          }
        }
      }
    } else {
      for (PointId x = 0; x < size; ++x) {
        for (PointId y = 0; y < size; ++y) {
          for (PointId z = 0; z < size; ++z) {
            if (table[x * size + z] > table[x * size + y] + table[y * size + z]) {
              triangle_failure(x, y, z, labels, size);
            }
          }
        }
      }
    }
    return;
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<PointId> pick(0, static_cast<PointId>(size - 1));
  for (std::size_t s = 0; s < options.sampled_triples; ++s) {
    const PointId x = pick(rng);
    const PointId y = pick(rng);
    const PointId z = (s % 4 == 0) ? x : pick(rng);
    const Rational dxy = metric(x, y);
    check_pair_axioms(x, y, dxy, metric(y, x), labels, size);
    if (metric(x, z) > dxy + metric(y, z)) triangle_failure(x, y, z, labels, size);
  }
}

}  // namespace

Word::Word(std::uint64_t bits, int length) : bits_(bits), length_(length) {
  if (length < 2 || length > kMaxLength) {
    throw InvalidArgument("word length must lie in [2, " + std::to_string(kMaxLength) +
                          "], got " + std::to_string(length));
  }
  if ((bits & ~low_mask(length)) != 0) throw InvalidArgument("word bits exceed its length");
}

Word Word::from_string(std::string_view symbols) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] == '1') {
      bits |= std::uint64_t{1} << i;
    } else if (symbols[i] != '0') {
      throw InvalidArgument("word symbols must be 0 or 1");
    }
  }
  return Word(bits, static_cast<int>(symbols.size()));
}

std::string Word::str() const {
  std::string out(static_cast<std::size_t>(length_), '0');
  for (int i = 0; i < length_; ++i) {
    if (at(i) != 0) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

Rational sigma_metric(const Word& a, const Word& b) {
  if (a.length() != b.length()) {
    throw LengthMismatch("sigma_metric on words of lengths " + std::to_string(a.length()) +
                         " and " + std::to_string(b.length()));
  }
  return dyadic_from_diff(a.bits() ^ b.bits());
}

SymbolicLayout::SymbolicLayout(SymbolicKind kind, int word_length, int level_cap)
    : kind_(kind), word_length_(word_length), level_cap_(level_cap) {
  if (word_length < 2 || word_length > 24) {
    throw InvalidArgument("symbolic word length must lie in [2, 24]");
  }
  if (level_cap < 1) throw InvalidArgument("level cap must be positive");
  const std::size_t total = size();
  if (total > std::numeric_limits<PointId>::max()) throw SizeCapExceeded("symbolic space too large");
}

std::size_t SymbolicLayout::size() const {
  return first_interior() + (std::size_t{1} << word_length_) * static_cast<std::size_t>(level_cap_);
}

std::optional<PointId> SymbolicLayout::limit_one() const {
  if (kind_ == SymbolicKind::x_type) return PointId{1};
  return std::nullopt;
}

PointId SymbolicLayout::interior(const Word& word, int level) const {
  if (word.length() != word_length_) throw LengthMismatch("word length does not match layout");
  if (level < 1 || level > level_cap_) {
    throw TruncationExceeded("level " + std::to_string(level) + " outside 1.." +
                             std::to_string(level_cap_));
  }
  return static_cast<PointId>(first_interior() +
                              (static_cast<std::size_t>(level - 1) << word_length_) + word.bits());
}

PointId SymbolicLayout::index_of(const SpacePoint& point) const {
  switch (point.kind) {
    case SpacePoint::Kind::limit_zero:
      return limit_zero();
    case SpacePoint::Kind::limit_one:
      if (!limit_one()) throw InvalidArgument("Y-type spaces have no one-limit");
      return *limit_one();
    case SpacePoint::Kind::interior:
      break;
  }
  return interior(point.word, point.level);
}

SpacePoint SymbolicLayout::point(PointId id) const {
  if (id >= size()) throw InvalidArgument("point id out of range");
  if (id == limit_zero()) return {SpacePoint::Kind::limit_zero, Word(0, word_length_), 0};
  if (limit_one() && id == *limit_one()) {
    return {SpacePoint::Kind::limit_one, Word(low_mask(word_length_), word_length_), 0};
  }
  const std::size_t offset = id - first_interior();
  const int level = static_cast<int>(offset >> word_length_) + 1;
  return {SpacePoint::Kind::interior, Word(offset & low_mask(word_length_), word_length_), level};
}

Rational SymbolicLayout::height(PointId id) const {
  if (id < first_interior()) return Rational();
  const std::size_t offset = id - first_interior();
  return Rational(1, static_cast<std::int64_t>(offset >> word_length_) + 1);
}

std::string SymbolicLayout::label(PointId id) const {
  const SpacePoint p = point(id);
  switch (p.kind) {
    case SpacePoint::Kind::limit_zero:
      return "zero";
    case SpacePoint::Kind::limit_one:
      return "one";
    case SpacePoint::Kind::interior:
      break;
  }
  return p.word.str() + "@" + std::to_string(p.level);
}

Rational FiniteSpace::distance(PointId x, PointId y) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(x) * size_ + y];
  return metric_(x, y);
}

std::string FiniteSpace::label(PointId id) const {
  if (layout_) return layout_->label(id);
  if (id < labels_.size()) return labels_[id];
  return "#" + std::to_string(id);
}

void validate_metric(std::size_t size, const MetricFn& metric, const ValidationOptions& options) {
  validate_impl(size, metric, options, nullptr);
}

FiniteSpace build_finite_space(std::vector<std::string> labels, MetricFn metric,
                               const ValidationOptions& options) {
  validate_impl(labels.size(), metric, options, &labels);
  FiniteSpace space;
  space.size_ = labels.size();
  space.labels_ = std::move(labels);
  space.metric_ = std::move(metric);
  if (space.size_ <= kTableCap) {
    space.table_.resize(space.size_ * space.size_);
    for (PointId x = 0; x < space.size_; ++x) {
      for (PointId y = 0; y < space.size_; ++y) space.table_[x * space.size_ + y] = space.metric_(x, y);
    }
  }
  space.diameter_ = compute_diameter(space);
  return space;
}

FiniteSpace build_finite_space(std::vector<std::string> labels, std::vector<Rational> table,
                               const ValidationOptions& options) {
  const std::size_t n = labels.size();
  if (table.size() != n * n) throw InvalidArgument("metric table must be size n*n");
  auto shared = std::make_shared<const std::vector<Rational>>(std::move(table));
  return build_finite_space(
      std::move(labels),
      [shared, n](PointId x, PointId y) { return (*shared)[static_cast<std::size_t>(x) * n + y]; },
      options);
}

FiniteSpace build_symbolic_space(const SymbolicLayout& layout, MetricFn metric, Rational diameter,
                                 std::string builder, const ValidationOptions& options) {
  validate_impl(layout.size(), metric, options, nullptr);
  FiniteSpace space;
  space.size_ = layout.size();
  space.metric_ = std::move(metric);
  space.layout_ = layout;
  space.diameter_ = diameter;
  space.builder_ = std::move(builder);
  return space;
}

Rational example_x_metric(const SymbolicLayout& layout, PointId x, PointId y) {
  if (x == y) return Rational();
  const SpacePoint px = layout.point(x);
  const SpacePoint py = layout.point(y);
  Rational d = Rational(px.word.at(0) != py.word.at(0) ? 1 : 0);
  const Rational hx = layout.height(x);
  const Rational hy = layout.height(y);
  d += abs(hx - hy);
  const Rational& hmin = min(hx, hy);
  if (!hmin.is_zero()) {
    // Tail comparison: symbols 1..L-1, reindexed from 0.
    d += hmin * dyadic_from_diff((px.word.bits() ^ py.word.bits()) >> 1);
  }
  return d;
}

Rational example_y_metric(const SymbolicLayout& layout, PointId x, PointId y) {
  if (x == y) return Rational();
  const SpacePoint px = layout.point(x);
  const SpacePoint py = layout.point(y);
  const Rational hx = layout.height(x);
  const Rational hy = layout.height(y);
  Rational d = abs(hx - hy);
  const Rational& hmin = min(hx, hy);
  if (!hmin.is_zero()) d += hmin * sigma_metric(px.word, py.word);
  return d;
}

FiniteSpace build_example_x(int word_length, int level_cap, const ValidationOptions& options) {
  const SymbolicLayout layout(SymbolicKind::x_type, word_length, level_cap);
  std::ostringstream name;
  name << "example_X(L=" << word_length << ",N_lev=" << level_cap << ")";
  // |a0-b0| = 1 with two level-1 points whose tails differ at once gives 2;
  // no pair exceeds 1 + max(h(x), h(y)).
  return build_symbolic_space(
      layout, [layout](PointId x, PointId y) { return example_x_metric(layout, x, y); }, Rational(2),
      name.str(), options);
}

FiniteSpace build_example_y(int word_length, int level_cap, const ValidationOptions& options) {
  const SymbolicLayout layout(SymbolicKind::y_type, word_length, level_cap);
  std::ostringstream name;
  name << "example_Y(L=" << word_length << ",N_lev=" << level_cap << ")";
  return build_symbolic_space(
      layout, [layout](PointId x, PointId y) { return example_y_metric(layout, x, y); }, Rational(1),
      name.str(), options);
}

FiniteSpace build_word_space(int word_length, const ValidationOptions& options) {
  if (word_length < 2 || word_length > 20) throw InvalidArgument("word space length must lie in [2, 20]");
  const std::size_t n = std::size_t{1} << word_length;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t w = 0; w < n; ++w) labels.push_back(Word(w, word_length).str());
  return build_finite_space(
      std::move(labels),
      [](PointId x, PointId y) { return dyadic_from_diff(static_cast<std::uint64_t>(x ^ y)); },
      options);
}

FiniteSpace build_random_space(std::size_t size, std::uint64_t seed, int max_weight) {
  if (size == 0) throw InvalidArgument("random space needs at least one point");
  if (max_weight < 1) throw InvalidArgument("max_weight must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> weight(1, max_weight);
  std::vector<std::int64_t> d(size * size, 0);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      d[i * size + j] = d[j * size + i] = weight(rng);
    }
  }
  for (std::size_t k = 0; k < size; ++k) {
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) {
        d[i * size + j] = std::min(d[i * size + j], d[i * size + k] + d[k * size + j]);
      }
    }
  }
  std::vector<std::string> labels;
  std::vector<Rational> table;
  table.reserve(size * size);
  for (std::size_t i = 0; i < size; ++i) labels.push_back("p" + std::to_string(i));
  for (auto v : d) table.emplace_back(v);
  return build_finite_space(std::move(labels), std::move(table));
}

Rational compute_diameter(const FiniteSpace& space) {
  Rational best;
  for (PointId x = 0; x < space.size(); ++x) {
    for (PointId y = x + 1; y < space.size(); ++y) {
      const Rational d = space.distance(x, y);
      if (d > best) best = d;
    }
  }
  return best;
}

std::optional<Rational> min_positive_distance(const FiniteSpace& space) {
  std::optional<Rational> best;
  for (PointId x = 0; x < space.size(); ++x) {
    for (PointId y = x + 1; y < space.size(); ++y) {
      const Rational d = space.distance(x, y);
      if (d.sign() > 0 && (!best || d < *best)) best = d;
    }
  }
  return best;
}

}  // namespace topent
