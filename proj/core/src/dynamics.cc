#include "topent/dynamics.h"

#include <cmath>
#include <sstream>

#include "topent/error.h"

namespace topent {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

PointId symbolic_step(const SymbolicLayout& layout, std::size_t n, PointId x) {
  const SpacePoint p = layout.point(x);
  if (p.kind != SpacePoint::Kind::interior) return x;
  if (static_cast<std::size_t>(p.level) >= n) return x;
  if (p.level + 1 > layout.level_cap()) {
    throw TruncationExceeded("f_" + std::to_string(n) + " needs level " +
                             std::to_string(p.level + 1) + " beyond cap " +
                             std::to_string(layout.level_cap()));
  }
  return layout.interior(p.word.shifted(), p.level + 1);
}

}  // namespace

Nads::Nads(std::shared_ptr<const FiniteSpace> space, MapSequence maps, std::string name)
    : space_(std::move(space)), maps_(std::move(maps)), name_(std::move(name)) {
  if (!space_) throw InvalidArgument("Nads needs a space");
  if (!maps_.rule) throw InvalidArgument("Nads needs a map rule");
}

PointId Nads::apply(std::size_t n, PointId x) const {
  if (n == 0) throw InvalidArgument("maps are indexed from 1");
  const PointId y = maps_.rule(n, x);
  if (y >= space_->size()) {
    throw InvalidArgument("f_" + std::to_string(n) + " leaves the space at point " +
                          std::to_string(x));
  }
  return y;
}

PointId compose(const Nads& sys, std::size_t start, std::size_t length, PointId x) {
  if (start == 0) throw InvalidArgument("composition starts at index 1");
  for (std::size_t step = 0; step < length; ++step) x = sys.apply(start + step, x);
  return x;
}

OrbitTable::OrbitTable(const Nads& sys, std::size_t horizon)
    : sys_(sys), horizon_(horizon), size_(sys.size()) {
  if (horizon == 0) throw InvalidArgument("orbit horizon must be positive");
  orbit_.resize(horizon * size_);
  for (PointId x = 0; x < size_; ++x) orbit_[x] = x;
  for (std::size_t j = 1; j < horizon; ++j) {
    for (PointId x = 0; x < size_; ++x) {
      orbit_[j * size_ + x] = sys.apply(j, orbit_[(j - 1) * size_ + x]);
    }
  }
}

void OrbitTable::check_horizon(std::size_t n) const {
  if (n == 0 || n > horizon_) {
    throw InvalidArgument("Bowen horizon " + std::to_string(n) + " outside 1.." +
                          std::to_string(horizon_));
  }
}

Rational OrbitTable::bowen_distance(std::size_t n, PointId x, PointId y) const {
  check_horizon(n);
  Rational best;
  const FiniteSpace& space = sys_.space();
  for (std::size_t j = 0; j < n; ++j) {
    const Rational d = space.distance(at(j, x), at(j, y));
    if (d > best) best = d;
  }
  return best;
}

bool OrbitTable::bowen_exceeds(std::size_t n, PointId x, PointId y, const Rational& eps) const {
  check_horizon(n);
  const FiniteSpace& space = sys_.space();
  for (std::size_t j = 0; j < n; ++j) {
    const PointId a = at(j, x);
    const PointId b = at(j, y);
    if (a != b && space.distance(a, b) > eps) return true;
  }
  return false;
}

bool OrbitTable::bowen_below(std::size_t n, PointId x, PointId y, const Rational& eps) const {
  check_horizon(n);
  const FiniteSpace& space = sys_.space();
  for (std::size_t j = 0; j < n; ++j) {
    const PointId a = at(j, x);
    const PointId b = at(j, y);
    if (a == b) {
      if (eps.sign() <= 0) return false;
      continue;
    }
    if (!(space.distance(a, b) < eps)) return false;
  }
  return true;
}

Rational bowen_distance(const Nads& sys, std::size_t n, PointId x, PointId y) {
  if (n == 0) throw InvalidArgument("Bowen horizon must be positive");
  Rational best;
  for (std::size_t j = 0; j < n; ++j) {
    const Rational d = sys.space().distance(x, y);
    if (d > best) best = d;
    if (j + 1 < n) {
      x = sys.apply(j + 1, x);
      y = sys.apply(j + 1, y);
    }
  }
  return best;
}

TupleLayout::TupleLayout(std::size_t base, int k) : base_(base), k_(k), size_(1) {
  if (k < 1) throw InvalidArgument("tuple arity must be at least 1");
  if (base == 0) throw InvalidArgument("tuple base must be nonempty");
  for (int i = 0; i < k; ++i) {
    if (size_ > (std::size_t{1} << 31) / base) throw SizeCapExceeded("tuple space too large");
    size_ *= base;
  }
}

PointId TupleLayout::encode(std::span<const PointId> coords) const {
  if (coords.size() != static_cast<std::size_t>(k_)) throw InvalidArgument("tuple arity mismatch");
  std::size_t id = 0;
  for (int i = k_ - 1; i >= 0; --i) {
    if (coords[static_cast<std::size_t>(i)] >= base_) throw InvalidArgument("tuple coordinate out of range");
    id = id * base_ + coords[static_cast<std::size_t>(i)];
  }
  return static_cast<PointId>(id);
}

std::vector<PointId> TupleLayout::decode(PointId id) const {
  std::vector<PointId> out(static_cast<std::size_t>(k_));
  std::size_t rest = id;
  for (auto& c : out) {
    c = static_cast<PointId>(rest % base_);
    rest /= base_;
  }
  return out;
}

PointId TupleLayout::coordinate(PointId id, int i) const {
  std::size_t rest = id;
  for (int j = 0; j < i; ++j) rest /= base_;
  return static_cast<PointId>(rest % base_);
}

Nads product_system(const Nads& sys, int k, const ProductOptions& options) {
  if (k < 1) throw InvalidArgument("product arity must be at least 1");
  const double bits = k * std::log2(static_cast<double>(std::max<std::size_t>(sys.size(), 1)));
  if (bits > options.max_bits) {
    throw SizeCapExceeded("product of " + std::to_string(k) + " copies of a " +
                          std::to_string(sys.size()) + "-point space exceeds the size cap");
  }
  const TupleLayout layout(sys.size(), k);
  const auto base_space = sys.space_ptr();
  std::vector<std::string> labels;
  labels.reserve(layout.size());
  for (PointId id = 0; id < layout.size(); ++id) {
    std::string label = "(";
    const auto coords = layout.decode(id);
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (i > 0) label += ",";
      label += base_space->label(coords[i]);
    }
    labels.push_back(label + ")");
  }
  ValidationOptions validation;
  validation.exhaustive_cap = 64;
  validation.sampled_triples = 20000;
  auto space = std::make_shared<const FiniteSpace>(build_finite_space(
      std::move(labels),
      [layout, base_space](PointId x, PointId y) {
        Rational best;
        for (int i = 0; i < layout.arity(); ++i) {
          const Rational d = base_space->distance(layout.coordinate(x, i), layout.coordinate(y, i));
          if (d > best) best = d;
        }
        return best;
      },
      validation));
  MapSequence maps{[sys, layout](std::size_t n, PointId x) {
                     auto coords = layout.decode(x);
                     for (auto& c : coords) c = sys.apply(n, c);
                     return layout.encode(coords);
                   },
                   sys.maps().eventual_period_hint};
  return Nads(std::move(space), std::move(maps), sys.name() + "^" + std::to_string(k));
}

PointId example_f(const SymbolicLayout& layout, std::size_t n, PointId x) {
  if (layout.kind() != SymbolicKind::x_type) throw InvalidArgument("example_f acts on X-type spaces");
  if (n == 0) throw InvalidArgument("maps are indexed from 1");
  return symbolic_step(layout, n, x);
}

PointId example_g(const SymbolicLayout& layout, std::size_t n, PointId y) {
  if (layout.kind() != SymbolicKind::y_type) throw InvalidArgument("example_g acts on Y-type spaces");
  if (n == 0) throw InvalidArgument("maps are indexed from 1");
  return symbolic_step(layout, n, y);
}

PointId example_factor(const SymbolicLayout& x_layout, const SymbolicLayout& y_layout, PointId x) {
  const SpacePoint p = x_layout.point(x);
  if (p.kind != SpacePoint::Kind::interior) return y_layout.limit_zero();
  return y_layout.interior(p.word, p.level);
}

Nads example_x_system(int word_length, int level_cap) {
  auto space = std::make_shared<const FiniteSpace>(build_example_x(word_length, level_cap));
  const SymbolicLayout layout = *space->symbolic();
  return Nads(space, MapSequence{[layout](std::size_t n, PointId x) { return example_f(layout, n, x); }, {}},
              space->builder());
}

Nads example_y_system(int word_length, int level_cap) {
  auto space = std::make_shared<const FiniteSpace>(build_example_y(word_length, level_cap));
  const SymbolicLayout layout = *space->symbolic();
  return Nads(space, MapSequence{[layout](std::size_t n, PointId y) { return example_g(layout, n, y); }, {}},
              space->builder());
}

Nads full_shift_constant(int word_length) {
  auto space = std::make_shared<const FiniteSpace>(build_word_space(word_length));
  std::ostringstream name;
  name << "full_shift_constant(L=" << word_length << ")";
  return Nads(space, MapSequence{[](std::size_t, PointId x) { return static_cast<PointId>(x >> 1); }, 1},
              name.str());
}

Nads random_system(std::size_t size, std::uint64_t seed, int max_weight) {
  auto space = std::make_shared<const FiniteSpace>(build_random_space(size, seed, max_weight));
  std::ostringstream name;
  name << "random_maps(size=" << size << ",seed=" << seed << ")";
  return Nads(space,
              MapSequence{[size, seed](std::size_t n, PointId x) {
                            const std::uint64_t h =
                                splitmix64(splitmix64(seed ^ 0xa5a5a5a5ULL) + splitmix64(n) * 31 + x);
                            return static_cast<PointId>(h % size);
                          },
                          {}},
              name.str());
}

Nads identity_system(std::shared_ptr<const FiniteSpace> space) {
  return Nads(std::move(space), MapSequence{[](std::size_t, PointId x) { return x; }, 1}, "identity");
}

std::vector<std::vector<PointId>> fibers(const FactorMap& fm) {
  std::vector<std::vector<PointId>> out(fm.codomain.size());
  for (PointId x = 0; x < fm.domain.size(); ++x) {
    const PointId y = fm.map(x);
    if (y >= out.size()) throw InvalidArgument("factor map leaves the codomain");
    out[y].push_back(x);
  }
  return out;
}

FactorReport verify_factor(const FactorMap& fm, std::size_t n_max, std::size_t fiber_bound) {
  FactorReport report;
  report.n_max = n_max;
  const auto fib = fibers(fm);
  report.surjective = true;
  for (PointId y = 0; y < fib.size(); ++y) {
    if (fib[y].empty()) {
      report.surjective = false;
      report.first_missed = y;
      break;
    }
  }
  for (const auto& f : fib) report.max_fiber = std::max(report.max_fiber, f.size());
  report.finite_to_one = report.max_fiber <= fiber_bound;

  std::vector<PointId> image(fm.domain.size());
  for (PointId x = 0; x < fm.domain.size(); ++x) image[x] = fm.map(x);
  report.equivariant = true;
  for (std::size_t n = 1; n <= n_max && report.equivariant; ++n) {
    for (PointId x = 0; x < fm.domain.size(); ++x) {
      if (fm.map(fm.domain.apply(n, x)) != fm.codomain.apply(n, image[x])) {
        report.equivariant = false;
        report.first_violation = FactorViolation{n, x};
        break;
      }
    }
  }
  return report;
}

FactorMap example_factor_map(int word_length, int level_cap) {
  Nads x_sys = example_x_system(word_length, level_cap);
  Nads y_sys = example_y_system(word_length, level_cap);
  const SymbolicLayout xl = *x_sys.space().symbolic();
  const SymbolicLayout yl = *y_sys.space().symbolic();
  return FactorMap{std::move(x_sys), std::move(y_sys),
                   [xl, yl](PointId x) { return example_factor(xl, yl, x); }};
}

}  // namespace topent
