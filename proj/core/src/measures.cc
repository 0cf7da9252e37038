#include "topent/measures.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "topent/error.h"

namespace topent {
namespace {

std::vector<Rational> term_weights(const TestFunctionFamily& fam, std::size_t K, WeakStarNormalization norm) {
  std::vector<Rational> w(K);
  for (std::size_t n = 1; n <= K; ++n) {
    w[n - 1] = Rational::pow2(-static_cast<int>(n));
    if (norm == WeakStarNormalization::sup_norm_weighted) w[n - 1] /= fam.sup_norm(n) + 1;
  }
  return w;
}

// (int g_1 dmu, ..., int g_K dmu)
std::vector<Rational> profile(const AtomicMeasure& mu, const TestFunctionFamily& fam, std::size_t K) {
  std::vector<Rational> out(K);
  for (std::size_t n = 1; n <= K; ++n) {
    for (const auto& [x, w] : mu.atoms()) out[n - 1] += w * fam(n, x);
  }
  return out;
}

Rational profile_distance(const std::vector<Rational>& a, const std::vector<Rational>& b,
                          const std::vector<Rational>& weights) {
  Rational total;
  for (std::size_t i = 0; i < weights.size(); ++i) total += abs(a[i] - b[i]) * weights[i];
  return total;
}

void require_truncation(std::size_t K) {
  if (K < 1) throw InvalidArgument("weak* truncation K must be at least 1");
  if (K > 60) throw InvalidArgument("weak* truncation K must be at most 60");
}

}  // namespace

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) {
  std::map<PointId, Rational> merged;
  for (const auto& [x, w] : atoms) {
    if (w.sign() <= 0) throw InvalidMeasure("atom weight must be positive, got " + w.str());
    merged[x] += w;
  }
  Rational total;
  for (const auto& [x, w] : merged) {
    total += w;
    atoms_.emplace_back(x, w);
  }
  if (total != Rational(1)) throw InvalidMeasure("weights sum to " + total.str() + ", not 1");
}

AtomicMeasure AtomicMeasure::dirac(PointId x) {
  AtomicMeasure m;
  m.atoms_.emplace_back(x, Rational(1));
  return m;
}

AtomicMeasure AtomicMeasure::uniform(std::span<const PointId> points) {
  if (points.empty()) throw InvalidMeasure("uniform measure on no points");
  const Rational w(1, static_cast<std::int64_t>(points.size()));
  std::vector<Atom> atoms;
  for (auto x : points) atoms.emplace_back(x, w);
  return AtomicMeasure(std::move(atoms));
}

Rational AtomicMeasure::weight(PointId x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                             [](const Atom& a, PointId p) { return a.first < p; });
  return it != atoms_.end() && it->first == x ? it->second : Rational();
}

Rational AtomicMeasure::mass(std::span<const PointId> sorted_set) const {
  Rational total;
  auto it = sorted_set.begin();
  for (const auto& [x, w] : atoms_) {
    while (it != sorted_set.end() && *it < x) ++it;
    if (it == sorted_set.end()) break;
    if (*it == x) total += w;
  }
  return total;
}

Rational integrate(const TestFunction& g, const AtomicMeasure& mu) {
  Rational total;
  for (const auto& [x, w] : mu.atoms()) total += w * g(x);
  return total;
}

AtomicMeasure pushforward(const Nads& sys, std::size_t n, const AtomicMeasure& mu) {
  std::vector<AtomicMeasure::Atom> atoms;
  atoms.reserve(mu.support_size());
  for (const auto& [x, w] : mu.atoms()) atoms.emplace_back(sys.apply(n, x), w);
  return AtomicMeasure(std::move(atoms));
}

AtomicMeasure pushforward_orbit(const OrbitTable& orbits, std::size_t j, const AtomicMeasure& mu) {
  if (j >= orbits.horizon()) throw InvalidArgument("pushforward step beyond orbit horizon");
  std::vector<AtomicMeasure::Atom> atoms;
  atoms.reserve(mu.support_size());
  for (const auto& [x, w] : mu.atoms()) atoms.emplace_back(orbits.at(j, x), w);
  return AtomicMeasure(std::move(atoms));
}

TestFunctionFamily::TestFunctionFamily(std::size_t space_size, Eval eval)
    : space_size_(space_size), eval_(std::move(eval)) {}

Rational TestFunctionFamily::operator()(std::size_t n, PointId x) const {
  if (n < 1) throw InvalidArgument("test functions are indexed from 1");
  return eval_(n, x);
}

Rational TestFunctionFamily::sup_norm(std::size_t n) const {
  Rational best;
  for (PointId x = 0; x < space_size_; ++x) best = max(best, abs((*this)(n, x)));
  return best;
}

std::optional<std::pair<PointId, PointId>> TestFunctionFamily::first_unseparated(std::size_t upto) const {
  std::vector<std::pair<std::vector<Rational>, PointId>> signatures(space_size_);
  for (PointId x = 0; x < space_size_; ++x) {
    signatures[x].second = x;
    for (std::size_t n = 1; n <= upto; ++n) signatures[x].first.push_back((*this)(n, x));
  }
  std::sort(signatures.begin(), signatures.end());
  for (std::size_t i = 1; i < signatures.size(); ++i) {
    if (signatures[i].first == signatures[i - 1].first) {
      return std::make_pair(signatures[i - 1].second, signatures[i].second);
    }
  }
  return std::nullopt;
}

bool TestFunctionFamily::separates_points(std::size_t upto) const { return !first_unseparated(upto); }

TestFunctionFamily default_family(std::shared_ptr<const FiniteSpace> space) {
  const std::size_t size = space->size();
  if (size <= 1) return constant_family(size, Rational());
  const Rational diam = space->diameter();
  if (diam.is_zero()) throw DegenerateSpace("zero diameter on a space with more than one point");
  return TestFunctionFamily(size, [space, diam, size](std::size_t n, PointId x) {
    const auto q = static_cast<PointId>((n - 1) % size);
    return space->distance(x, q) / diam;
  });
}

TestFunctionFamily constant_family(std::size_t space_size, const Rational& value) {
  if (abs(value) > Rational(1)) throw InvalidArgument("test functions must have sup-norm at most 1");
  return TestFunctionFamily(space_size, [value](std::size_t, PointId) { return value; });
}

WeakStarValue weak_star_distance(const AtomicMeasure& mu, const AtomicMeasure& nu, const TestFunctionFamily& fam,
                                 std::size_t K, WeakStarNormalization norm) {
  require_truncation(K);
  const auto weights = term_weights(fam, K, norm);
  return {profile_distance(profile(mu, fam, K), profile(nu, fam, K), weights),
          Rational(2) * Rational::pow2(-static_cast<int>(K))};
}

Rational weak_star_bowen_distance(const OrbitTable& orbits, std::size_t n, const AtomicMeasure& mu,
                                  const AtomicMeasure& nu, const TestFunctionFamily& fam, std::size_t K) {
  if (n < 1 || n > orbits.horizon()) throw InvalidArgument("weak* Bowen horizon out of range");
  Rational best;
  for (std::size_t j = 0; j < n; ++j) {
    const auto d = weak_star_distance(pushforward_orbit(orbits, j, mu), pushforward_orbit(orbits, j, nu), fam, K);
    best = max(best, d.value);
  }
  return best;
}

AtomicMeasure embed_tuple(std::span<const PointId> points) {
  const std::size_t k = points.size();
  if (k < 1) throw InvalidArgument("embedding needs k >= 1");
  if (k > 60) throw InvalidArgument("embedding arity too large");
  const std::int64_t total = (std::int64_t{1} << (k + 1)) - 2;
  std::vector<AtomicMeasure::Atom> atoms;
  for (std::size_t i = 1; i <= k; ++i) atoms.emplace_back(points[i - 1], Rational(std::int64_t{1} << i, total));
  return AtomicMeasure(std::move(atoms));
}

std::optional<TwoAdicWitness> two_adic_witness(std::span<const PointId> x, std::span<const PointId> y) {
  if (x.size() != y.size()) throw LengthMismatch("tuples of different lengths");
  if (x.size() > 60) throw InvalidArgument("tuple too long for the integer witness");
  std::size_t t = 0;
  while (t < x.size() && x[t] == y[t]) ++t;
  if (t == x.size()) return std::nullopt;

  TwoAdicWitness w;
  w.t = t + 1;
  const PointId target = x[t];
  for (std::size_t i = 1; i <= x.size(); ++i) {
    const std::int64_t p = std::int64_t{1} << i;
    const std::int64_t gx = x[i - 1] == target ? p : 0;
    const std::int64_t gy = y[i - 1] == target ? p : 0;
    w.x_integral += gx;
    w.y_integral += gy;
    if (i >= w.t) {
      w.x_tail += gx;
      w.y_tail += gy;
    }
  }
  const std::int64_t modulus = std::int64_t{1} << (w.t + 1);
  w.x_tail_not_divisible = w.x_tail % modulus != 0;
  w.y_tail_divisible = w.y_tail % modulus == 0;
  return w;
}

InducedTupleSystem induced_tuple_system(const Nads& sys, int k, const TestFunctionFamily& fam, std::size_t K,
                                        const InducedOptions& options) {
  require_truncation(K);
  if (k < 1) throw InvalidArgument("tuple size must be at least 1");
  if (fam.space_size() != sys.size()) throw InvalidArgument("family and system sizes differ");
  const double bits = k * std::log2(static_cast<double>(std::max<std::size_t>(sys.size(), 1)));
  if (bits > options.max_bits) {
    throw SizeCapExceeded("induced " + std::to_string(k) + "-tuple system on " + std::to_string(sys.size()) +
                          " points exceeds the size cap");
  }
  const TupleLayout layout(sys.size(), k);
  const std::size_t size = layout.size();
  const auto weights = std::make_shared<const std::vector<Rational>>(term_weights(fam, K, options.norm));

  auto profiles = std::make_shared<std::vector<std::vector<Rational>>>(size);
  std::vector<std::string> labels;
  labels.reserve(size);
  for (PointId id = 0; id < size; ++id) {
    const auto coords = layout.decode(id);
    (*profiles)[id] = profile(embed_tuple(coords), fam, K);
    std::string label = "pi(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (i > 0) label += ",";
      label += sys.space().label(coords[i]);
    }
    labels.push_back(label + ")");
  }

  std::optional<Rational> min_positive;
  bool collision = false;
  const bool tabulate = size <= options.table_cap;
  std::vector<Rational> table(tabulate ? size * size : 0);
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = a + 1; b < size; ++b) {
      const Rational d = profile_distance((*profiles)[a], (*profiles)[b], *weights);
      if (tabulate) table[a * size + b] = table[b * size + a] = d;
      if (d.sign() == 0) collision = true;
      if (d.sign() > 0 && (!min_positive || d < *min_positive)) min_positive = d;
    }
  }

  const Rational tail = Rational(2) * Rational::pow2(-static_cast<int>(K));
  if (collision) {
    throw TruncationTooCoarse("distinct tuples have truncated distance 0 at K=" + std::to_string(K) +
                              "; increase K");
  }
  if (min_positive && tail > *min_positive / 2) {
    throw TruncationTooCoarse("tail bound " + tail.str() + " exceeds half the smallest positive distance " +
                              min_positive->str() + "; increase K");
  }

  ValidationOptions validation;
  validation.exhaustive_cap = 64;
  validation.sampled_triples = 20000;
  std::shared_ptr<const FiniteSpace> space;
  if (tabulate) {
    space = std::make_shared<const FiniteSpace>(build_finite_space(std::move(labels), std::move(table), validation));
  } else {
    space = std::make_shared<const FiniteSpace>(build_finite_space(
        std::move(labels),
        [profiles, weights](PointId x, PointId y) {
          return profile_distance((*profiles)[x], (*profiles)[y], *weights);
        },
        validation));
  }
  MapSequence maps{[sys, layout](std::size_t n, PointId x) {
                     auto coords = layout.decode(x);
                     for (auto& c : coords) c = sys.apply(n, c);
                     return layout.encode(coords);
                   },
                   sys.maps().eventual_period_hint};
  InducedTupleSystem out{Nads(std::move(space), std::move(maps), "M(" + sys.name() + ")_" + std::to_string(k)),
                         layout, min_positive.value_or(Rational()), tail, false};
  out.exact = !min_positive || *min_positive > tail;
  return out;
}

std::optional<std::pair<std::size_t, PointId>> check_embedding_equivariance(const Nads& sys, int k,
                                                                            std::size_t n_max) {
  const TupleLayout layout(sys.size(), k);
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (PointId id = 0; id < layout.size(); ++id) {
      auto coords = layout.decode(id);
      const AtomicMeasure pushed = pushforward(sys, n, embed_tuple(coords));
      for (auto& c : coords) c = sys.apply(n, c);
      if (!(pushed == embed_tuple(coords))) return std::make_pair(n, id);
    }
  }
  return std::nullopt;
}

InjectivityReport check_embedding_injective(const FiniteSpace& space, int k, const TestFunctionFamily& fam,
                                            std::size_t K) {
  require_truncation(K);
  const TupleLayout layout(space.size(), k);
  const auto weights = term_weights(fam, K, WeakStarNormalization::unit_bound);
  std::vector<std::vector<PointId>> tuples(layout.size());
  std::vector<AtomicMeasure> measures;
  std::vector<std::vector<Rational>> profiles;
  measures.reserve(layout.size());
  for (PointId id = 0; id < layout.size(); ++id) {
    tuples[id] = layout.decode(id);
    measures.push_back(embed_tuple(tuples[id]));
    profiles.push_back(profile(measures.back(), fam, K));
  }
  InjectivityReport report;
  report.tail_bound = Rational(2) * Rational::pow2(-static_cast<int>(K));
  report.injective = true;
  report.all_two_adic_certified = true;
  std::optional<Rational> min_d;
  for (std::size_t a = 0; a < layout.size(); ++a) {
    for (std::size_t b = a + 1; b < layout.size(); ++b) {
      ++report.pairs;
      const Rational d = profile_distance(profiles[a], profiles[b], weights);
      if (!min_d || d < *min_d) min_d = d;
      if (measures[a] == measures[b] || d <= report.tail_bound) report.injective = false;
      const auto w = two_adic_witness(tuples[a], tuples[b]);
      if (!w || !w->certifies()) report.all_two_adic_certified = false;
    }
  }
  report.min_distance = min_d.value_or(Rational());
  return report;
}

}  // namespace topent
