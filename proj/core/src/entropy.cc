#include "topent/entropy.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "topent/clique.h"
#include "topent/error.h"
#include "topent/set_cover.h"

namespace topent {
namespace {

void require_positive(const Rational& eps) {
  if (eps.sign() <= 0) throw InvalidArgument("eps must be positive, got " + eps.str());
}

std::vector<PointId> all_points(std::size_t n) {
  std::vector<PointId> out(n);
  std::iota(out.begin(), out.end(), PointId{0});
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12f", v);
  return buf;
}

}  // namespace

SeparatedResult max_separated_in(const OrbitTable& orbits, std::span<const PointId> subset, std::size_t n,
                                 const Rational& eps, CountMode mode, const EntropyCaps& caps) {
  require_positive(eps);
  SeparatedResult out;
  if (subset.empty()) {
    out.exact = true;
    return out;
  }
  if (mode == CountMode::greedy) {
    for (auto x : subset) {
      bool ok = true;
      for (auto y : out.witness) {
        if (!orbits.bowen_exceeds(n, x, y, eps)) {
          ok = false;
          break;
        }
      }
      if (ok) out.witness.push_back(x);
    }
    out.count = out.witness.size();
    out.upper_bound = subset.size();
    out.exact = out.count == subset.size();
    return out;
  }
  if (subset.size() > caps.separated) {
    throw SizeCapExceeded("exact separated count on " + std::to_string(subset.size()) +
                          " points exceeds cap " + std::to_string(caps.separated));
  }
  DenseGraph g(subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (std::size_t j = i + 1; j < subset.size(); ++j) {
      if (orbits.bowen_exceeds(n, subset[i], subset[j], eps)) g.add_edge(i, j);
    }
  }
  const CliqueResult clique = maximum_clique(g, {}, caps.node_budget);
  for (auto v : clique.vertices) out.witness.push_back(subset[v]);
  out.count = out.witness.size();
  out.exact = clique.exact;
  out.upper_bound = clique.upper_bound;
  return out;
}

SeparatedResult max_separated(const OrbitTable& orbits, std::size_t n, const Rational& eps, CountMode mode,
                              const EntropyCaps& caps, std::span<const PointId> seed) {
  require_positive(eps);
  if (mode == CountMode::exact || seed.empty()) {
    const auto points = all_points(orbits.size());
    return max_separated_in(orbits, points, n, eps, mode, caps);
  }
  for (std::size_t i = 0; i < seed.size(); ++i) {
    for (std::size_t j = i + 1; j < seed.size(); ++j) {
      if (!orbits.bowen_exceeds(n, seed[i], seed[j], eps)) {
        throw InvalidArgument("greedy seed is not (n, eps)-separated");
      }
    }
  }
  // Seed first, then the remaining points in index order.
  std::vector<char> in_seed(orbits.size(), 0);
  std::vector<PointId> order(seed.begin(), seed.end());
  for (auto x : seed) in_seed[x] = 1;
  for (PointId x = 0; x < orbits.size(); ++x) {
    if (!in_seed[x]) order.push_back(x);
  }
  return max_separated_in(orbits, order, n, eps, mode, caps);
}

SeparatedResult max_separated(const Nads& sys, std::size_t n, const Rational& eps, CountMode mode,
                              const EntropyCaps& caps) {
  return max_separated(OrbitTable(sys, n), n, eps, mode, caps);
}

SpanningResult min_spanning(const OrbitTable& orbits, std::size_t n, const Rational& eps, CountMode mode,
                            const EntropyCaps& caps) {
  require_positive(eps);
  SpanningResult out;
  const std::size_t size = orbits.size();
  if (mode == CountMode::greedy) {
    std::vector<char> covered(size, 0);
    for (PointId c = 0; c < size; ++c) {
      if (covered[c]) continue;
      out.centers.push_back(c);
      for (PointId x = 0; x < size; ++x) {
        if (!covered[x] && orbits.bowen_below(n, x, c, eps)) covered[x] = 1;
      }
    }
    out.count = out.centers.size();
    out.lower_bound = 1;
    out.exact = out.count == 1;
    return out;
  }
  if (size > caps.spanning) {
    throw SizeCapExceeded("exact spanning count on " + std::to_string(size) + " points exceeds cap " +
                          std::to_string(caps.spanning));
  }
  std::vector<std::vector<std::uint32_t>> balls(size);
  for (PointId c = 0; c < size; ++c) {
    for (PointId x = 0; x < size; ++x) {
      if (orbits.bowen_below(n, x, c, eps)) balls[c].push_back(x);
    }
  }
  SetCoverOptions options;
  options.exact_universe_cap = caps.spanning;
  options.node_budget = caps.node_budget;
  const SetCoverResult r = solve_set_cover(size, balls, options);
  for (auto c : r.chosen) out.centers.push_back(static_cast<PointId>(c));
  out.count = r.size;
  out.lower_bound = r.lower_bound;
  out.exact = r.exact;
  return out;
}

SpanningResult min_spanning(const Nads& sys, std::size_t n, const Rational& eps, CountMode mode,
                            const EntropyCaps& caps) {
  return min_spanning(OrbitTable(sys, n), n, eps, mode, caps);
}

std::string GrowthTable::to_csv() const {
  std::ostringstream os;
  os << "n,count,log_count,exact_flag\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.count << ',' << format_double(r.log_count) << ',' << (r.exact ? 1 : 0) << '\n';
  }
  return os.str();
}

GrowthTable growth_table(std::span<const std::size_t> horizons,
                         const std::function<GrowthSample(std::size_t)>& counter, std::size_t window) {
  for (std::size_t i = 1; i < horizons.size(); ++i) {
    if (horizons[i] <= horizons[i - 1]) throw InvalidArgument("horizons must be increasing");
  }
  GrowthTable table;
  for (auto n : horizons) {
    const GrowthSample s = counter(n);
    if (s.count == 0) throw InvalidArgument("growth counts must be positive");
    table.rows.push_back({n, s.count, std::log(static_cast<double>(s.count)), s.exact});
  }
  const std::size_t m = table.rows.size();
  if (m < 2) return table;

  // Differences against the first fitted row keep constant data exactly flat.
  const std::size_t first = m / 2 == m - 1 ? m - 2 : m / 2;
  const double y0 = table.rows[first].log_count;
  double sx = 0;
  double sy = 0;
  const auto count = static_cast<double>(m - first);
  for (std::size_t i = first; i < m; ++i) {
    sx += static_cast<double>(table.rows[i].n);
    sy += table.rows[i].log_count - y0;
  }
  const double mx = sx / count;
  const double my = sy / count;
  double sxy = 0;
  double sxx = 0;
  for (std::size_t i = first; i < m; ++i) {
    const double dx = static_cast<double>(table.rows[i].n) - mx;
    sxy += dx * ((table.rows[i].log_count - y0) - my);
    sxx += dx * dx;
  }
  table.slope_fit = sxy / sxx;

  table.window = window == 0 ? std::min<std::size_t>(3, m - 1) : std::min(window, m - 1);
  const auto& last = table.rows[m - 1];
  const auto& prev = table.rows[m - 1 - table.window];
  table.slope_tail = (last.log_count - prev.log_count) / static_cast<double>(last.n - prev.n);
  return table;
}

}  // namespace topent
