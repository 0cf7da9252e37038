#include "topent/gw.h"

#include <algorithm>
#include <map>

#include "topent/error.h"

namespace topent {
namespace {

constexpr std::uint32_t kUnassigned = 0xffffffffU;

Rational l1_norm(std::span<const Rational> x) {
  Rational total;
  for (const auto& v : x) total += abs(v);
  return total;
}

// Sparse cell masses of a measure.
std::map<std::uint32_t, Rational> sparse_psi(const AtomicMeasure& mu, const CoverPartition& part) {
  std::map<std::uint32_t, Rational> out;
  for (const auto& [x, w] : mu.atoms()) {
    if (x >= part.space_size) throw InvalidArgument("measure atom outside the partitioned space");
    out[part.cell_of[x]] += w;
  }
  return out;
}

}  // namespace

CoverPartition partition_from_cover(const OpenCover& subcover) {
  if (!subcover.covers_space()) throw NotACover("subcover elements do not cover the space");
  CoverPartition part;
  part.space_size = subcover.space_size();
  part.cell_of.assign(part.space_size, kUnassigned);
  for (std::size_t k = 0; k < subcover.size(); ++k) {
    std::vector<PointId> cell;
    for (auto x : subcover[k]) {
      if (part.cell_of[x] == kUnassigned) cell.push_back(x);
    }
    if (cell.empty()) {
      throw EmptyCell(k + 1, "cell " + std::to_string(k + 1) +
                                 " is empty: the element lies in the union of earlier ones");
    }
    for (auto x : cell) part.cell_of[x] = static_cast<std::uint32_t>(k);
    part.representatives.push_back(cell.front());
    part.cells.push_back(std::move(cell));
    part.parents.push_back(subcover[k]);
  }
  return part;
}

void set_representatives(CoverPartition& part, std::span<const PointId> reps) {
  if (reps.size() != part.size()) throw InvalidArgument("one representative per cell is required");
  for (std::size_t k = 0; k < reps.size(); ++k) {
    if (reps[k] >= part.space_size || part.cell_of[reps[k]] != k) {
      throw InvalidArgument("representative " + std::to_string(reps[k]) + " is not in cell " +
                            std::to_string(k + 1));
    }
  }
  part.representatives.assign(reps.begin(), reps.end());
}

DeltaChoice choose_delta(const FiniteSpace& space, const TestFunctionFamily& fam, std::size_t K0,
                         const Rational& eps) {
  if (eps.sign() <= 0) throw InvalidArgument("eps must be positive");
  if (K0 < 1) throw InvalidArgument("K0 must be at least 1");
  const std::size_t size = space.size();
  const Rational bound = eps / 9;
  std::vector<Rational> g(size * K0);
  for (PointId x = 0; x < size; ++x) {
    for (std::size_t n = 1; n <= K0; ++n) g[x * K0 + n - 1] = fam(n, x);
  }
  // Smallest distance carried by a pair that violates the bound; pairs at
  // or beyond the current candidate cannot lower it.
  std::optional<Rational> first_bad;
  for (PointId x = 0; x < size; ++x) {
    for (PointId y = x + 1; y < size; ++y) {
      const Rational d = space.distance(x, y);
      if (first_bad && d >= *first_bad) continue;
      for (std::size_t i = 0; i < K0; ++i) {
        if (abs(g[x * K0 + i] - g[y * K0 + i]) >= bound) {
          first_bad = d;
          break;
        }
      }
    }
  }
  DeltaChoice out;
  if (first_bad) {
    out.delta = *first_bad;
  } else {
    out.delta = space.diameter().is_zero() ? Rational(1) : space.diameter();
  }
  out.lipschitz_delta = eps * space.diameter() / 9;
  out.lipschitz_valid = !first_bad || out.lipschitz_delta <= *first_bad;
  return out;
}

std::vector<Rational> psi(const AtomicMeasure& mu, const CoverPartition& part) {
  std::vector<Rational> out(part.size());
  for (const auto& [k, w] : sparse_psi(mu, part)) out[k] = w;
  return out;
}

Rational PhiImage::sup_norm() const {
  Rational best;
  for (const auto& v : values) best = max(best, abs(v));
  return best;
}

PhiMap::PhiMap(const CoverPartition& part, const TestFunctionFamily& fam, std::size_t K0, const OrbitTable& orbits)
    : K0_(K0), N_(orbits.horizon()), cells_(part.size()) {
  if (K0 < 1 || K0 > 60) throw InvalidArgument("K0 must lie in [1, 60]");
  if (part.space_size != orbits.size()) throw InvalidArgument("partition and system sizes differ");
  columns_.resize(cells_ * K0_ * N_);
  for (std::size_t k = 0; k < cells_; ++k) {
    const PointId z = part.representatives[k];
    for (std::size_t j = 0; j < N_; ++j) {
      const PointId fz = orbits.at(j, z);
      for (std::size_t n = 1; n <= K0_; ++n) {
        columns_[k * K0_ * N_ + (n - 1) * N_ + j] = fam(n, fz) * Rational::pow2(-static_cast<int>(n));
      }
    }
  }
}

PhiImage PhiMap::apply(std::span<const Rational> x) const {
  if (x.size() != cells_) throw InvalidArgument("phi input has the wrong dimension");
  PhiImage out{K0_, N_, std::vector<Rational>(K0_ * N_)};
  for (std::size_t k = 0; k < cells_; ++k) {
    if (x[k].is_zero()) continue;
    const Rational* col = &columns_[k * K0_ * N_];
    for (std::size_t i = 0; i < K0_ * N_; ++i) out.values[i] += x[k] * col[i];
  }
  return out;
}

PhiImage PhiMap::operator()(std::span<const Rational> x) const {
  const Rational norm = l1_norm(x);
  if (norm > Rational(1)) throw InvalidArgument("phi is applied to the unit ball of l1, got norm " + norm.str());
  PhiImage out = apply(x);
  if (out.sup_norm() > norm) throw Error("phi image exceeds the operator-norm bound");
  return out;
}

PhiImage PhiMap::difference(std::span<const Rational> x, std::span<const Rational> y) const {
  if (x.size() != cells_ || y.size() != cells_) throw InvalidArgument("phi input has the wrong dimension");
  std::vector<Rational> diff(cells_);
  for (std::size_t k = 0; k < cells_; ++k) diff[k] = x[k] - y[k];
  return apply(diff);
}

PhiImage phi(std::span<const Rational> x, const CoverPartition& part, const TestFunctionFamily& fam,
             std::size_t K0, const OrbitTable& orbits) {
  return PhiMap(part, fam, K0, orbits)(x);
}

std::size_t k0_for_eps(const Rational& eps) {
  if (eps.sign() <= 0) throw InvalidArgument("eps must be positive");
  for (int k = 1; k <= 62; ++k) {
    if (Rational::pow2(k) * eps >= Rational(4)) return static_cast<std::size_t>(k);
  }
  throw InvalidArgument("eps too small for K0 selection");
}

OpenCover ball_partition(const FiniteSpace& space, const Rational& radius) {
  if (radius.sign() <= 0) throw InvalidArgument("ball radius must be positive");
  std::vector<std::uint32_t> labels(space.size(), kUnassigned);
  std::uint32_t next = 0;
  for (PointId c = 0; c < space.size(); ++c) {
    if (labels[c] != kUnassigned) continue;
    labels[c] = next;
    for (PointId x = c + 1; x < space.size(); ++x) {
      if (labels[x] == kUnassigned && space.distance(x, c) < radius) labels[x] = next;
    }
    ++next;
  }
  return OpenCover::from_labels(labels);
}

CertificateReport separation_certificate(std::span<const AtomicMeasure> E, const Nads& sys,
                                         const CoverPartition& part, const TestFunctionFamily& fam,
                                         const CertificateParams& params) {
  if (params.eps.sign() <= 0) throw InvalidArgument("eps must be positive");
  if (params.N < 1) throw InvalidArgument("horizon N must be at least 1");
  if (part.space_size != sys.size()) throw InvalidArgument("partition and system sizes differ");

  CertificateReport report;
  report.eps = params.eps;
  report.K0 = params.K0 == 0 ? k0_for_eps(params.eps) : params.K0;
  report.N = params.N;
  report.cells = part.size();
  report.threshold = params.eps / (Rational(9) * Rational::pow2(static_cast<int>(report.K0)));
  const DeltaChoice delta = params.delta ? *params.delta : choose_delta(sys.space(), fam, report.K0, params.eps);
  report.delta = delta.delta;
  report.lipschitz_delta = delta.lipschitz_delta;

  const OrbitTable orbits(sys, params.N);
  for (std::size_t k = 0; k < part.size(); ++k) {
    const auto& cell = part.cells[k];
    for (std::size_t a = 0; a < cell.size(); ++a) {
      for (std::size_t b = a + 1; b < cell.size(); ++b) {
        if (!orbits.bowen_below(params.N, cell[a], cell[b], report.delta)) {
          throw CoverTooCoarse("cell " + std::to_string(k + 1) + " has Bowen diameter >= delta = " +
                               report.delta.str() + " at horizon " + std::to_string(params.N));
        }
        report.max_cell_diameter = max(report.max_cell_diameter, orbits.bowen_distance(params.N, cell[a], cell[b]));
      }
    }
  }

  const std::size_t K0 = report.K0;
  const std::size_t K = std::max(params.K, K0);
  const std::size_t N = params.N;
  const PhiMap phi_map(part, fam, K0, orbits);

  // exact[m][j][n-1] = int g_n o f_1^j dmu_m; approx uses the cell
  // representatives with weights psi(mu_m).
  std::vector<std::vector<std::vector<Rational>>> exact(E.size());
  std::vector<std::vector<std::vector<Rational>>> approx(E.size());
  std::vector<std::vector<Rational>> psis(E.size());
  for (std::size_t m = 0; m < E.size(); ++m) {
    const auto cells = sparse_psi(E[m], part);
    psis[m] = psi(E[m], part);
    exact[m].assign(N, std::vector<Rational>(K));
    approx[m].assign(N, std::vector<Rational>(K0));
    for (std::size_t j = 0; j < N; ++j) {
      for (std::size_t n = 1; n <= K; ++n) {
        for (const auto& [x, w] : E[m].atoms()) exact[m][j][n - 1] += w * fam(n, orbits.at(j, x));
      }
      for (std::size_t n = 1; n <= K0; ++n) {
        for (const auto& [k, w] : cells) {
          approx[m][j][n - 1] += w * fam(n, orbits.at(j, part.representatives[k]));
        }
      }
    }
  }

  const Rational i_bound = params.eps / 9;
  const Rational half_eps = params.eps / 2;
  for (std::size_t a = 0; a < E.size(); ++a) {
    for (std::size_t b = a + 1; b < E.size(); ++b) {
      PairCertificate pc;
      pc.first = a;
      pc.second = b;
      for (std::size_t j = 0; j < N; ++j) {
        Rational full;
        Rational partial;
        for (std::size_t n = 1; n <= K; ++n) {
          const Rational term = abs(exact[a][j][n - 1] - exact[b][j][n - 1]) * Rational::pow2(-static_cast<int>(n));
          full += term;
          if (n <= K0) partial += term;
        }
        pc.separation = max(pc.separation, full);
        if (j == 0 || partial > pc.partial_sum) {
          pc.partial_sum = partial;
          pc.j0 = j;
        }
      }
      if (pc.separation <= params.eps) {
        throw PreconditionNotSeparated(a, b, "measures " + std::to_string(a) + " and " + std::to_string(b) +
                                                 " are not (N, eps)-separated: truncated distance " +
                                                 pc.separation.str());
      }
      pc.partial_ok = pc.partial_sum > half_eps;

      pc.triangle_ok = true;
      for (std::size_t j = 0; j < N; ++j) {
        for (std::size_t n = 1; n <= K0; ++n) {
          const Rational i1 = abs(exact[a][j][n - 1] - approx[a][j][n - 1]);
          const Rational i2 = abs(approx[a][j][n - 1] - approx[b][j][n - 1]);
          const Rational i3 = abs(approx[b][j][n - 1] - exact[b][j][n - 1]);
          pc.I1 = max(pc.I1, i1);
          pc.I2 = max(pc.I2, i2);
          pc.I3 = max(pc.I3, i3);
          if (abs(exact[a][j][n - 1] - exact[b][j][n - 1]) > i1 + i2 + i3) pc.triangle_ok = false;
        }
      }
      pc.phi_gap = phi_map.difference(psis[a], psis[b]).sup_norm();
      pc.margin = pc.phi_gap - report.threshold;
      pc.pass = pc.partial_ok && pc.triangle_ok && pc.I1 <= i_bound && pc.I3 <= i_bound && pc.margin.sign() > 0;
      if (!pc.pass) {
        ++report.failures;
        if (params.strict) {
          throw SeparationFailure(a, b, "pair (" + std::to_string(a) + ", " + std::to_string(b) +
                                            ") fails: I1=" + pc.I1.str() + " I3=" + pc.I3.str() +
                                            " margin=" + pc.margin.str());
        }
      }
      report.pairs.push_back(std::move(pc));
    }
  }
  return report;
}

}  // namespace topent
