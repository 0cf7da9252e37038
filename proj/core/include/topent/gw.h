#ifndef TOPENT_GW_H_
#define TOPENT_GW_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "topent/cover.h"
#include "topent/dynamics.h"
#include "topent/measures.h"
#include "topent/rational.h"

namespace topent {

// Successive-difference partition of a subcover: A_1 = V_1,
// A_k = V_k minus the union of V_1..V_{k-1}, with one representative per cell.
struct CoverPartition {
  std::size_t space_size = 0;
  std::vector<std::vector<PointId>> cells;
  std::vector<std::vector<PointId>> parents;
  std::vector<PointId> representatives;
  // Cell index of every point.
  std::vector<std::uint32_t> cell_of;

  std::size_t size() const { return cells.size(); }
};

// Throws EmptyCell(k) when V_k is covered by earlier elements and NotACover
// when the elements miss a point. Representatives default to the lowest
// point of each cell.
CoverPartition partition_from_cover(const OpenCover& subcover);

// Replaces the representatives; each must lie in its own cell.
void set_representatives(CoverPartition& part, std::span<const PointId> reps);

struct DeltaChoice {
  // Largest pairwise distance d such that rho(x, y) < d implies
  // max_{n <= K0} |g_n(x) - g_n(y)| < eps / 9.
  Rational delta;
  // eps * diam / 9, valid for 1-Lipschitz-after-scaling families.
  Rational lipschitz_delta;
  // Whether the implication holds for lipschitz_delta on this space.
  bool lipschitz_valid = false;
};

DeltaChoice choose_delta(const FiniteSpace& space, const TestFunctionFamily& fam, std::size_t K0,
                         const Rational& eps);

// Cell masses (mu(A_1), ..., mu(A_L)).
std::vector<Rational> psi(const AtomicMeasure& mu, const CoverPartition& part);

// Coordinates indexed by (n, j), n = 1..K0, j = 0..N-1.
struct PhiImage {
  std::size_t K0 = 0;
  std::size_t N = 0;
  std::vector<Rational> values;

  const Rational& at(std::size_t n, std::size_t j) const { return values[(n - 1) * N + j]; }
  Rational sup_norm() const;
};

// x -> ((1/2^n) sum_k x_k g_n(f_1^j z_k))_{n, j}, with the columns
// g_n(f_1^j z_k) / 2^n tabulated once.
class PhiMap {
 public:
  PhiMap(const CoverPartition& part, const TestFunctionFamily& fam, std::size_t K0, const OrbitTable& orbits);

  std::size_t K0() const { return K0_; }
  std::size_t N() const { return N_; }
  std::size_t cells() const { return cells_; }

  // Throws InvalidArgument when ||x||_1 > 1, and Error when the image
  // violates ||phi(x)||_inf <= ||x||_1.
  PhiImage operator()(std::span<const Rational> x) const;
  // phi(x) - phi(y) without the unit-ball precondition on the difference.
  PhiImage difference(std::span<const Rational> x, std::span<const Rational> y) const;

 private:
  PhiImage apply(std::span<const Rational> x) const;

  std::size_t K0_;
  std::size_t N_;
  std::size_t cells_;
  // columns_[k * K0 * N + (n - 1) * N + j]
  std::vector<Rational> columns_;
};

PhiImage phi(std::span<const Rational> x, const CoverPartition& part, const TestFunctionFamily& fam,
             std::size_t K0, const OrbitTable& orbits);

// Smallest K0 with sum_{n > K0} 2 * 2^-n <= eps / 2, i.e. ceil(log2(4 / eps)).
std::size_t k0_for_eps(const Rational& eps);

// Greedy partition into cells {x : rho(x, c) < radius} around the lowest
// unassigned point c; every cell has diameter < 2 * radius.
OpenCover ball_partition(const FiniteSpace& space, const Rational& radius);

struct CertificateParams {
  Rational eps;
  std::size_t K0 = 0;  // 0 selects k0_for_eps(eps)
  std::size_t N = 1;
  // Truncation of the weak* series used to verify the separation
  // precondition; the partial sum is a lower bound, so the check is sound.
  std::size_t K = 16;
  // Result of choose_delta when the caller already has it.
  std::optional<DeltaChoice> delta;
  // Throw SeparationFailure at the first failing pair instead of reporting.
  bool strict = true;
};

struct PairCertificate {
  std::size_t first = 0;
  std::size_t second = 0;
  // Truncated weak* Bowen distance at horizon N.
  Rational separation;
  // Step j0 whose K0-partial weak* sum exceeds eps / 2, and that sum.
  std::size_t j0 = 0;
  Rational partial_sum;
  bool partial_ok = false;
  // Maxima over n <= K0, j < N.
  Rational I1;
  Rational I2;
  Rational I3;
  // |int g_n o f^j dmu - int g_n o f^j dnu| <= I1 + I2 + I3 for every (n, j).
  bool triangle_ok = false;
  // ||phi psi(mu) - phi psi(nu)||_inf and its excess over the threshold.
  Rational phi_gap;
  Rational margin;
  bool pass = false;
};

struct CertificateReport {
  Rational eps;
  std::size_t K0 = 0;
  std::size_t N = 0;
  Rational delta;
  Rational lipschitz_delta;
  // eps / (9 * 2^K0)
  Rational threshold;
  std::size_t cells = 0;
  // Largest Bowen diameter of a cell at horizon N; below delta.
  Rational max_cell_diameter;
  std::vector<PairCertificate> pairs;
  std::size_t failures = 0;

  bool ok() const { return failures == 0; }
};

// Certifies that psi then phi keeps the weak*-Bowen-separated measures E
// eps / (9 * 2^K0)-separated. `part` must come from a cover of Bowen
// diameter < delta at horizon N; throws CoverTooCoarse otherwise and
// PreconditionNotSeparated when a pair of E is not (N, eps)-separated.
CertificateReport separation_certificate(std::span<const AtomicMeasure> E, const Nads& sys,
                                         const CoverPartition& part, const TestFunctionFamily& fam,
                                         const CertificateParams& params);

}  // namespace topent

#endif  // TOPENT_GW_H_
