#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "opmoment/choi.hpp"
#include "opmoment/linop.hpp"
#include "opmoment/matrix.hpp"
#include "opmoment/measures.hpp"
#include "opmoment/moments.hpp"
#include "opmoment/positivity.hpp"
#include "opmoment/psd.hpp"
#include "opmoment/random.hpp"
#include "opmoment/region.hpp"

namespace opmoment {

/// Translation-covariant family of map-valued measures: for every y the measure
/// on K - y has atoms at the fixed offsets {c_i} with the fixed completely
/// positive maps {Phi_i}. The operator it induces has constant canonical data
/// Q_beta(A) = sum_i c_i^beta Phi_i(A).
template <ScalarField F>
class CovariantMeasureFamily {
 public:
  CovariantMeasureFamily(RegionK<F> region, std::vector<std::vector<typename F::Real>> offsets,
                         std::vector<HermMatrix<F>> chois, std::size_t dim,
                         std::optional<double> tol = std::nullopt)
      : region_(std::move(region)), offsets_(std::move(offsets)), chois_(std::move(chois)),
        dim_(dim) {
    if (offsets_.size() != chois_.size())
      throw std::invalid_argument("CovariantMeasureFamily: offsets/maps count mismatch");
    if (offsets_.empty()) throw std::invalid_argument("CovariantMeasureFamily: no atoms");
    for (std::size_t i = 0; i < offsets_.size(); ++i) {
      if (offsets_[i].size() != static_cast<std::size_t>(region_.nvars()))
        throw std::invalid_argument("CovariantMeasureFamily: offset arity mismatch");
      if (chois_[i].dim() != dim_ * dim_)
        throw std::invalid_argument("CovariantMeasureFamily: Choi dim mismatch");
      if (!psdCheck(chois_[i], tol).isPsd)
        throw std::invalid_argument("CovariantMeasureFamily: atom " + std::to_string(i) +
                                    " Choi matrix is not PSD");
    }
  }

  const RegionK<F>& region() const { return region_; }
  const std::vector<std::vector<typename F::Real>>& offsets() const { return offsets_; }
  const std::vector<HermMatrix<F>>& chois() const { return chois_; }
  std::size_t dim() const { return dim_; }
  int nvars() const { return region_.nvars(); }

  friend bool operator==(const CovariantMeasureFamily& a, const CovariantMeasureFamily& b) {
    return a.region_ == b.region_ && a.offsets_ == b.offsets_ && a.chois_ == b.chois_ &&
           a.dim_ == b.dim_;
  }
  friend bool operator!=(const CovariantMeasureFamily& a, const CovariantMeasureFamily& b) {
    return !(a == b);
  }

  /// The measure nu_y (independent of y), supported at the offsets.
  AtomicMapMeasure<F> measure() const {
    std::vector<MapAtom<F>> atoms;
    atoms.reserve(offsets_.size());
    for (std::size_t i = 0; i < offsets_.size(); ++i)
      atoms.push_back(MapAtom<F>{offsets_[i], chois_[i]});
    return AtomicMapMeasure<F>(RegionK<F>::allSpace(region_.nvars()), std::move(atoms), dim_);
  }

 private:
  RegionK<F> region_;
  std::vector<std::vector<typename F::Real>> offsets_;
  std::vector<HermMatrix<F>> chois_;
  std::size_t dim_;
};

namespace detail {

template <ScalarField F>
inline PolyOperator<F> buildFamilyOperator(const CovariantMeasureFamily<F>& fam, int maxDeg,
                                           const std::vector<long>& signs) {
  const int n = fam.nvars();
  const std::size_t d = fam.dim();
  return PolyOperator<F>::fromImageFn(n, d, maxDeg, [&](std::size_t i, const MultiIndex& beta) {
    // T(B_i ⊗ x^beta) = sum_j sign_j (x + c_j)^beta Phi_j(B_i)
    MatrixPolynomial<F> out(n, d);
    for (std::size_t j = 0; j < fam.offsets().size(); ++j) {
      HermMatrix<F> img = applyChoiMap(fam.chois()[j], hermBasisElement<F>(d, i));
      if (signs[j] < 0) img = -img;
      forEachSubIndex(beta, [&](const MultiIndex& alpha) {
        typename F::Real w = F::fromLong(static_cast<long>(binomialProduct(beta, alpha))) *
                 evalMonomial<F>(beta.minus(alpha), fam.offsets()[j]);
        out.addTerm(alpha, w * img);
      });
    }
    return out;
  });
}

}  // namespace detail

/// T(A ⊗ x^beta)(y) = sum_i (y + c_i)^beta Phi_i(A), truncated at maxDeg.
template <ScalarField F>
inline PolyOperator<F> buildFromFamily(const CovariantMeasureFamily<F>& fam, int maxDeg) {
  return detail::buildFamilyOperator(fam, maxDeg,
                                     std::vector<long>(fam.offsets().size(), 1));
}

/// Negative control: the family operator with one atom's map negated. The
/// result is no longer induced by a positive family.
template <ScalarField F>
inline PolyOperator<F> buildFromFamilyNegatedAtom(const CovariantMeasureFamily<F>& fam,
                                                  std::size_t atomIndex, int maxDeg) {
  if (atomIndex >= fam.offsets().size())
    throw std::invalid_argument("buildFromFamilyNegatedAtom: atom index out of range");
  std::vector<long> signs(fam.offsets().size(), 1);
  signs[atomIndex] = -1;
  return detail::buildFamilyOperator(fam, maxDeg, signs);
}

/// Seeded member of Pos(K): G(x)* G(x) plus sum_l g_l(x) H_l(x)* H_l(x) over
/// the region's defining polynomials g_l.
template <ScalarField F>
inline MatrixPolynomial<F> randomPositivePoly(const RegionK<F>& region, int deg, std::size_t d,
                                              std::uint64_t seed) {
  if (deg < 0) throw std::invalid_argument("randomPositivePoly: negative degree");
  DeterministicRng rng(seed);
  const int n = region.nvars();

  auto randomFactor = [&](int maxDeg) {
    RectMatrixPoly<F> g;
    g.nvars = n;
    g.rows = d;
    g.cols = d;
    for (const auto& alpha : monomialsUpTo(static_cast<std::size_t>(n), maxDeg))
      g.terms.emplace(alpha, randomMatrix<F>(rng, d, d));
    return g;
  };

  MatrixPolynomial<F> p = gramSquare(randomFactor(deg / 2));
  for (const auto& g : region.constraintPolys()) {
    const int rest = (deg - g.degree()) / 2;
    if (rest < 0) continue;
    p += g * gramSquare(randomFactor(rest));
  }
  return p;
}

/// Sampled evidence that T maps Pos(K) into Pos(K). A fail (with its witness
/// trial and point) certifies T is not a K-preserver.
template <ScalarField F>
struct PreserverReport {
  int trials = 0;
  bool pass = true;
  int worstTrial = -1;
  std::vector<typename F::Real> worstPoint;
  double worstMinEig = 0.0;
};

template <ScalarField F>
inline PreserverReport<F> checkPreserverSampling(const PolyOperator<F>& t, const RegionK<F>& region,
                                                 int trials, int deg, const GridSpec<F>& grid = {},
                                                 double tol = 1e-9, std::uint64_t seed = 0) {
  if (deg > t.maxDeg())
    throw std::invalid_argument("checkPreserverSampling: input degree exceeds operator truncation");
  if (region.nvars() != t.nvars())
    throw std::invalid_argument("checkPreserverSampling: region arity mismatch");
  PreserverReport<F> report;
  report.trials = trials;
  bool first = true;
  for (int trial = 0; trial < trials; ++trial) {
    auto p = randomPositivePoly<F>(region, deg, t.dim(), seed + static_cast<std::uint64_t>(trial));
    auto sampled = posSample(applyOperator(t, p), region, grid, tol);
    if (first || sampled.worstMinEig < report.worstMinEig) {
      report.worstTrial = trial;
      report.worstPoint = sampled.worstPoint;
      report.worstMinEig = sampled.worstMinEig;
      first = false;
    }
  }
  report.pass = report.worstMinEig >= -tol;
  return report;
}

/// PSD probe matrices spanning Herm_d: the diagonal units E_ii and, for each
/// pair i < j, E_ii + E_jj ± (E_ij + E_ji) and E_ii + E_jj ± i(E_ij - E_ji).
template <ScalarField F>
inline std::vector<HermMatrix<F>> defaultMatrixProbes(std::size_t d) {
  std::vector<HermMatrix<F>> probes;
  for (std::size_t i = 0; i < d; ++i) probes.push_back(hermBasisElement<F>(d, i * d + i));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      auto diag = hermBasisElement<F>(d, i * d + i) + hermBasisElement<F>(d, j * d + j);
      auto sym = hermBasisElement<F>(d, i * d + j);
      auto anti = hermBasisElement<F>(d, j * d + i);
      probes.push_back(diag + sym);
      probes.push_back(diag - sym);
      probes.push_back(diag + anti);
      probes.push_back(diag - anti);
    }
  return probes;
}

/// Default y-grid: 5 points per axis inside K (needs a bounded region or an
/// explicit box).
template <ScalarField F>
inline std::vector<std::vector<typename F::Real>> defaultYGrid(const RegionK<F>& region,
                                                               int pointsPerAxis = 5) {
  GridSpec<F> spec;
  spec.pointsPerAxis = pointsPerAxis;
  return regionGridPoints(region, spec);
}

template <ScalarField F>
struct BorceaCell {
  std::vector<typename F::Real> y;
  std::size_t probeIndex = 0;
  MomentVerdict<F> verdict;
};

/// Aggregate of the per-(y, probe) truncated moment tests on the canonical
/// data of T. Fails are certificates; passes are truncated evidence.
template <ScalarField F>
struct BorceaReport {
  bool pass = true;
  MomentTestMode mode = MomentTestMode::block;
  std::vector<BorceaCell<F>> cells;
  std::optional<std::size_t> firstFailCell;
};

/// For each grid point y in K and each PSD probe A, forms the sequence
/// (Q_alpha(A)(y))_{|alpha| <= 2 level} and runs the truncated moment test on
/// K - y (block or compression per mode).
template <ScalarField F>
inline BorceaReport<F> borceaNecessaryCheck(
    const PolyOperator<F>& t, const RegionK<F>& region,
    const std::vector<std::vector<typename F::Real>>& yGrid, int level, MomentTestMode mode,
    std::vector<HermMatrix<F>> probes = {}, std::optional<double> tol = std::nullopt) {
  if (region.nvars() != t.nvars())
    throw std::invalid_argument("borceaNecessaryCheck: region arity mismatch");
  if (2 * level > t.maxDeg())
    throw std::invalid_argument("borceaNecessaryCheck: level needs canonical data beyond maxDeg");
  if (probes.empty()) probes = defaultMatrixProbes<F>(t.dim());

  const auto rep = extractCanonical(t);
  BorceaReport<F> report;
  report.mode = mode;
  for (const auto& y : yGrid) {
    if (!region.contains(y))
      throw std::invalid_argument("borceaNecessaryCheck: grid point outside K");
    const auto shiftedRegion = region.shifted(y);
    for (std::size_t pi = 0; pi < probes.size(); ++pi) {
      auto seq = OperatorSequence<F>::fromFn(
          t.nvars(), t.dim(), 2 * level,
          [&](const MultiIndex& alpha) { return rep.qValue(alpha, probes[pi], y); });
      BorceaCell<F> cell;
      cell.y = y;
      cell.probeIndex = pi;
      cell.verdict = truncatedMomentTest(seq, shiftedRegion, level, mode, {}, tol);
      if (!cell.verdict.pass && report.pass) {
        report.pass = false;
        report.firstFailCell = report.cells.size();
      }
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

/// The operator assembled from the explicit local-but-not-general canonical
/// data: Q_k(B_i) equal for every basis element, with the sequence values of
/// bisgaardSequence.
inline PolyOperator<ExactField> bisgaardOperator(int maxDeg) {
  if (maxDeg < 0 || maxDeg > 16) throw std::invalid_argument("bisgaardOperator: maxDeg out of range");
  const auto moments = bisgaardSequence((maxDeg + 1) / 2);
  CanonicalRep<ExactField> rep(1, 2, maxDeg);
  for (int k = 0; k <= maxDeg; ++k) {
    MultiIndex beta{static_cast<std::uint32_t>(k)};
    auto value = MatrixPolynomial<ExactField>::constant(1, moments.entry(beta));
    for (std::size_t i = 0; i < hermBasisSize(2); ++i) rep.set(beta, i, value);
  }
  return reconstruct(rep);
}

struct BisgaardDemoReport {
  HermMatrix<ExactField> hankel;                       // the explicit 4x4 block moment matrix
  PsdVerdict<ExactField> hankelVerdict;                // not PSD, with witness
  double hankelMinEig = 0.0;                           // -1
  BorceaReport<ExactField> blockCheck;                 // level 1: fail
  std::vector<BorceaReport<ExactField>> localChecks;   // levels 1..3: pass
  PreserverReport<ExactField> sampling;                // SOS inputs, window [-1,1]: pass
  bool allExpected = false;
};

/// Self-contained reproduction of the local-pass / block-fail dichotomy.
inline BisgaardDemoReport bisgaardDemo() {
  BisgaardDemoReport report{
      momentMatrix(bisgaardSequence(1), 1),
      {},
      0.0,
      {},
      {},
      {},
      false,
  };
  report.hankelVerdict = psdCheckExact(report.hankel);
  report.hankelMinEig = eigMin(toApproxHerm(report.hankel));

  const auto op = bisgaardOperator(6);
  const auto region = RegionK<ExactField>::allSpace(1);
  std::vector<std::vector<Rational>> yGrid;
  for (long k = -2; k <= 2; ++k) yGrid.push_back({Rational(k, 2)});

  report.blockCheck = borceaNecessaryCheck(op, region, yGrid, 1, MomentTestMode::block);
  for (int level = 1; level <= 3; ++level)
    report.localChecks.push_back(
        borceaNecessaryCheck(op, region, yGrid, level, MomentTestMode::compression));

  GridSpec<ExactField> window;
  window.boundingBox = std::make_pair(std::vector<Rational>{Rational(-1)},
                                      std::vector<Rational>{Rational(1)});
  report.sampling = checkPreserverSampling(op, region, 25, 2, window, 1e-8, 0);

  bool localsPass = true;
  for (const auto& check : report.localChecks) localsPass = localsPass && check.pass;
  report.allExpected = !report.hankelVerdict.isPsd && report.hankelVerdict.witness.has_value() &&
                       std::fabs(report.hankelMinEig + 1.0) <= 1e-9 && !report.blockCheck.pass &&
                       localsPass && report.sampling.pass;
  return report;
}

}  // namespace opmoment
