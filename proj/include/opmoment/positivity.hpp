#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "opmoment/jacobi.hpp"
#include "opmoment/polynomial.hpp"
#include "opmoment/region.hpp"

namespace opmoment {

/// Grid-sampled positivity evidence. A fail (with its witness point) certifies
/// p is not in Pos(K); a pass only says no grid point broke the tolerance.
template <ScalarField F>
struct PositivityReport {
  bool pass = true;
  std::vector<typename F::Real> worstPoint;
  double worstMinEig = 0.0;
  std::size_t pointsTested = 0;
};

template <ScalarField F>
inline PositivityReport<F> posSample(const MatrixPolynomial<F>& p, const RegionK<F>& region,
                                     const GridSpec<F>& grid = {}, double tol = 1e-9) {
  if (region.nvars() != p.nvars())
    throw std::invalid_argument("posSample: region/polynomial arity mismatch");
  auto points = regionGridPoints(region, grid);
  if (points.empty()) throw std::invalid_argument("posSample: grid does not meet the region");

  PositivityReport<F> report;
  bool first = true;
  for (const auto& x : points) {
    const double lambda = eigMin(toApproxHerm(eval(p, x)));
    ++report.pointsTested;
    if (first || lambda < report.worstMinEig) {
      report.worstMinEig = lambda;
      report.worstPoint = x;
      first = false;
    }
  }
  report.pass = report.worstMinEig >= -tol;
  return report;
}

}  // namespace opmoment
