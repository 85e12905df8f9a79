#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "opmoment/fields.hpp"
#include "opmoment/matrix.hpp"

namespace opmoment {

/// Real symmetric embedding of a complex Hermitian matrix M = A + iB:
///   R = [ A  -B ]
///       [ B   A ]
/// R is symmetric, and M is PSD iff R is; each eigenvalue of M shows up twice.
template <ScalarField F>
inline std::vector<std::vector<typename F::Real>> realSymmetricEmbedding(const HermMatrix<F>& m) {
  const std::size_t d = m.dim();
  std::vector<std::vector<typename F::Real>> r(2 * d,
                                               std::vector<typename F::Real>(2 * d, F::fromLong(0)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      auto re = F::realPart(m.entry(i, j));
      auto im = F::imagPart(m.entry(i, j));
      r[i][j] = re;
      r[i + d][j + d] = re;
      r[i][j + d] = -im;
      r[i + d][j] = im;
    }
  return r;
}

struct SymmetricEigenResult {
  std::vector<double> values;                 // ascending
  std::vector<std::vector<double>> vectors;   // vectors[k] pairs with values[k]
};

/// Cyclic-by-rows Jacobi sweeps on a dense real symmetric matrix.
/// Converges unconditionally; accuracy is on the order of eps * ||A||.
inline SymmetricEigenResult jacobiEigenSymmetric(std::vector<std::vector<double>> a,
                                                 int maxSweeps = 64) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("jacobiEigenSymmetric: matrix not square");

  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::fabs(a[i][j]));
  const double stop = (scale == 0.0) ? 0.0 : scale * 1e-15;

  for (int sweep = 0; sweep < maxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::fabs(a[p][q]));
    if (off <= stop) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p][q];
        if (std::fabs(apq) <= stop * 1e-2) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = a[p][p], aqq = a[q][q];
        a[p][p] = app - t * apq;
        a[q][q] = aqq + t * apq;
        a[p][q] = 0.0;
        a[q][p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = akp - s * (akq + tau * akp);
          a[p][k] = a[k][p];
          a[k][q] = akq + s * (akp - tau * akq);
          a[q][k] = a[k][q];
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = vkp - s * (vkq + tau * vkp);
          v[k][q] = vkq + s * (vkp - tau * vkq);
        }
      }
    }
  }

  SymmetricEigenResult res;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a[x][x] < a[y][y]; });
  res.values.reserve(n);
  res.vectors.reserve(n);
  for (std::size_t k : order) {
    res.values.push_back(a[k][k]);
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v[i][k];
    res.vectors.push_back(std::move(col));
  }
  return res;
}

/// Smallest eigenvalue of a Hermitian matrix via the 2d x 2d real embedding.
inline double eigMin(const HermMatrix<ApproxField>& m) {
  if (m.dim() == 0) throw std::invalid_argument("eigMin: empty matrix");
  auto r = realSymmetricEmbedding(m);
  auto eig = jacobiEigenSymmetric(std::move(r));
  return eig.values.front();
}

/// Smallest eigenvalue together with a unit eigenvector mapped back to C^d.
inline std::pair<double, std::vector<std::complex<double>>> eigMinWithVector(
    const HermMatrix<ApproxField>& m) {
  if (m.dim() == 0) throw std::invalid_argument("eigMin: empty matrix");
  const std::size_t d = m.dim();
  auto eig = jacobiEigenSymmetric(realSymmetricEmbedding(m));
  const auto& w = eig.vectors.front();
  std::vector<std::complex<double>> z(d);
  for (std::size_t i = 0; i < d; ++i) z[i] = {w[i], w[i + d]};
  return {eig.values.front(), std::move(z)};
}

}  // namespace opmoment
