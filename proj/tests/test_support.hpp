#pragma once

#include <cstdint>
#include <vector>

#include "opmoment/opmoment.hpp"

namespace opmoment::testing {

// Determinant over the rationals by plain Gaussian elimination with pivoting.
// Test-side oracle, independent of the LDL^T code path.
inline Rational rationalDeterminant(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a[pivot][k] == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      Rational f = a[i][k] / a[k][k];
      if (f == 0) continue;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

// Leading principal minor of order k of a rational symmetric matrix.
inline Rational leadingMinor(const std::vector<std::vector<Rational>>& a, std::size_t k) {
  std::vector<std::vector<Rational>> sub(k, std::vector<Rational>(k, Rational(0)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) sub[i][j] = a[i][j];
  return rationalDeterminant(std::move(sub));
}

template <ScalarField F>
inline HermMatrix<F> hermFromReal(const std::vector<std::vector<long>>& rows) {
  Matrix<F> m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j)
      m.at(i, j) = F::makeComplex(F::fromLong(rows[i][j]), F::fromLong(0));
  return HermMatrix<F>::fromMatrix(std::move(m));
}

inline HermMatrix<ApproxField> hermFromDouble(const std::vector<std::vector<double>>& rows) {
  Matrix<ApproxField> m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m.at(i, j) = {rows[i][j], 0.0};
  return HermMatrix<ApproxField>::fromMatrix(std::move(m));
}

inline Rational bigPow2(unsigned long e) {
  Rational r;
  mpz_ui_pow_ui(r.get_num_mpz_t(), 2UL, e);
  return r;
}

}  // namespace opmoment::testing
