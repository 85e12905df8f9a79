#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>

#include "opmoment/matrix.hpp"

namespace opmoment {

/// A linear map Phi on Herm_d is carried around as its d^2 x d^2 Choi matrix
/// C = sum_{k,l} E_kl ⊗ Phi(E_kl); C is PSD exactly when Phi is completely
/// positive, which is the checkable class of positive maps this library uses.

inline std::size_t choiSideDim(const std::size_t choiDim) {
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(choiDim))));
  if (d * d != choiDim) throw std::invalid_argument("Choi matrix dimension is not a perfect square");
  return d;
}

/// Phi(A) = sum_{k,l} A_kl * C[(k,l) block] — the partial-trace contraction of
/// the Choi matrix against A^T.
template <ScalarField F>
inline HermMatrix<F> applyChoiMap(const HermMatrix<F>& choi, const HermMatrix<F>& a) {
  const std::size_t d = choiSideDim(choi.dim());
  if (a.dim() != d) throw std::invalid_argument("applyChoiMap: argument dimension mismatch");
  Matrix<F> out(d, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      const auto& akl = a.entry(k, l);
      if (F::isZero(akl)) continue;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          out.at(i, j) += akl * choi.entry(k * d + i, l * d + j);
    }
  return HermMatrix<F>::fromMatrix(std::move(out));
}

/// Choi matrix of a map given as a function on matrix units.
template <ScalarField F>
inline HermMatrix<F> choiFromMap(std::size_t d,
                                 const std::function<Matrix<F>(std::size_t, std::size_t)>& phiOfUnit) {
  Matrix<F> c(d * d, d * d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      Matrix<F> img = phiOfUnit(k, l);
      if (img.rows() != d || img.cols() != d)
        throw std::invalid_argument("choiFromMap: image dimension mismatch");
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) c.at(k * d + i, l * d + j) = img.at(i, j);
    }
  return HermMatrix<F>::fromMatrix(std::move(c));
}

template <ScalarField F>
inline HermMatrix<F> choiIdentityMap(std::size_t d) {
  return choiFromMap<F>(d, [&](std::size_t k, std::size_t l) {
    Matrix<F> m(d, d);
    m.at(k, l) = F::makeComplex(F::fromLong(1), F::fromLong(0));
    return m;
  });
}

/// A -> trace(A) * I / d.
template <ScalarField F>
inline HermMatrix<F> choiDepolarizingMap(std::size_t d) {
  return choiFromMap<F>(d, [&](std::size_t k, std::size_t l) {
    Matrix<F> m(d, d);
    if (k == l)
      for (std::size_t i = 0; i < d; ++i)
        m.at(i, i) = F::makeComplex(F::fromRatio(1, static_cast<long>(d)), F::fromLong(0));
    return m;
  });
}

/// A -> S A S*.
template <ScalarField F>
inline HermMatrix<F> choiCongruenceMap(const Matrix<F>& s) {
  if (s.rows() != s.cols()) throw std::invalid_argument("choiCongruenceMap: S must be square");
  const std::size_t d = s.rows();
  return choiFromMap<F>(d, [&](std::size_t k, std::size_t l) {
    Matrix<F> unit(d, d);
    unit.at(k, l) = F::makeComplex(F::fromLong(1), F::fromLong(0));
    return s * unit * s.adjoint();
  });
}

}  // namespace opmoment
