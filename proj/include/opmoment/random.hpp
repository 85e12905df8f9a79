#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "opmoment/fields.hpp"
#include "opmoment/matrix.hpp"
#include "opmoment/multiindex.hpp"
#include "opmoment/polynomial.hpp"

namespace opmoment {

/// Seeded generator with fully specified draws (mt19937_64 plus modular
/// reduction), so fixed seeds reproduce bit-identical values everywhere.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t nextU64() { return engine_(); }

  long nextInt(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(engine_() % span);
  }

  /// Uniform-ish double in [-1, 1] from the top 53 bits.
  double nextSignedUnit() {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
  }

 private:
  std::mt19937_64 engine_;
};

/// Small random scalar: numerators in [-2, 2], denominators in {1, 2} for the
/// exact backend, [-1, 1] doubles otherwise.
template <ScalarField F>
inline typename F::Real randomReal(DeterministicRng& rng) {
  if constexpr (F::kExact) {
    return F::fromRatio(rng.nextInt(-2, 2), rng.nextInt(1, 2));
  } else {
    return rng.nextSignedUnit();
  }
}

template <ScalarField F>
inline typename F::Complex randomComplex(DeterministicRng& rng) {
  auto re = randomReal<F>(rng);
  auto im = randomReal<F>(rng);
  return F::makeComplex(std::move(re), std::move(im));
}

template <ScalarField F>
inline Matrix<F> randomMatrix(DeterministicRng& rng, std::size_t rows, std::size_t cols) {
  Matrix<F> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = randomComplex<F>(rng);
  return m;
}

template <ScalarField F>
inline HermMatrix<F> randomHermMatrix(DeterministicRng& rng, std::size_t d) {
  Matrix<F> g = randomMatrix<F>(rng, d, d);
  Matrix<F> sym = g;
  sym += g.adjoint();
  return HermMatrix<F>::fromMatrix(std::move(sym));
}

/// Random PSD matrix G* G.
template <ScalarField F>
inline HermMatrix<F> randomPsdMatrix(DeterministicRng& rng, std::size_t d) {
  Matrix<F> g = randomMatrix<F>(rng, d, d);
  return HermMatrix<F>::fromMatrix(g.adjoint() * g);
}

/// Random PSD Choi matrix, i.e. a random completely positive map on Herm_d.
template <ScalarField F>
inline HermMatrix<F> randomChoi(DeterministicRng& rng, std::size_t d) {
  return randomPsdMatrix<F>(rng, d * d);
}

template <ScalarField F>
inline MatrixPolynomial<F> randomMatrixPolynomial(DeterministicRng& rng, int nvars, std::size_t d,
                                                  int maxDeg) {
  MatrixPolynomial<F> p(nvars, d);
  for (const auto& alpha : monomialsUpTo(static_cast<std::size_t>(nvars), maxDeg))
    p.addTerm(alpha, randomHermMatrix<F>(rng, d));
  return p;
}

}  // namespace opmoment
