#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "opmoment/fields.hpp"
#include "opmoment/jacobi.hpp"
#include "opmoment/matrix.hpp"

namespace opmoment {

/// Outcome of a PSD test. When isPsd is false, witness satisfies <Mv, v> < 0
/// (exactly in the exact backend, below -tol in the approx one).
template <ScalarField F>
struct PsdVerdict {
  bool isPsd = true;
  std::optional<double> minEigenvalue;                       // approx backend only
  std::optional<std::vector<typename F::Complex>> witness;   // present when !isPsd
};

namespace detail {

// LDL^T with greatest-diagonal pivoting on a rational symmetric matrix.
// Returns {psd, witness}: witness w (when !psd) satisfies w^T S w < 0 exactly.
struct RationalLdltOutcome {
  bool psd = true;
  std::vector<Rational> witness;
};

inline RationalLdltOutcome ldltPsdRational(std::vector<std::vector<Rational>> s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::vector<std::vector<Rational>> l(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) l[i][i] = 1;

  auto swapIndex = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap(perm[a], perm[b]);
    for (std::size_t j = 0; j < n; ++j) std::swap(s[a][j], s[b][j]);
    for (std::size_t i = 0; i < n; ++i) std::swap(s[i][a], s[i][b]);
    for (std::size_t j = 0; j < n; ++j) std::swap(l[a][j], l[b][j]);
  };

  // lift a direction u living on trailing indices [k, n) back through L^T and
  // the recorded permutation, so that w^T S_original w = u^T Schur u
  auto liftWitness = [&](std::size_t k, const std::vector<Rational>& u) {
    std::vector<Rational> w(n, Rational(0));
    for (std::size_t i = k; i < n; ++i) w[i] = u[i - k];
    // solve L^T x = w by back substitution (unit upper triangular L^T)
    for (std::size_t ii = n; ii-- > 0;) {
      Rational acc = w[ii];
      for (std::size_t j = ii + 1; j < n; ++j) acc -= l[j][ii] * w[j];
      w[ii] = acc;
    }
    std::vector<Rational> out(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) out[perm[i]] = w[i];
    return out;
  };

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (s[i][i] > s[best][best]) best = i;

    if (s[best][best] > 0) {
      swapIndex(k, best);
      const Rational piv = s[k][k];
      std::vector<Rational> pivotRow(s[k].begin() + static_cast<std::ptrdiff_t>(k), s[k].end());
      for (std::size_t i = k + 1; i < n; ++i) {
        Rational lik = pivotRow[i - k] / piv;
        l[i][k] = lik;
        if (lik == 0) continue;
        for (std::size_t j = k + 1; j <= i; ++j) {
          s[i][j] -= lik * pivotRow[j - k];
          s[j][i] = s[i][j];
        }
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        s[i][k] = 0;
        s[k][i] = 0;
      }
      continue;
    }

    // every remaining diagonal entry is <= 0
    for (std::size_t i = k; i < n; ++i)
      if (s[i][i] < 0) {
        std::vector<Rational> u(n - k, Rational(0));
        u[i - k] = 1;
        return {false, liftWitness(k, u)};
      }

    // all remaining diagonals are exactly zero: PSD iff the whole block vanishes
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (s[i][j] != 0) {
          // 2x2 principal block [[0, c],[c, 0]] is indefinite:
          // u = t e_i + e_j gives u^T S u = 2 t c = -1 for t = -1/(2c)
          std::vector<Rational> u(n - k, Rational(0));
          u[i - k] = Rational(-1) / (2 * s[i][j]);
          u[j - k] = 1;
          return {false, liftWitness(k, u)};
        }
    break;
  }
  return {true, {}};
}

}  // namespace detail

/// Exact PSD decision over the rationals (LDL^T with diagonal pivoting on the
/// real symmetric embedding). Rank-deficient PSD matrices are accepted.
inline PsdVerdict<ExactField> psdCheckExact(const HermMatrix<ExactField>& m) {
  auto outcome = detail::ldltPsdRational(realSymmetricEmbedding(m));
  PsdVerdict<ExactField> v;
  v.isPsd = outcome.psd;
  if (!outcome.psd) {
    const std::size_t d = m.dim();
    std::vector<GaussianRational> z(d);
    for (std::size_t i = 0; i < d; ++i) z[i] = {outcome.witness[i], outcome.witness[i + d]};
    v.witness = std::move(z);
  }
  return v;
}

/// PSD to tolerance: isPsd iff eigMin(M) >= -tol. When tol is not supplied it
/// defaults to 1e-9 * (1 + maxAbsEntry), tracking the conditioning of large
/// moment matrices.
inline PsdVerdict<ApproxField> psdCheckApprox(const HermMatrix<ApproxField>& m,
                                              std::optional<double> tol = std::nullopt) {
  if (tol && *tol <= 0) throw std::invalid_argument("psdCheckApprox: tol must be positive");
  const double effTol = tol ? *tol : 1e-9 * (1.0 + m.maxAbsEntry());
  auto [lambda, vec] = eigMinWithVector(m);
  PsdVerdict<ApproxField> v;
  v.minEigenvalue = lambda;
  v.isPsd = lambda >= -effTol;
  if (!v.isPsd) v.witness = std::move(vec);
  return v;
}

/// Backend dispatch used by generic code.
template <ScalarField F>
inline PsdVerdict<F> psdCheck(const HermMatrix<F>& m, std::optional<double> tol = std::nullopt) {
  if constexpr (F::kExact) {
    (void)tol;
    return psdCheckExact(m);
  } else {
    return psdCheckApprox(m, tol);
  }
}

}  // namespace opmoment
