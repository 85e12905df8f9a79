#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "opmoment/choi.hpp"
#include "opmoment/matrix.hpp"
#include "opmoment/multiindex.hpp"
#include "opmoment/polynomial.hpp"

namespace opmoment {

/// Degree-truncated linear operator on Herm_d ⊗ R[x_1..x_n], stored
/// extensionally as the images of the basis elements B_i ⊗ x^alpha for
/// |alpha| <= maxDeg. Zero images are not stored.
template <ScalarField F>
class PolyOperator {
 public:
  using ImageKey = std::pair<std::size_t, MultiIndex>;
  struct KeyLess {
    bool operator()(const ImageKey& a, const ImageKey& b) const {
      if (a.first != b.first) return a.first < b.first;
      return GradedLexLess{}(a.second, b.second);
    }
  };
  using ImageMap = std::map<ImageKey, MatrixPolynomial<F>, KeyLess>;

  static PolyOperator fromImageFn(
      int nvars, std::size_t dim, int maxDeg,
      const std::function<MatrixPolynomial<F>(std::size_t, const MultiIndex&)>& imageOf) {
    PolyOperator t(nvars, dim, maxDeg);
    for (std::size_t i = 0; i < hermBasisSize(dim); ++i)
      for (const auto& alpha : monomialsUpTo(static_cast<std::size_t>(nvars), maxDeg)) {
        MatrixPolynomial<F> img = imageOf(i, alpha);
        if (img.nvars() != nvars || img.dim() != dim)
          throw std::invalid_argument("PolyOperator: image shape mismatch");
        if (!img.isZero()) t.images_.emplace(ImageKey{i, alpha}, std::move(img));
      }
    return t;
  }

  static PolyOperator identity(int nvars, std::size_t dim, int maxDeg) {
    return fromImageFn(nvars, dim, maxDeg, [&](std::size_t i, const MultiIndex& alpha) {
      return MatrixPolynomial<F>::monomial(nvars, alpha, hermBasisElement<F>(dim, i));
    });
  }

  static PolyOperator negation(int nvars, std::size_t dim, int maxDeg) {
    return fromImageFn(nvars, dim, maxDeg, [&](std::size_t i, const MultiIndex& alpha) {
      return MatrixPolynomial<F>::monomial(nvars, alpha, -hermBasisElement<F>(dim, i));
    });
  }

  int nvars() const { return nvars_; }
  std::size_t dim() const { return dim_; }
  int maxDeg() const { return maxDeg_; }
  const ImageMap& images() const { return images_; }

  /// T(B_i ⊗ x^alpha).
  MatrixPolynomial<F> image(std::size_t basisIndex, const MultiIndex& alpha) const {
    if (basisIndex >= hermBasisSize(dim_))
      throw std::invalid_argument("PolyOperator::image: basis index out of range");
    if (alpha.totalDegree() > static_cast<std::uint32_t>(maxDeg_))
      throw std::invalid_argument("PolyOperator::image: monomial degree exceeds truncation");
    auto it = images_.find(ImageKey{basisIndex, alpha});
    return it == images_.end() ? MatrixPolynomial<F>(nvars_, dim_) : it->second;
  }

  /// Copy with one basis image replaced (negative controls are built this way).
  PolyOperator withImage(std::size_t basisIndex, MultiIndex alpha, MatrixPolynomial<F> img) const {
    PolyOperator t(*this);
    ImageKey key{basisIndex, std::move(alpha)};
    t.images_.erase(key);
    if (!img.isZero()) t.images_.emplace(std::move(key), std::move(img));
    return t;
  }

  friend bool operator==(const PolyOperator& a, const PolyOperator& b) {
    return a.nvars_ == b.nvars_ && a.dim_ == b.dim_ && a.maxDeg_ == b.maxDeg_ &&
           a.images_ == b.images_;
  }
  friend bool operator!=(const PolyOperator& a, const PolyOperator& b) { return !(a == b); }

 private:
  PolyOperator(int nvars, std::size_t dim, int maxDeg)
      : nvars_(nvars), dim_(dim), maxDeg_(maxDeg) {
    if (nvars < 0 || dim == 0 || maxDeg < 0) throw std::invalid_argument("PolyOperator: bad shape");
  }

  int nvars_;
  std::size_t dim_;
  int maxDeg_;
  ImageMap images_;
};

/// Linear extension of the stored basis images to an arbitrary polynomial.
template <ScalarField F>
inline MatrixPolynomial<F> applyOperator(const PolyOperator<F>& t, const MatrixPolynomial<F>& p) {
  if (p.nvars() != t.nvars() || p.dim() != t.dim())
    throw std::invalid_argument("applyOperator: shape mismatch");
  if (p.degree() > t.maxDeg())
    throw std::invalid_argument("applyOperator: polynomial degree exceeds operator truncation");
  MatrixPolynomial<F> out(t.nvars(), t.dim());
  for (const auto& [alpha, coeff] : p.terms()) {
    auto coords = expandInBasis(coeff);
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (F::isZeroReal(coords[i])) continue;
      out += t.image(i, alpha).scaledReal(coords[i]);
    }
  }
  return out;
}

/// The canonical data of an operator: Q_beta for |beta| <= maxDeg, each stored
/// through its values on the Hermitian basis.
template <ScalarField F>
class CanonicalRep {
 public:
  CanonicalRep(int nvars, std::size_t dim, int maxDeg)
      : nvars_(nvars), dim_(dim), maxDeg_(maxDeg) {}

  int nvars() const { return nvars_; }
  std::size_t dim() const { return dim_; }
  int maxDeg() const { return maxDeg_; }

  void set(MultiIndex beta, std::size_t basisIndex, MatrixPolynomial<F> value) {
    if (value.nvars() != nvars_ || value.dim() != dim_)
      throw std::invalid_argument("CanonicalRep::set: shape mismatch");
    auto key = std::make_pair(basisIndex, std::move(beta));
    q_.erase(key);
    if (!value.isZero()) q_.emplace(std::move(key), std::move(value));
  }

  /// Q_beta(B_i) as a polynomial.
  MatrixPolynomial<F> q(const MultiIndex& beta, std::size_t basisIndex) const {
    auto it = q_.find(std::make_pair(basisIndex, beta));
    return it == q_.end() ? MatrixPolynomial<F>(nvars_, dim_) : it->second;
  }

  /// Q_beta(A) for arbitrary Hermitian A, by expansion in the basis.
  MatrixPolynomial<F> qOnMatrix(const MultiIndex& beta, const HermMatrix<F>& a) const {
    if (a.dim() != dim_) throw std::invalid_argument("CanonicalRep::qOnMatrix: dim mismatch");
    MatrixPolynomial<F> out(nvars_, dim_);
    auto coords = expandInBasis(a);
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (F::isZeroReal(coords[i])) continue;
      out += q(beta, i).scaledReal(coords[i]);
    }
    return out;
  }

  /// Q_beta(A)(y).
  HermMatrix<F> qValue(const MultiIndex& beta, const HermMatrix<F>& a,
                       const std::vector<typename F::Real>& y) const {
    return eval(qOnMatrix(beta, a), y);
  }

  const std::map<std::pair<std::size_t, MultiIndex>, MatrixPolynomial<F>,
                 typename PolyOperator<F>::KeyLess>&
  entries() const {
    return q_;
  }

  friend bool operator==(const CanonicalRep& a, const CanonicalRep& b) {
    return a.nvars_ == b.nvars_ && a.dim_ == b.dim_ && a.maxDeg_ == b.maxDeg_ && a.q_ == b.q_;
  }
  friend bool operator!=(const CanonicalRep& a, const CanonicalRep& b) { return !(a == b); }

 private:
  int nvars_;
  std::size_t dim_;
  int maxDeg_;
  std::map<std::pair<std::size_t, MultiIndex>, MatrixPolynomial<F>,
           typename PolyOperator<F>::KeyLess>
      q_;
};

/// Binomial transform of the stored images:
///   Q_beta(v) = sum_{alpha ⪯ beta} binom(beta, alpha) (-1)^{|beta - alpha|} T(v ⊗ x^alpha) x^{beta - alpha}.
template <ScalarField F>
inline CanonicalRep<F> extractCanonical(const PolyOperator<F>& t) {
  CanonicalRep<F> rep(t.nvars(), t.dim(), t.maxDeg());
  const auto betas = monomialsUpTo(static_cast<std::size_t>(t.nvars()), t.maxDeg());
  for (std::size_t i = 0; i < hermBasisSize(t.dim()); ++i) {
    for (const auto& beta : betas) {
      MatrixPolynomial<F> acc(t.nvars(), t.dim());
      forEachSubIndex(beta, [&](const MultiIndex& alpha) {
        const MultiIndex rest = beta.minus(alpha);
        long sign = (rest.totalDegree() % 2 == 0) ? 1 : -1;
        auto w = F::fromLong(sign * static_cast<long>(binomialProduct(beta, alpha)));
        acc += t.image(i, alpha).mulMonomial(rest).scaledReal(w);
      });
      rep.set(beta, i, std::move(acc));
    }
  }
  return rep;
}

/// Inverse of the binomial transform:
///   T(B_i ⊗ x^beta) = sum_{alpha ⪯ beta} binom(beta, alpha) Q_alpha(B_i) x^{beta - alpha}.
template <ScalarField F>
inline PolyOperator<F> reconstruct(const CanonicalRep<F>& rep) {
  return PolyOperator<F>::fromImageFn(
      rep.nvars(), rep.dim(), rep.maxDeg(), [&](std::size_t i, const MultiIndex& beta) {
        MatrixPolynomial<F> acc(rep.nvars(), rep.dim());
        forEachSubIndex(beta, [&](const MultiIndex& alpha) {
          auto w = F::fromLong(static_cast<long>(binomialProduct(beta, alpha)));
          acc += rep.q(alpha, i).mulMonomial(beta.minus(alpha)).scaledReal(w);
        });
        return acc;
      });
}

/// The worked shift operator: T(A ⊗ x^k) = Phi(A) ⊗ (x+y)^k, univariate, with
/// Phi provided as a Choi matrix. Its canonical data are Q_m(A) = y^m Phi(A).
template <ScalarField F>
inline PolyOperator<F> shiftExampleOperator(const HermMatrix<F>& phiChoi,
                                            const typename F::Real& y, int maxDeg) {
  const std::size_t d = choiSideDim(phiChoi.dim());
  return PolyOperator<F>::fromImageFn(
      1, d, maxDeg, [&](std::size_t i, const MultiIndex& alpha) {
        HermMatrix<F> img = applyChoiMap(phiChoi, hermBasisElement<F>(d, i));
        // (x + y)^k expanded binomially
        MatrixPolynomial<F> out(1, d);
        const std::uint32_t k = alpha[0];
        for (std::uint32_t j = 0; j <= k; ++j) {
          typename F::Real w = F::fromLong(static_cast<long>(binomialUint(k, j))) * F::pow(y, k - j);
          out.addTerm(MultiIndex{j}, w * img);
        }
        return out;
      });
}

}  // namespace opmoment
