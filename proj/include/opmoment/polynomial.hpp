#pragma once

#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "opmoment/fields.hpp"
#include "opmoment/matrix.hpp"
#include "opmoment/multiindex.hpp"

namespace opmoment {

/// Degree reported for the zero polynomial (stands in for -infinity).
inline constexpr int kZeroPolyDegree = std::numeric_limits<int>::min();

template <ScalarField F>
inline typename F::Real evalMonomial(const MultiIndex& alpha,
                                     const std::vector<typename F::Real>& x) {
  if (alpha.size() != x.size()) throw std::invalid_argument("evalMonomial: dimension mismatch");
  typename F::Real v = F::fromLong(1);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (alpha[i] > 0) v = v * F::pow(x[i], alpha[i]);
  return v;
}

/// Polynomial with real scalar coefficients, canonical form (no zero terms).
template <ScalarField F>
class ScalarPolynomial {
 public:
  using Real = typename F::Real;
  using TermMap = std::map<MultiIndex, Real, GradedLexLess>;

  explicit ScalarPolynomial(int nvars) : nvars_(nvars) {
    if (nvars < 0) throw std::invalid_argument("ScalarPolynomial: negative arity");
  }

  static ScalarPolynomial constant(int nvars, Real c) {
    ScalarPolynomial p(nvars);
    p.addTerm(MultiIndex(static_cast<std::size_t>(nvars)), std::move(c));
    return p;
  }
  static ScalarPolynomial monomial(int nvars, MultiIndex alpha, Real c) {
    ScalarPolynomial p(nvars);
    p.addTerm(std::move(alpha), std::move(c));
    return p;
  }
  /// x_axis as a polynomial.
  static ScalarPolynomial variable(int nvars, std::size_t axis) {
    return monomial(nvars, MultiIndex::unit(static_cast<std::size_t>(nvars), axis), F::fromLong(1));
  }

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  int degree() const {
    if (terms_.empty()) return kZeroPolyDegree;
    return static_cast<int>(terms_.rbegin()->first.totalDegree());
  }

  Real coefficient(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? F::fromLong(0) : it->second;
  }

  void addTerm(MultiIndex alpha, Real c) {
    if (alpha.size() != static_cast<std::size_t>(nvars_))
      throw std::invalid_argument("ScalarPolynomial: exponent arity mismatch");
    auto it = terms_.find(alpha);
    if (it == terms_.end()) {
      if (!F::isZeroReal(c)) terms_.emplace(std::move(alpha), std::move(c));
      return;
    }
    it->second = it->second + c;
    if (F::isZeroReal(it->second)) terms_.erase(it);
  }

  ScalarPolynomial& operator+=(const ScalarPolynomial& o) {
    requireSameArity(o);
    for (const auto& [a, c] : o.terms_) addTerm(a, c);
    return *this;
  }
  friend ScalarPolynomial operator+(ScalarPolynomial a, const ScalarPolynomial& b) { return a += b; }

  ScalarPolynomial scaled(const Real& r) const {
    ScalarPolynomial out(nvars_);
    if (F::isZeroReal(r)) return out;
    for (const auto& [a, c] : terms_) out.addTerm(a, c * r);
    return out;
  }
  friend ScalarPolynomial operator-(const ScalarPolynomial& a, const ScalarPolynomial& b) {
    ScalarPolynomial out(a);
    out += b.scaled(F::fromLong(-1));
    return out;
  }

  friend ScalarPolynomial operator*(const ScalarPolynomial& a, const ScalarPolynomial& b) {
    a.requireSameArity(b);
    ScalarPolynomial out(a.nvars_);
    for (const auto& [al, ca] : a.terms_)
      for (const auto& [be, cb] : b.terms_) out.addTerm(al + be, ca * cb);
    return out;
  }

  Real eval(const std::vector<Real>& x) const {
    Real acc = F::fromLong(0);
    for (const auto& [a, c] : terms_) acc = acc + c * evalMonomial<F>(a, x);
    return acc;
  }

  friend bool operator==(const ScalarPolynomial& a, const ScalarPolynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const ScalarPolynomial& a, const ScalarPolynomial& b) { return !(a == b); }

 private:
  void requireSameArity(const ScalarPolynomial& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("ScalarPolynomial arity mismatch");
  }

  int nvars_;
  TermMap terms_;
};

/// Hermitian-matrix-valued polynomial p = sum_alpha p_alpha x^alpha, stored as a
/// finitely supported map in graded-lex order with no zero coefficients.
template <ScalarField F>
class MatrixPolynomial {
 public:
  using Real = typename F::Real;
  using TermMap = std::map<MultiIndex, HermMatrix<F>, GradedLexLess>;

  MatrixPolynomial(int nvars, std::size_t dim) : nvars_(nvars), dim_(dim) {
    if (nvars < 0) throw std::invalid_argument("MatrixPolynomial: negative arity");
    if (dim == 0) throw std::invalid_argument("MatrixPolynomial: zero dimension");
  }

  static MatrixPolynomial constant(int nvars, HermMatrix<F> a) {
    MatrixPolynomial p(nvars, a.dim());
    p.addTerm(MultiIndex(static_cast<std::size_t>(nvars)), std::move(a));
    return p;
  }
  static MatrixPolynomial monomial(int nvars, MultiIndex alpha, HermMatrix<F> a) {
    MatrixPolynomial p(nvars, a.dim());
    p.addTerm(std::move(alpha), std::move(a));
    return p;
  }

  int nvars() const { return nvars_; }
  std::size_t dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  int degree() const {
    if (terms_.empty()) return kZeroPolyDegree;
    return static_cast<int>(terms_.rbegin()->first.totalDegree());
  }

  HermMatrix<F> coefficient(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? HermMatrix<F>::zero(dim_) : it->second;
  }

  void addTerm(MultiIndex alpha, HermMatrix<F> a) {
    if (alpha.size() != static_cast<std::size_t>(nvars_))
      throw std::invalid_argument("MatrixPolynomial: exponent arity mismatch");
    if (a.dim() != dim_) throw std::invalid_argument("MatrixPolynomial: coefficient dim mismatch");
    auto it = terms_.find(alpha);
    if (it == terms_.end()) {
      if (!a.isZero()) terms_.emplace(std::move(alpha), std::move(a));
      return;
    }
    it->second += a;
    if (it->second.isZero()) terms_.erase(it);
  }

  MatrixPolynomial& operator+=(const MatrixPolynomial& o) {
    requireCompatible(o);
    for (const auto& [a, c] : o.terms_) addTerm(a, c);
    return *this;
  }
  friend MatrixPolynomial operator+(MatrixPolynomial a, const MatrixPolynomial& b) { return a += b; }

  MatrixPolynomial scaledReal(const Real& r) const {
    MatrixPolynomial out(nvars_, dim_);
    if (F::isZeroReal(r)) return out;
    for (const auto& [a, c] : terms_) out.addTerm(a, r * c);
    return out;
  }
  friend MatrixPolynomial operator-(const MatrixPolynomial& a, const MatrixPolynomial& b) {
    MatrixPolynomial out(a);
    out += b.scaledReal(F::fromLong(-1));
    return out;
  }

  /// Multiply by the monomial x^alpha (exponent shift).
  MatrixPolynomial mulMonomial(const MultiIndex& alpha) const {
    MatrixPolynomial out(nvars_, dim_);
    for (const auto& [a, c] : terms_) out.terms_.emplace(a + alpha, c);
    return out;
  }

  /// Multiply by a real scalar polynomial.
  friend MatrixPolynomial operator*(const ScalarPolynomial<F>& g, const MatrixPolynomial& p) {
    if (g.nvars() != p.nvars_) throw std::invalid_argument("poly product: arity mismatch");
    MatrixPolynomial out(p.nvars_, p.dim_);
    for (const auto& [ga, gc] : g.terms())
      for (const auto& [pa, pc] : p.terms_) out.addTerm(ga + pa, gc * pc);
    return out;
  }

  friend bool operator==(const MatrixPolynomial& a, const MatrixPolynomial& b) {
    return a.nvars_ == b.nvars_ && a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MatrixPolynomial& a, const MatrixPolynomial& b) { return !(a == b); }

 private:
  void requireCompatible(const MatrixPolynomial& o) const {
    if (nvars_ != o.nvars_ || dim_ != o.dim_)
      throw std::invalid_argument("MatrixPolynomial shape mismatch");
  }

  int nvars_;
  std::size_t dim_;
  TermMap terms_;
};

/// p(x) = sum_alpha p_alpha x^alpha by direct monomial evaluation.
template <ScalarField F>
inline HermMatrix<F> eval(const MatrixPolynomial<F>& p, const std::vector<typename F::Real>& x) {
  if (x.size() != static_cast<std::size_t>(p.nvars()))
    throw std::invalid_argument("eval: point dimension mismatch");
  HermMatrix<F> acc = HermMatrix<F>::zero(p.dim());
  for (const auto& [alpha, coeff] : p.terms()) acc += evalMonomial<F>(alpha, x) * coeff;
  return acc;
}

/// Partial derivative d^alpha p: coefficient of x^gamma is p_{gamma+alpha} * prod (gamma_i+alpha_i)!/gamma_i!.
template <ScalarField F>
inline MatrixPolynomial<F> derivative(const MatrixPolynomial<F>& p, const MultiIndex& alpha) {
  if (alpha.size() != static_cast<std::size_t>(p.nvars()))
    throw std::invalid_argument("derivative: index arity mismatch");
  MatrixPolynomial<F> out(p.nvars(), p.dim());
  for (const auto& [beta, coeff] : p.terms()) {
    if (!alpha.leq(beta)) continue;
    MultiIndex gamma = beta.minus(alpha);
    auto factor = F::fromLong(static_cast<long>(derivativeFactor(gamma, alpha)));
    out.addTerm(std::move(gamma), factor * coeff);
  }
  return out;
}

/// q with q(x) = p(x + y), by binomial expansion of every monomial.
template <ScalarField F>
inline MatrixPolynomial<F> shiftArg(const MatrixPolynomial<F>& p,
                                    const std::vector<typename F::Real>& y) {
  if (y.size() != static_cast<std::size_t>(p.nvars()))
    throw std::invalid_argument("shiftArg: shift dimension mismatch");
  MatrixPolynomial<F> out(p.nvars(), p.dim());
  for (const auto& [beta, coeff] : p.terms()) {
    forEachSubIndex(beta, [&](const MultiIndex& alpha) {
      typename F::Real w = F::fromLong(static_cast<long>(binomialProduct(beta, alpha))) *
               evalMonomial<F>(beta.minus(alpha), y);
      out.addTerm(alpha, w * coeff);
    });
  }
  return out;
}

template <ScalarField F>
inline ScalarPolynomial<F> shiftArg(const ScalarPolynomial<F>& p,
                                    const std::vector<typename F::Real>& y) {
  if (y.size() != static_cast<std::size_t>(p.nvars()))
    throw std::invalid_argument("shiftArg: shift dimension mismatch");
  ScalarPolynomial<F> out(p.nvars());
  for (const auto& [beta, coeff] : p.terms()) {
    forEachSubIndex(beta, [&](const MultiIndex& alpha) {
      typename F::Real w = F::fromLong(static_cast<long>(binomialProduct(beta, alpha))) *
               evalMonomial<F>(beta.minus(alpha), y);
      out.addTerm(alpha, w * coeff);
    });
  }
  return out;
}

/// Rectangular matrix polynomial used as a Gram factor.
template <ScalarField F>
struct RectMatrixPoly {
  int nvars;
  std::size_t rows, cols;
  std::map<MultiIndex, Matrix<F>, GradedLexLess> terms;
};

/// G(x)* G(x); the result is Hermitian-coefficient by construction.
template <ScalarField F>
inline MatrixPolynomial<F> gramSquare(const RectMatrixPoly<F>& g) {
  MatrixPolynomial<F> out(g.nvars, g.cols);
  std::map<MultiIndex, Matrix<F>, GradedLexLess> acc;
  for (const auto& [al, ma] : g.terms)
    for (const auto& [be, mb] : g.terms) {
      Matrix<F> prod = ma.adjoint() * mb;
      auto key = al + be;
      auto it = acc.find(key);
      if (it == acc.end())
        acc.emplace(std::move(key), std::move(prod));
      else
        it->second += prod;
    }
  for (auto& [alpha, m] : acc)
    if (!m.isZero()) out.addTerm(alpha, HermMatrix<F>::fromMatrix(std::move(m)));
  return out;
}

template <ScalarField F>
inline MatrixPolynomial<ApproxField> toApproxPoly(const MatrixPolynomial<F>& p) {
  if constexpr (!F::kExact) {
    return p;
  } else {
    MatrixPolynomial<ApproxField> out(p.nvars(), p.dim());
    for (const auto& [a, c] : p.terms()) out.addTerm(a, toApproxHerm(c));
    return out;
  }
}

template <ScalarField F>
inline std::string formatPoly(const MatrixPolynomial<F>& p) {
  if (p.isZero()) return "0";
  std::string s;
  for (const auto& [a, c] : p.terms()) {
    if (!s.empty()) s += " + ";
    s += "x^" + a.toString() + " * " + formatMatrix<F>(c);
  }
  return s;
}

}  // namespace opmoment
