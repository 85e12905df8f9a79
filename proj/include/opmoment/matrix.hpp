#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "opmoment/fields.hpp"

namespace opmoment {

/// Dense complex matrix over a scalar field; row-major storage.
template <ScalarField F>
class Matrix {
 public:
  using Real = typename F::Real;
  using Complex = typename F::Complex;

  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Complex{}) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = F::makeComplex(F::fromLong(1), F::fromLong(0));
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Complex& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Matrix& operator+=(const Matrix& o) {
    requireSameShape(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    requireSameShape(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  Matrix scaled(const Complex& c) const {
    Matrix out(*this);
    for (auto& v : out.a_) v = v * c;
    return out;
  }
  Matrix scaledReal(const Real& r) const { return scaled(F::makeComplex(r, F::fromLong(0))); }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix multiply: shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto& aik = a.at(i, k);
        if (F::isZero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out.at(i, j) += aik * b.at(k, j);
      }
    return out;
  }

  Matrix adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = conjugate(at(i, j));
    return out;
  }

  Complex trace() const {
    if (rows_ != cols_) throw std::invalid_argument("trace of non-square matrix");
    Complex t{};
    for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
    return t;
  }

  bool isZero() const {
    for (const auto& v : a_)
      if (!F::isZero(v)) return false;
    return true;
  }

  double maxAbsEntry() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, F::asDoubleComplexAbs(v));
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  void requireSameShape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("Matrix shape mismatch");
  }

  std::size_t rows_, cols_;
  std::vector<Complex> a_;
};

/// d x d complex Hermitian matrix. Construction validates the symmetry
/// (exactly in the exact backend, to 1e-12 * maxAbsEntry in the approx one)
/// and stores the symmetrized value.
template <ScalarField F>
class HermMatrix {
 public:
  using Real = typename F::Real;
  using Complex = typename F::Complex;

  static HermMatrix fromMatrix(Matrix<F> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("HermMatrix: matrix not square");
    const std::size_t d = m.rows();
    if constexpr (F::kExact) {
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j)
          if (m.at(i, j) != conjugate(m.at(j, i)))
            throw std::invalid_argument("HermMatrix: symmetry defect at (" + std::to_string(i) +
                                        "," + std::to_string(j) + "): entries are not conjugate");
    } else {
      const double scale = m.maxAbsEntry();
      double defect = 0.0;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
          auto diff = m.at(i, j) - conjugate(m.at(j, i));
          defect = std::max(defect, F::asDoubleComplexAbs(diff));
        }
      if (defect > 1e-12 * scale)
        throw std::invalid_argument("HermMatrix: symmetry defect " + std::to_string(defect) +
                                    " exceeds tolerance " + std::to_string(1e-12 * scale));
      // symmetrize so downstream embeddings are exactly symmetric
      for (std::size_t i = 0; i < d; ++i) {
        m.at(i, i) = F::makeComplex(F::realPart(m.at(i, i)), F::fromLong(0));
        for (std::size_t j = i + 1; j < d; ++j) {
          auto avg = (m.at(i, j) + conjugate(m.at(j, i))) * F::makeComplex(F::fromRatio(1, 2), F::fromLong(0));
          m.at(i, j) = avg;
          m.at(j, i) = conjugate(avg);
        }
      }
    }
    return HermMatrix(std::move(m));
  }

  static HermMatrix zero(std::size_t d) { return HermMatrix(Matrix<F>(d, d)); }
  static HermMatrix identity(std::size_t d) { return HermMatrix(Matrix<F>::identity(d)); }

  static HermMatrix diagReal(const std::vector<Real>& diag) {
    Matrix<F> m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i)
      m.at(i, i) = F::makeComplex(diag[i], F::fromLong(0));
    return HermMatrix(std::move(m));
  }

  std::size_t dim() const { return m_.rows(); }
  const Complex& entry(std::size_t i, std::size_t j) const { return m_.at(i, j); }
  const Matrix<F>& asMatrix() const { return m_; }

  bool isZero() const { return m_.isZero(); }
  double maxAbsEntry() const { return m_.maxAbsEntry(); }

  HermMatrix& operator+=(const HermMatrix& o) {
    m_ += o.m_;
    return *this;
  }
  HermMatrix& operator-=(const HermMatrix& o) {
    m_ -= o.m_;
    return *this;
  }
  friend HermMatrix operator+(HermMatrix a, const HermMatrix& b) { return a += b; }
  friend HermMatrix operator-(HermMatrix a, const HermMatrix& b) { return a -= b; }
  HermMatrix operator-() const { return HermMatrix(Matrix<F>(m_).scaledReal(F::fromLong(-1))); }

  /// Real scalar multiple (Herm_d is a real vector space).
  friend HermMatrix operator*(const Real& r, const HermMatrix& a) {
    return HermMatrix(a.m_.scaledReal(r));
  }

  friend bool operator==(const HermMatrix& a, const HermMatrix& b) { return a.m_ == b.m_; }
  friend bool operator!=(const HermMatrix& a, const HermMatrix& b) { return !(a == b); }

 private:
  explicit HermMatrix(Matrix<F> m) : m_(std::move(m)) {}
  Matrix<F> m_;
};

/// tr(A B) for Hermitian A, B — always real.
template <ScalarField F>
inline typename F::Real innerTrace(const HermMatrix<F>& a, const HermMatrix<F>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("innerTrace: dimension mismatch");
  typename F::Complex t{};
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) t += a.entry(i, j) * b.entry(j, i);
  return F::realPart(t);
}

/// S A S* (congruence); Hermitian for any S.
template <ScalarField F>
inline HermMatrix<F> conjugateBy(const Matrix<F>& s, const HermMatrix<F>& a) {
  return HermMatrix<F>::fromMatrix(s * a.asMatrix() * s.adjoint());
}

/// <M v, v> = v* M v, real for Hermitian M.
template <ScalarField F>
inline typename F::Real quadraticForm(const HermMatrix<F>& m,
                                      const std::vector<typename F::Complex>& v) {
  if (v.size() != m.dim()) throw std::invalid_argument("quadraticForm: dimension mismatch");
  typename F::Complex acc{};
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) acc += conjugate(v[i]) * m.entry(i, j) * v[j];
  return F::realPart(acc);
}

// ---------------------------------------------------------------------------
// Orthogonal Hermitian basis of Herm_d with integer entries, indexed k = i*d + j:
//   (i,i) -> E_ii                   (norm^2 = 1)
//   (i,j), i<j -> E_ij + E_ji       (norm^2 = 2)
//   (i,j), i>j -> i(E_ji - E_ij)... entries: (j,i) = +i, (i,j) = -i  (norm^2 = 2)
// For d = 2 this is the standard basis H11, H12, H21, H22 up to the 1/sqrt(2)
// normalization, which the rational backend cannot represent.
// ---------------------------------------------------------------------------

inline std::size_t hermBasisSize(std::size_t d) { return d * d; }

template <ScalarField F>
inline HermMatrix<F> hermBasisElement(std::size_t d, std::size_t k) {
  if (k >= d * d) throw std::invalid_argument("hermBasisElement: index out of range");
  const std::size_t i = k / d, j = k % d;
  Matrix<F> m(d, d);
  const auto one = F::fromLong(1);
  const auto zero = F::fromLong(0);
  if (i == j) {
    m.at(i, i) = F::makeComplex(one, zero);
  } else if (i < j) {
    m.at(i, j) = F::makeComplex(one, zero);
    m.at(j, i) = F::makeComplex(one, zero);
  } else {
    m.at(j, i) = F::makeComplex(zero, one);
    m.at(i, j) = F::makeComplex(zero, F::fromLong(-1));
  }
  return HermMatrix<F>::fromMatrix(std::move(m));
}

inline long hermBasisNormSq(std::size_t d, std::size_t k) {
  const std::size_t i = k / d, j = k % d;
  return i == j ? 1 : 2;
}

/// Real coordinates of A in the orthogonal basis: A = sum_k coeff[k] * B_k.
template <ScalarField F>
inline std::vector<typename F::Real> expandInBasis(const HermMatrix<F>& a) {
  const std::size_t d = a.dim();
  std::vector<typename F::Real> out;
  out.reserve(d * d);
  for (std::size_t k = 0; k < d * d; ++k) {
    auto b = hermBasisElement<F>(d, k);
    auto c = innerTrace(a, b);
    long n2 = hermBasisNormSq(d, k);
    if (n2 != 1) c = c / F::fromLong(n2);
    out.push_back(std::move(c));
  }
  return out;
}

template <ScalarField F>
inline HermMatrix<ApproxField> toApproxHerm(const HermMatrix<F>& m) {
  if constexpr (!F::kExact) {
    return m;
  } else {
    Matrix<ApproxField> out(m.dim(), m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
      for (std::size_t j = 0; j < m.dim(); ++j) out.at(i, j) = toApproxComplex(m.entry(i, j));
    return HermMatrix<ApproxField>::fromMatrix(std::move(out));
  }
}

template <ScalarField F>
inline std::string formatComplex(const typename F::Complex& z);

template <>
inline std::string formatComplex<ExactField>(const GaussianRational& z) {
  if (z.im == 0) return rationalToString(z.re);
  std::string s = rationalToString(z.re);
  s += (z.im < 0 ? "-" : "+");
  Rational a = abs(z.im);
  s += rationalToString(a) + "i";
  return s;
}

template <>
inline std::string formatComplex<ApproxField>(const std::complex<double>& z) {
  std::ostringstream os;
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

template <ScalarField F>
inline std::string formatMatrix(const HermMatrix<F>& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j) s += ", ";
      s += formatComplex<F>(m.entry(i, j));
    }
  }
  return s + "]";
}

}  // namespace opmoment
