#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "opmoment/matrix.hpp"
#include "opmoment/measures.hpp"
#include "opmoment/multiindex.hpp"
#include "opmoment/polynomial.hpp"
#include "opmoment/psd.hpp"
#include "opmoment/region.hpp"

namespace opmoment {

/// Truncated operator moment sequence (S_alpha)_{|alpha| <= order}; entries are
/// Hermitian and absent entries read as zero.
template <ScalarField F>
class OperatorSequence {
 public:
  using EntryMap = std::map<MultiIndex, HermMatrix<F>, GradedLexLess>;

  OperatorSequence(int nvars, std::size_t dim, int order)
      : nvars_(nvars), dim_(dim), order_(order) {
    if (nvars < 0 || dim == 0 || order < 0) throw std::invalid_argument("OperatorSequence: bad shape");
  }

  static OperatorSequence fromFn(
      int nvars, std::size_t dim, int order,
      const std::function<HermMatrix<F>(const MultiIndex&)>& entryOf) {
    OperatorSequence s(nvars, dim, order);
    for (const auto& alpha : monomialsUpTo(static_cast<std::size_t>(nvars), order))
      s.setEntry(alpha, entryOf(alpha));
    return s;
  }

  int nvars() const { return nvars_; }
  std::size_t dim() const { return dim_; }
  int order() const { return order_; }
  const EntryMap& storedEntries() const { return entries_; }

  void setEntry(const MultiIndex& alpha, HermMatrix<F> value) {
    if (alpha.size() != static_cast<std::size_t>(nvars_))
      throw std::invalid_argument("OperatorSequence::setEntry: index arity mismatch");
    if (alpha.totalDegree() > static_cast<std::uint32_t>(order_))
      throw std::invalid_argument("OperatorSequence::setEntry: degree exceeds order");
    if (value.dim() != dim_)
      throw std::invalid_argument("OperatorSequence::setEntry: entry dim mismatch");
    entries_.erase(alpha);
    if (!value.isZero()) entries_.emplace(alpha, std::move(value));
  }

  HermMatrix<F> entry(const MultiIndex& alpha) const {
    if (alpha.totalDegree() > static_cast<std::uint32_t>(order_))
      throw std::invalid_argument("OperatorSequence::entry: degree " +
                                  std::to_string(alpha.totalDegree()) + " exceeds order " +
                                  std::to_string(order_));
    auto it = entries_.find(alpha);
    return it == entries_.end() ? HermMatrix<F>::zero(dim_) : it->second;
  }

  friend bool operator==(const OperatorSequence& a, const OperatorSequence& b) {
    return a.nvars_ == b.nvars_ && a.dim_ == b.dim_ && a.order_ == b.order_ &&
           a.entries_ == b.entries_;
  }
  friend bool operator!=(const OperatorSequence& a, const OperatorSequence& b) { return !(a == b); }

 private:
  int nvars_;
  std::size_t dim_;
  int order_;
  EntryMap entries_;
};

/// Block moment matrix at level D: block (alpha, beta) = S_{alpha+beta} over
/// monomials |alpha|, |beta| <= D in graded-lex order; size dim * C(n+D, n).
template <ScalarField F>
inline HermMatrix<F> momentMatrix(const OperatorSequence<F>& s, int level) {
  if (level < 0 || 2 * level > s.order())
    throw std::invalid_argument("momentMatrix: sequence order " + std::to_string(s.order()) +
                                " insufficient for level " + std::to_string(level));
  const auto monos = monomialsUpTo(static_cast<std::size_t>(s.nvars()), level);
  const std::size_t d = s.dim();
  Matrix<F> big(monos.size() * d, monos.size() * d);
  for (std::size_t a = 0; a < monos.size(); ++a)
    for (std::size_t b = a; b < monos.size(); ++b) {
      HermMatrix<F> block = s.entry(monos[a] + monos[b]);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          big.at(a * d + i, b * d + j) = block.entry(i, j);
          if (a != b) big.at(b * d + i, a * d + j) = block.entry(i, j);
        }
    }
  return HermMatrix<F>::fromMatrix(std::move(big));
}

/// Localizing matrix for a real constraint polynomial g: block (alpha, beta) =
/// sum_gamma g_gamma S_{alpha+beta+gamma}.
template <ScalarField F>
inline HermMatrix<F> localizingMatrix(const OperatorSequence<F>& s, const ScalarPolynomial<F>& g,
                                      int level) {
  if (g.nvars() != s.nvars()) throw std::invalid_argument("localizingMatrix: arity mismatch");
  const int degG = g.isZero() ? 0 : g.degree();
  if (level < 0 || 2 * level + degG > s.order())
    throw std::invalid_argument("localizingMatrix: sequence order " + std::to_string(s.order()) +
                                " insufficient for level " + std::to_string(level) +
                                " with deg(g) = " + std::to_string(degG));
  const auto monos = monomialsUpTo(static_cast<std::size_t>(s.nvars()), level);
  const std::size_t d = s.dim();
  Matrix<F> big(monos.size() * d, monos.size() * d);
  for (std::size_t a = 0; a < monos.size(); ++a)
    for (std::size_t b = a; b < monos.size(); ++b) {
      HermMatrix<F> block = HermMatrix<F>::zero(d);
      for (const auto& [gamma, coeff] : g.terms())
        block += coeff * s.entry(monos[a] + monos[b] + gamma);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          big.at(a * d + i, b * d + j) = block.entry(i, j);
          if (a != b) big.at(b * d + i, a * d + j) = block.entry(i, j);
        }
    }
  return HermMatrix<F>::fromMatrix(std::move(big));
}

/// Compression of an operator sequence along a vector: s_alpha = <S_alpha a, a>,
/// returned as a dim-1 sequence so the scalar Hankel tests reuse momentMatrix.
template <ScalarField F>
inline OperatorSequence<F> compressSequence(const OperatorSequence<F>& s,
                                            const std::vector<typename F::Complex>& a) {
  if (a.size() != s.dim()) throw std::invalid_argument("compressSequence: probe dimension mismatch");
  return OperatorSequence<F>::fromFn(s.nvars(), 1, s.order(), [&](const MultiIndex& alpha) {
    std::vector<typename F::Real> v{quadraticForm(s.entry(alpha), a)};
    return HermMatrix<F>::diagReal(v);
  });
}

enum class MomentTestMode { block, compression };

inline std::string momentTestModeName(MomentTestMode m) {
  return m == MomentTestMode::block ? "block" : "compression";
}

template <ScalarField F>
struct MomentCheckItem {
  std::string label;
  PsdVerdict<F> verdict;
};

/// Aggregate verdict of the truncated necessary conditions. A fail certifies
/// the sequence is not a truncated (local) K-moment sequence; a pass is
/// evidence only.
template <ScalarField F>
struct MomentVerdict {
  MomentTestMode mode = MomentTestMode::block;
  std::vector<MomentCheckItem<F>> items;
  bool pass = true;
  std::optional<std::string> failLabel;
};

/// Standard basis vectors, pairwise sums, and pairwise i-weighted sums.
template <ScalarField F>
inline std::vector<std::vector<typename F::Complex>> defaultCompressionProbes(std::size_t d) {
  using C = typename F::Complex;
  const auto zero = F::fromLong(0);
  const auto one = F::fromLong(1);
  std::vector<std::vector<C>> probes;
  auto basisVec = [&](std::size_t i) {
    std::vector<C> v(d, F::makeComplex(zero, zero));
    v[i] = F::makeComplex(one, zero);
    return v;
  };
  for (std::size_t i = 0; i < d; ++i) probes.push_back(basisVec(i));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      auto v = basisVec(i);
      v[j] = F::makeComplex(one, zero);
      probes.push_back(v);
      v[j] = F::makeComplex(zero, one);
      probes.push_back(v);
    }
  return probes;
}

namespace detail {

template <ScalarField F>
inline void appendPsdChecks(const OperatorSequence<F>& s, const RegionK<F>& region, int level,
                            const std::string& prefix, std::optional<double> tol,
                            std::vector<MomentCheckItem<F>>& items) {
  items.push_back({prefix + "moment(level=" + std::to_string(level) + ")",
                   psdCheck(momentMatrix(s, level), tol)});
  const auto constraints = region.constraintPolys();
  for (std::size_t gi = 0; gi < constraints.size(); ++gi) {
    const int degG = constraints[gi].degree();
    int gLevel = std::min(level, (s.order() - degG) / 2);
    if (gLevel < 0)
      throw std::invalid_argument("truncatedMomentTest: order too small for constraint degree " +
                                  std::to_string(degG));
    items.push_back({prefix + "localizing[g" + std::to_string(gi) +
                         "](level=" + std::to_string(gLevel) + ")",
                     psdCheck(localizingMatrix(s, constraints[gi], gLevel), tol)});
  }
}

}  // namespace detail

/// Necessary-condition test of the truncated operator K-moment property.
/// block mode: PSD of the block moment matrix and each localizing matrix.
/// compression mode: the same scalar tests on <S_alpha a, a> for each probe a.
template <ScalarField F>
inline MomentVerdict<F> truncatedMomentTest(
    const OperatorSequence<F>& s, const RegionK<F>& region, int level, MomentTestMode mode,
    std::vector<std::vector<typename F::Complex>> probes = {},
    std::optional<double> tol = std::nullopt) {
  if (region.nvars() != s.nvars())
    throw std::invalid_argument("truncatedMomentTest: region arity mismatch");
  MomentVerdict<F> verdict;
  verdict.mode = mode;
  if (mode == MomentTestMode::block) {
    detail::appendPsdChecks(s, region, level, "", tol, verdict.items);
  } else {
    if (probes.empty()) probes = defaultCompressionProbes<F>(s.dim());
    for (std::size_t pi = 0; pi < probes.size(); ++pi) {
      auto compressed = compressSequence(s, probes[pi]);
      detail::appendPsdChecks(compressed, region, level, "probe" + std::to_string(pi) + ":", tol,
                              verdict.items);
    }
  }
  for (const auto& item : verdict.items)
    if (!item.verdict.isPsd) {
      verdict.pass = false;
      verdict.failLabel = item.label;
      break;
    }
  return verdict;
}

/// Moments of the pushforward mu(. + y):
///   S'_beta = sum_{alpha ⪯ beta} binom(beta, alpha) (-y)^{beta-alpha} S_alpha.
template <ScalarField F>
inline OperatorSequence<F> shiftSequence(const OperatorSequence<F>& s,
                                         const std::vector<typename F::Real>& y) {
  if (y.size() != static_cast<std::size_t>(s.nvars()))
    throw std::invalid_argument("shiftSequence: offset arity mismatch");
  std::vector<typename F::Real> negY(y);
  for (auto& v : negY) v = -v;
  return OperatorSequence<F>::fromFn(s.nvars(), s.dim(), s.order(), [&](const MultiIndex& beta) {
    HermMatrix<F> acc = HermMatrix<F>::zero(s.dim());
    forEachSubIndex(beta, [&](const MultiIndex& alpha) {
      typename F::Real w = F::fromLong(static_cast<long>(binomialProduct(beta, alpha))) *
               evalMonomial<F>(beta.minus(alpha), negY);
      acc += w * s.entry(alpha);
    });
    return acc;
  });
}

template <ScalarField F>
inline OperatorSequence<F> sequenceFromMeasure(const AtomicOperatorMeasure<F>& mu, int order) {
  return OperatorSequence<F>::fromFn(mu.nvars(), mu.dim(), order, [&](const MultiIndex& alpha) {
    return integrateMonomial(mu, alpha);
  });
}

/// The explicit local-but-not-general moment sequence: univariate, dim 2,
///   S_0 = [[4,0],[0,1]], S_1 = [[0,2],[2,0]], S_2 = [[1,0],[0,4]],
///   S_{2k-1} = 0 and S_{2k} = 2^{(k+2)!} I for k >= 2.
/// Produces entries up to index 2*kMax; the guard keeps the big powers of two
/// at a sane memory footprint (kMax = 8 already stores 2^{10!}).
inline OperatorSequence<ExactField> bisgaardSequence(int kMax) {
  if (kMax < 0 || kMax > 8)
    throw std::invalid_argument("bisgaardSequence: kMax must be between 0 and 8");
  auto entryOf = [&](const MultiIndex& alpha) -> HermMatrix<ExactField> {
    const std::uint32_t k = alpha[0];
    Matrix<ExactField> m(2, 2);
    auto set = [&](std::size_t i, std::size_t j, Rational v) {
      m.at(i, j) = ExactField::makeComplex(std::move(v), Rational(0));
    };
    if (k == 0) {
      set(0, 0, Rational(4));
      set(1, 1, Rational(1));
    } else if (k == 1) {
      set(0, 1, Rational(2));
      set(1, 0, Rational(2));
    } else if (k == 2) {
      set(0, 0, Rational(1));
      set(1, 1, Rational(4));
    } else if (k % 2 == 0) {
      // a_m = 2^{(m+2)!} with m = k/2
      unsigned long fact = 1;
      for (unsigned long v = 2; v <= (k / 2) + 2; ++v) fact *= v;
      Rational a;
      mpz_ui_pow_ui(a.get_num_mpz_t(), 2UL, fact);
      set(0, 0, a);
      set(1, 1, a);
    }
    return HermMatrix<ExactField>::fromMatrix(std::move(m));
  };
  return OperatorSequence<ExactField>::fromFn(1, 2, 2 * kMax, entryOf);
}

}  // namespace opmoment
