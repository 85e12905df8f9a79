#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace opmoment {

/// Exponent tuple alpha in N_0^n with the componentwise partial order.
class MultiIndex {
 public:
  explicit MultiIndex(std::size_t nvars) : exps_(nvars, 0) {}
  MultiIndex(std::initializer_list<std::uint32_t> exps) : exps_(exps) {}
  explicit MultiIndex(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  static MultiIndex unit(std::size_t nvars, std::size_t axis, std::uint32_t k = 1) {
    MultiIndex a(nvars);
    if (axis >= nvars) throw std::invalid_argument("MultiIndex::unit: axis out of range");
    a.exps_[axis] = k;
    return a;
  }

  std::size_t size() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  std::uint32_t totalDegree() const {
    return std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0});
  }

  bool isZero() const {
    for (auto e : exps_)
      if (e != 0) return false;
    return true;
  }

  /// alpha <= beta componentwise (the partial order written alpha "precedes" beta).
  bool leq(const MultiIndex& beta) const {
    requireSameArity(beta);
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > beta.exps_[i]) return false;
    return true;
  }

  MultiIndex operator+(const MultiIndex& o) const {
    requireSameArity(o);
    MultiIndex out(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] += o.exps_[i];
    return out;
  }

  /// this − o, defined only when o ⪯ this.
  MultiIndex minus(const MultiIndex& o) const {
    requireSameArity(o);
    MultiIndex out(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (o.exps_[i] > exps_[i])
        throw std::invalid_argument("MultiIndex::minus: subtrahend not componentwise smaller");
      out.exps_[i] -= o.exps_[i];
    }
    return out;
  }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.exps_ == b.exps_; }
  friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }

  std::string toString() const {
    std::string s = "(";
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(exps_[i]);
    }
    return s + ")";
  }

 private:
  void requireSameArity(const MultiIndex& o) const {
    if (exps_.size() != o.exps_.size())
      throw std::invalid_argument("MultiIndex arity mismatch");
  }

  std::vector<std::uint32_t> exps_;
};

/// Total order: degree first, then lexicographic on exponents.
struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    std::uint32_t da = a.totalDegree(), db = b.totalDegree();
    if (da != db) return da < db;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return a.size() < b.size();
  }
};

inline std::uint64_t binomialUint(std::uint32_t n, std::uint32_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint32_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

/// binom(beta, alpha) componentwise; requires alpha ⪯ beta.
inline std::uint64_t binomialProduct(const MultiIndex& beta, const MultiIndex& alpha) {
  if (!alpha.leq(beta))
    throw std::invalid_argument("binomialProduct: binom(beta, alpha) needs alpha ⪯ beta");
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < beta.size(); ++i) r *= binomialUint(beta[i], alpha[i]);
  return r;
}

/// alpha! = prod alpha_i!.
inline std::uint64_t factorialProduct(const MultiIndex& alpha) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (std::uint32_t v = 2; v <= alpha[i]; ++v) r *= v;
  return r;
}

/// prod_i (gamma_i + alpha_i)! / gamma_i!  — the coefficient picked up by d^alpha x^(gamma+alpha).
inline std::uint64_t derivativeFactor(const MultiIndex& gamma, const MultiIndex& alpha) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < gamma.size(); ++i)
    for (std::uint32_t v = gamma[i] + 1; v <= gamma[i] + alpha[i]; ++v) r *= v;
  return r;
}

/// All multi-indices with |alpha| <= maxDeg, ascending graded-lex.
inline std::vector<MultiIndex> monomialsUpTo(std::size_t nvars, int maxDeg) {
  std::vector<MultiIndex> out;
  if (maxDeg < 0) return out;
  std::vector<std::uint32_t> cur(nvars, 0);
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t pos, std::uint32_t left) {
    if (pos + 1 == nvars) {
      cur[pos] = left;
      out.emplace_back(cur);
      return;
    }
    for (std::uint32_t e = 0; e <= left; ++e) {
      cur[pos] = e;
      rec(pos + 1, left - e);
    }
  };
  if (nvars == 0) {
    out.emplace_back(cur);
    return out;
  }
  for (std::uint32_t d = 0; d <= static_cast<std::uint32_t>(maxDeg); ++d) rec(0, d);
  return out;
}

/// Visit every alpha ⪯ beta (product enumeration, lexicographic).
template <class Fn>
inline void forEachSubIndex(const MultiIndex& beta, Fn&& fn) {
  std::vector<std::uint32_t> cur(beta.size(), 0);
  while (true) {
    fn(MultiIndex(cur));
    std::size_t i = beta.size();
    while (i > 0) {
      --i;
      if (cur[i] < beta[i]) {
        ++cur[i];
        for (std::size_t j = i + 1; j < beta.size(); ++j) cur[j] = 0;
        break;
      }
      if (i == 0) return;
    }
    if (beta.size() == 0) return;
  }
}

}  // namespace opmoment
