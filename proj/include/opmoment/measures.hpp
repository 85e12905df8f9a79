#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "opmoment/choi.hpp"
#include "opmoment/matrix.hpp"
#include "opmoment/polynomial.hpp"
#include "opmoment/psd.hpp"
#include "opmoment/region.hpp"

namespace opmoment {

template <ScalarField F>
struct OperatorAtom {
  std::vector<typename F::Real> point;
  HermMatrix<F> weight;
};

/// Finitely atomic positive operator-valued measure: atoms (t_i, W_i) with
/// W_i PSD and t_i in the support region. mu(S) = sum over atoms in S.
template <ScalarField F>
class AtomicOperatorMeasure {
 public:
  AtomicOperatorMeasure(RegionK<F> support, std::vector<OperatorAtom<F>> atoms, std::size_t dim,
                        std::optional<double> tol = std::nullopt)
      : support_(std::move(support)), atoms_(std::move(atoms)), dim_(dim) {
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      const auto& atom = atoms_[i];
      if (atom.point.size() != static_cast<std::size_t>(support_.nvars()))
        throw std::invalid_argument("AtomicOperatorMeasure: atom " + std::to_string(i) +
                                    " point arity mismatch");
      if (atom.weight.dim() != dim_)
        throw std::invalid_argument("AtomicOperatorMeasure: atom " + std::to_string(i) +
                                    " weight dim mismatch");
      if (!support_.contains(atom.point))
        throw std::invalid_argument("AtomicOperatorMeasure: atom " + std::to_string(i) +
                                    " lies outside the support region");
      if (!psdCheck(atom.weight, tol).isPsd)
        throw std::invalid_argument("AtomicOperatorMeasure: atom " + std::to_string(i) +
                                    " weight is not PSD");
    }
  }

  const RegionK<F>& support() const { return support_; }
  const std::vector<OperatorAtom<F>>& atoms() const { return atoms_; }
  std::size_t dim() const { return dim_; }
  int nvars() const { return support_.nvars(); }

  HermMatrix<F> totalMass() const {
    HermMatrix<F> acc = HermMatrix<F>::zero(dim_);
    for (const auto& atom : atoms_) acc += atom.weight;
    return acc;
  }

  friend bool operator==(const AtomicOperatorMeasure& a, const AtomicOperatorMeasure& b) {
    if (a.support_ != b.support_ || a.dim_ != b.dim_ || a.atoms_.size() != b.atoms_.size())
      return false;
    for (std::size_t i = 0; i < a.atoms_.size(); ++i)
      if (a.atoms_[i].point != b.atoms_[i].point || a.atoms_[i].weight != b.atoms_[i].weight)
        return false;
    return true;
  }
  friend bool operator!=(const AtomicOperatorMeasure& a, const AtomicOperatorMeasure& b) {
    return !(a == b);
  }

 private:
  RegionK<F> support_;
  std::vector<OperatorAtom<F>> atoms_;
  std::size_t dim_;
};

template <ScalarField F>
struct MapAtom {
  std::vector<typename F::Real> point;
  HermMatrix<F> choi;  // d^2 x d^2, PSD (completely positive map)
};

/// Finitely atomic positive map-valued measure: each atom carries a completely
/// positive map as a PSD Choi matrix, so integrating positive polynomials
/// stays PSD.
template <ScalarField F>
class AtomicMapMeasure {
 public:
  AtomicMapMeasure(RegionK<F> support, std::vector<MapAtom<F>> atoms, std::size_t dim,
                   std::optional<double> tol = std::nullopt)
      : support_(std::move(support)), atoms_(std::move(atoms)), dim_(dim) {
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      const auto& atom = atoms_[i];
      if (atom.point.size() != static_cast<std::size_t>(support_.nvars()))
        throw std::invalid_argument("AtomicMapMeasure: atom " + std::to_string(i) +
                                    " point arity mismatch");
      if (atom.choi.dim() != dim_ * dim_)
        throw std::invalid_argument("AtomicMapMeasure: atom " + std::to_string(i) +
                                    " Choi dim mismatch");
      if (!support_.contains(atom.point))
        throw std::invalid_argument("AtomicMapMeasure: atom " + std::to_string(i) +
                                    " lies outside the support region");
      if (!psdCheck(atom.choi, tol).isPsd)
        throw std::invalid_argument("AtomicMapMeasure: atom " + std::to_string(i) +
                                    " Choi matrix is not PSD");
    }
  }

  const RegionK<F>& support() const { return support_; }
  const std::vector<MapAtom<F>>& atoms() const { return atoms_; }
  std::size_t dim() const { return dim_; }
  int nvars() const { return support_.nvars(); }

  friend bool operator==(const AtomicMapMeasure& a, const AtomicMapMeasure& b) {
    if (a.support_ != b.support_ || a.dim_ != b.dim_ || a.atoms_.size() != b.atoms_.size())
      return false;
    for (std::size_t i = 0; i < a.atoms_.size(); ++i)
      if (a.atoms_[i].point != b.atoms_[i].point || a.atoms_[i].choi != b.atoms_[i].choi)
        return false;
    return true;
  }
  friend bool operator!=(const AtomicMapMeasure& a, const AtomicMapMeasure& b) { return !(a == b); }

 private:
  RegionK<F> support_;
  std::vector<MapAtom<F>> atoms_;
  std::size_t dim_;
};

/// Classical finite measure with nonnegative masses.
template <ScalarField F>
class ScalarAtomicMeasure {
 public:
  struct Atom {
    std::vector<typename F::Real> point;
    typename F::Real mass;
  };

  explicit ScalarAtomicMeasure(std::vector<Atom> atoms, double tol = 1e-8)
      : atoms_(std::move(atoms)) {
    for (auto& atom : atoms_) {
      if (atom.mass < F::fromLong(0)) {
        if constexpr (F::kExact) {
          throw std::invalid_argument("ScalarAtomicMeasure: negative mass");
        } else {
          if (atom.mass < -tol) throw std::invalid_argument("ScalarAtomicMeasure: negative mass");
          atom.mass = 0.0;
        }
      }
    }
  }

  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  std::vector<Atom> atoms_;
};

/// S_alpha = integral of t^alpha dmu = sum_i t_i^alpha W_i.
template <ScalarField F>
inline HermMatrix<F> integrateMonomial(const AtomicOperatorMeasure<F>& mu, const MultiIndex& alpha) {
  if (alpha.size() != static_cast<std::size_t>(mu.nvars()))
    throw std::invalid_argument("integrateMonomial: index arity mismatch");
  HermMatrix<F> acc = HermMatrix<F>::zero(mu.dim());
  for (const auto& atom : mu.atoms()) acc += evalMonomial<F>(alpha, atom.point) * atom.weight;
  return acc;
}

/// Integral of a full operator polynomial against a map-valued measure:
/// sum_i Phi_i(p(t_i)). Independent of how p is decomposed into A_j p_j.
template <ScalarField F>
inline HermMatrix<F> integratePolyMapMeasure(const AtomicMapMeasure<F>& nu,
                                             const MatrixPolynomial<F>& p) {
  if (p.nvars() != nu.nvars() || p.dim() != nu.dim())
    throw std::invalid_argument("integratePolyMapMeasure: shape mismatch");
  HermMatrix<F> acc = HermMatrix<F>::zero(nu.dim());
  for (const auto& atom : nu.atoms()) acc += applyChoiMap(atom.choi, eval(p, atom.point));
  return acc;
}

/// Same integral evaluated through an explicit decomposition p = sum_j A_j p_j;
/// used to exercise representation independence.
template <ScalarField F>
inline HermMatrix<F> integrateDecomposition(
    const AtomicMapMeasure<F>& nu,
    const std::vector<std::pair<HermMatrix<F>, ScalarPolynomial<F>>>& terms) {
  HermMatrix<F> acc = HermMatrix<F>::zero(nu.dim());
  for (const auto& [a, poly] : terms) {
    if (a.dim() != nu.dim() || poly.nvars() != nu.nvars())
      throw std::invalid_argument("integrateDecomposition: shape mismatch");
    for (const auto& atom : nu.atoms())
      acc += poly.eval(atom.point) * applyChoiMap(atom.choi, a);
  }
  return acc;
}

namespace detail {
template <ScalarField F>
inline std::vector<typename F::Real> translatePoint(const std::vector<typename F::Real>& t,
                                                    const std::vector<typename F::Real>& y) {
  std::vector<typename F::Real> out(t);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] - y[i];
  return out;
}
}  // namespace detail

/// Pushforward under translation: atoms move t -> t - y, the support becomes
/// K - y, weights/maps are untouched.
template <ScalarField F>
inline AtomicOperatorMeasure<F> pushforwardShift(const AtomicOperatorMeasure<F>& mu,
                                                 const std::vector<typename F::Real>& y) {
  std::vector<OperatorAtom<F>> atoms;
  atoms.reserve(mu.atoms().size());
  for (const auto& atom : mu.atoms())
    atoms.push_back(OperatorAtom<F>{detail::translatePoint<F>(atom.point, y), atom.weight});
  return AtomicOperatorMeasure<F>(mu.support().shifted(y), std::move(atoms), mu.dim());
}

template <ScalarField F>
inline AtomicMapMeasure<F> pushforwardShift(const AtomicMapMeasure<F>& nu,
                                            const std::vector<typename F::Real>& y) {
  std::vector<MapAtom<F>> atoms;
  atoms.reserve(nu.atoms().size());
  for (const auto& atom : nu.atoms())
    atoms.push_back(MapAtom<F>{detail::translatePoint<F>(atom.point, y), atom.choi});
  return AtomicMapMeasure<F>(nu.support().shifted(y), std::move(atoms), nu.dim());
}

/// The compression mu_a = <mu(.) a, a>: a classical measure with masses
/// <W_i a, a> >= 0.
template <ScalarField F>
inline ScalarAtomicMeasure<F> compress(const AtomicOperatorMeasure<F>& mu,
                                       const std::vector<typename F::Complex>& a) {
  std::vector<typename ScalarAtomicMeasure<F>::Atom> atoms;
  atoms.reserve(mu.atoms().size());
  for (const auto& atom : mu.atoms())
    atoms.push_back({atom.point, quadraticForm(atom.weight, a)});
  return ScalarAtomicMeasure<F>(std::move(atoms));
}

}  // namespace opmoment
