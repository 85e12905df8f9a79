#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

#include "opmoment/fields.hpp"
#include "opmoment/serialize.hpp"

namespace opmoment {

/// Lossless lift approx -> exact; exact -> approx rounds to double (and
/// overflows on entries beyond double range, which is reported).

template <ScalarField To, ScalarField From>
inline typename To::Real convertReal(const typename From::Real& r) {
  if constexpr (std::is_same_v<To, From>) {
    return r;
  } else if constexpr (To::kExact) {
    return exactRealFromDouble(r);
  } else {
    double v = toApproxReal(r);
    if (!std::isfinite(v))
      throw std::invalid_argument("backend conversion: value exceeds double range");
    return v;
  }
}

template <ScalarField To, ScalarField From>
inline std::vector<typename To::Real> convertRealVector(const std::vector<typename From::Real>& v) {
  std::vector<typename To::Real> out;
  out.reserve(v.size());
  for (const auto& r : v) out.push_back(convertReal<To, From>(r));
  return out;
}

template <ScalarField To, ScalarField From>
inline HermMatrix<To> convertHerm(const HermMatrix<From>& m) {
  Matrix<To> out(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      out.at(i, j) = To::makeComplex(convertReal<To, From>(From::realPart(m.entry(i, j))),
                                     convertReal<To, From>(From::imagPart(m.entry(i, j))));
  return HermMatrix<To>::fromMatrix(std::move(out));
}

template <ScalarField To, ScalarField From>
inline MatrixPolynomial<To> convertPoly(const MatrixPolynomial<From>& p) {
  MatrixPolynomial<To> out(p.nvars(), p.dim());
  for (const auto& [alpha, coeff] : p.terms()) out.addTerm(alpha, convertHerm<To, From>(coeff));
  return out;
}

template <ScalarField To, ScalarField From>
inline RegionK<To> convertRegion(const RegionK<From>& r) {
  RegionK<To> out = RegionK<To>::allSpace(r.nvars());
  switch (r.kind()) {
    case RegionKind::allSpace:
      break;
    case RegionKind::box:
      out = RegionK<To>::box(convertRealVector<To, From>(r.lo()),
                             convertRealVector<To, From>(r.hi()));
      break;
    case RegionKind::ball:
      out = RegionK<To>::ball(convertRealVector<To, From>(r.center()),
                              convertReal<To, From>(r.radius()));
      break;
  }
  return RegionK<To>::withRecordedShift(std::move(out),
                                        convertRealVector<To, From>(r.shiftOffset()));
}

template <ScalarField To, ScalarField From>
inline PolyOperator<To> convertOperator(const PolyOperator<From>& t) {
  return PolyOperator<To>::fromImageFn(
      t.nvars(), t.dim(), t.maxDeg(), [&](std::size_t i, const MultiIndex& alpha) {
        return convertPoly<To, From>(t.image(i, alpha));
      });
}

template <ScalarField To, ScalarField From>
inline OperatorSequence<To> convertSequence(const OperatorSequence<From>& s) {
  return OperatorSequence<To>::fromFn(s.nvars(), s.dim(), s.order(), [&](const MultiIndex& alpha) {
    return convertHerm<To, From>(s.entry(alpha));
  });
}

template <ScalarField To, ScalarField From>
inline AtomicOperatorMeasure<To> convertMeasure(const AtomicOperatorMeasure<From>& mu,
                                                std::optional<double> tol) {
  std::vector<OperatorAtom<To>> atoms;
  for (const auto& atom : mu.atoms())
    atoms.push_back(OperatorAtom<To>{convertRealVector<To, From>(atom.point),
                                     convertHerm<To, From>(atom.weight)});
  return AtomicOperatorMeasure<To>(convertRegion<To, From>(mu.support()), std::move(atoms),
                                   mu.dim(), tol);
}

template <ScalarField To, ScalarField From>
inline AtomicMapMeasure<To> convertMapMeasure(const AtomicMapMeasure<From>& nu,
                                              std::optional<double> tol) {
  std::vector<MapAtom<To>> atoms;
  for (const auto& atom : nu.atoms())
    atoms.push_back(MapAtom<To>{convertRealVector<To, From>(atom.point),
                                convertHerm<To, From>(atom.choi)});
  return AtomicMapMeasure<To>(convertRegion<To, From>(nu.support()), std::move(atoms), nu.dim(),
                              tol);
}

template <ScalarField To, ScalarField From>
inline CovariantMeasureFamily<To> convertFamily(const CovariantMeasureFamily<From>& fam,
                                                std::optional<double> tol) {
  std::vector<std::vector<typename To::Real>> offsets;
  std::vector<HermMatrix<To>> chois;
  for (std::size_t i = 0; i < fam.offsets().size(); ++i) {
    offsets.push_back(convertRealVector<To, From>(fam.offsets()[i]));
    chois.push_back(convertHerm<To, From>(fam.chois()[i]));
  }
  return CovariantMeasureFamily<To>(convertRegion<To, From>(fam.region()), std::move(offsets),
                                    std::move(chois), fam.dim(), tol);
}

template <ScalarField To, ScalarField From>
inline ProblemDocument<To> convertDocument(const ProblemDocument<From>& doc) {
  ProblemDocument<To> out;
  out.kind = doc.kind;
  out.psdTol = doc.psdTol;
  // converted PSD data may sit within rounding of the cone boundary
  std::optional<double> tol = doc.psdTol;
  if (!To::kExact && !tol) tol = 1e-8;
  std::visit(
      [&](const auto& value) {
        using T = std::decay_t<decltype(value)>;
        if constexpr (std::is_same_v<T, MatrixPolynomial<From>>)
          out.payload = convertPoly<To, From>(value);
        else if constexpr (std::is_same_v<T, PolyOperator<From>>)
          out.payload = convertOperator<To, From>(value);
        else if constexpr (std::is_same_v<T, OperatorSequence<From>>)
          out.payload = convertSequence<To, From>(value);
        else if constexpr (std::is_same_v<T, RegionK<From>>)
          out.payload = convertRegion<To, From>(value);
        else if constexpr (std::is_same_v<T, AtomicOperatorMeasure<From>>)
          out.payload = convertMeasure<To, From>(value, tol);
        else if constexpr (std::is_same_v<T, AtomicMapMeasure<From>>)
          out.payload = convertMapMeasure<To, From>(value, tol);
        else
          out.payload = convertFamily<To, From>(value, tol);
      },
      doc.payload);
  return out;
}

}  // namespace opmoment
