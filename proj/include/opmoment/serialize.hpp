#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "opmoment/fields.hpp"
#include "opmoment/linop.hpp"
#include "opmoment/matrix.hpp"
#include "opmoment/measures.hpp"
#include "opmoment/moments.hpp"
#include "opmoment/multiindex.hpp"
#include "opmoment/polynomial.hpp"
#include "opmoment/preserver.hpp"
#include "opmoment/region.hpp"

namespace opmoment {

using Json = nlohmann::json;

/// Thrown on malformed documents; carries a path-like description of the
/// offending field.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void requireObject(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
}

inline void requireKeys(const Json& j, const std::string& where,
                        const std::set<std::string>& required,
                        const std::set<std::string>& optional = {}) {
  requireObject(j, where);
  for (const auto& k : required)
    if (!j.contains(k)) throw ParseError(where + ": missing field '" + k + "'");
  for (const auto& [key, value] : j.items())
    if (!required.count(key) && !optional.count(key))
      throw ParseError(where + ": unknown field '" + key + "'");
}

inline const Json& field(const Json& j, const std::string& where, const std::string& key) {
  if (!j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  return j.at(key);
}

inline int intField(const Json& j, const std::string& where, const std::string& key) {
  const Json& v = field(j, where, key);
  if (!v.is_number_integer()) throw ParseError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

}  // namespace detail

// -- scalars ----------------------------------------------------------------

template <ScalarField F>
inline Json realToJson(const typename F::Real& r) {
  if constexpr (F::kExact)
    return rationalToString(r);
  else
    return r;
}

template <ScalarField F>
inline typename F::Real realFromJson(const Json& j, const std::string& where) {
  if constexpr (F::kExact) {
    if (!j.is_string())
      throw ParseError(where + ": exact numbers are serialized as strings \"p/q\"");
    return rationalFromString(j.get<std::string>());
  } else {
    if (!j.is_number()) throw ParseError(where + ": expected a number");
    return j.get<double>();
  }
}

template <ScalarField F>
inline Json realVectorToJson(const std::vector<typename F::Real>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(realToJson<F>(r));
  return out;
}

template <ScalarField F>
inline std::vector<typename F::Real> realVectorFromJson(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  std::vector<typename F::Real> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(realFromJson<F>(j.at(i), where + "[" + std::to_string(i) + "]"));
  return out;
}

// -- matrices ----------------------------------------------------------------

template <ScalarField F>
inline Json matrixToJson(const HermMatrix<F>& m) {
  Json re = Json::array(), im = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json rowRe = Json::array(), rowIm = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) {
      rowRe.push_back(realToJson<F>(F::realPart(m.entry(i, j))));
      rowIm.push_back(realToJson<F>(F::imagPart(m.entry(i, j))));
    }
    re.push_back(std::move(rowRe));
    im.push_back(std::move(rowIm));
  }
  return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

template <ScalarField F>
inline HermMatrix<F> matrixFromJson(const Json& j, const std::string& where) {
  detail::requireKeys(j, where, {"re", "im"});
  const Json& re = j.at("re");
  const Json& im = j.at("im");
  if (!re.is_array() || !im.is_array() || re.size() != im.size())
    throw ParseError(where + ": re/im must be arrays of equal size");
  const std::size_t d = re.size();
  Matrix<F> m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const Json& rowRe = re.at(i);
    const Json& rowIm = im.at(i);
    if (!rowRe.is_array() || rowRe.size() != d || !rowIm.is_array() || rowIm.size() != d)
      throw ParseError(where + ": matrix rows must have length " + std::to_string(d));
    for (std::size_t k = 0; k < d; ++k) {
      auto rv = realFromJson<F>(rowRe.at(k), where + ".re");
      auto iv = realFromJson<F>(rowIm.at(k), where + ".im");
      m.at(i, k) = F::makeComplex(std::move(rv), std::move(iv));
    }
  }
  try {
    return HermMatrix<F>::fromMatrix(std::move(m));
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
}

// -- multi-indices and polynomial terms ---------------------------------------

inline Json exponentsToJson(const MultiIndex& alpha) {
  Json out = Json::array();
  for (std::size_t i = 0; i < alpha.size(); ++i) out.push_back(alpha[i]);
  return out;
}

inline MultiIndex exponentsFromJson(const Json& j, const std::string& where, int nvars) {
  if (!j.is_array()) throw ParseError(where + ": exponents must be an array");
  if (j.size() != static_cast<std::size_t>(nvars))
    throw ParseError(where + ": expected " + std::to_string(nvars) + " exponents");
  std::vector<std::uint32_t> exps;
  exps.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
      throw ParseError(where + ": exponents must be nonnegative integers");
    exps.push_back(v.get<std::uint32_t>());
  }
  return MultiIndex(std::move(exps));
}

template <ScalarField F>
inline Json polyTermsToJson(const MatrixPolynomial<F>& p) {
  Json out = Json::array();
  for (const auto& [alpha, coeff] : p.terms())
    out.push_back(Json{{"exponents", exponentsToJson(alpha)}, {"coeff", matrixToJson<F>(coeff)}});
  return out;
}

template <ScalarField F>
inline MatrixPolynomial<F> polyTermsFromJson(const Json& j, const std::string& where, int nvars,
                                             std::size_t dim) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of terms");
  MatrixPolynomial<F> p(nvars, dim);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string termWhere = where + "[" + std::to_string(i) + "]";
    detail::requireKeys(j.at(i), termWhere, {"exponents", "coeff"});
    auto alpha = exponentsFromJson(j.at(i).at("exponents"), termWhere + ".exponents", nvars);
    auto coeff = matrixFromJson<F>(j.at(i).at("coeff"), termWhere + ".coeff");
    if (coeff.dim() != dim) throw ParseError(termWhere + ".coeff: dimension mismatch");
    p.addTerm(std::move(alpha), std::move(coeff));
  }
  return p;
}

// -- regions -------------------------------------------------------------------

template <ScalarField F>
inline Json regionToJson(const RegionK<F>& r) {
  Json out{{"kind", regionKindName(r.kind())},
           {"nvars", r.nvars()},
           {"shift", realVectorToJson<F>(r.shiftOffset())}};
  if (r.kind() == RegionKind::box) {
    out["lo"] = realVectorToJson<F>(r.lo());
    out["hi"] = realVectorToJson<F>(r.hi());
  } else if (r.kind() == RegionKind::ball) {
    out["center"] = realVectorToJson<F>(r.center());
    out["radius"] = realToJson<F>(r.radius());
  }
  return out;
}

template <ScalarField F>
inline RegionK<F> regionFromJson(const Json& j, const std::string& where) {
  detail::requireObject(j, where);
  const Json& kindJson = detail::field(j, where, "kind");
  if (!kindJson.is_string()) throw ParseError(where + ".kind: expected a string");
  const std::string kind = kindJson.get<std::string>();
  RegionK<F> region = RegionK<F>::allSpace(0);
  if (kind == "allSpace") {
    detail::requireKeys(j, where, {"kind", "nvars", "shift"});
    region = RegionK<F>::allSpace(detail::intField(j, where, "nvars"));
  } else if (kind == "box") {
    detail::requireKeys(j, where, {"kind", "nvars", "shift", "lo", "hi"});
    region = RegionK<F>::box(realVectorFromJson<F>(j.at("lo"), where + ".lo"),
                             realVectorFromJson<F>(j.at("hi"), where + ".hi"));
  } else if (kind == "ball") {
    detail::requireKeys(j, where, {"kind", "nvars", "shift", "center", "radius"});
    region = RegionK<F>::ball(realVectorFromJson<F>(j.at("center"), where + ".center"),
                              realFromJson<F>(j.at("radius"), where + ".radius"));
  } else {
    throw ParseError(where + ".kind: unknown region kind '" + kind + "'");
  }
  if (region.nvars() != detail::intField(j, where, "nvars"))
    throw ParseError(where + ".nvars: inconsistent with the region data");
  auto shift = realVectorFromJson<F>(j.at("shift"), where + ".shift");
  if (shift.size() != static_cast<std::size_t>(region.nvars()))
    throw ParseError(where + ".shift: arity mismatch");
  // stored box/ball parameters are already translated; only the bookkeeping
  // offset needs restoring
  return RegionK<F>::withRecordedShift(std::move(region), std::move(shift));
}

// -- typed payloads ---------------------------------------------------------

template <ScalarField F>
inline Json polynomialToJson(const MatrixPolynomial<F>& p) {
  return Json{{"nvars", p.nvars()},
              {"dim", p.dim()},
              {"terms", polyTermsToJson<F>(p)}};
}

template <ScalarField F>
inline MatrixPolynomial<F> polynomialFromJson(const Json& j, const std::string& where) {
  detail::requireKeys(j, where, {"nvars", "dim", "terms"});
  const int nvars = detail::intField(j, where, "nvars");
  const int dim = detail::intField(j, where, "dim");
  if (nvars < 0 || dim <= 0) throw ParseError(where + ": bad nvars/dim");
  return polyTermsFromJson<F>(j.at("terms"), where + ".terms", nvars,
                              static_cast<std::size_t>(dim));
}

template <ScalarField F>
inline Json operatorToJson(const PolyOperator<F>& t) {
  Json images = Json::array();
  for (const auto& [key, img] : t.images())
    images.push_back(Json{{"basisIndex", key.first},
                          {"exponents", exponentsToJson(key.second)},
                          {"image", polyTermsToJson<F>(img)}});
  return Json{{"nvars", t.nvars()},
              {"dim", t.dim()},
              {"maxDeg", t.maxDeg()},
              {"images", std::move(images)}};
}

template <ScalarField F>
inline PolyOperator<F> operatorFromJson(const Json& j, const std::string& where) {
  detail::requireKeys(j, where, {"nvars", "dim", "maxDeg", "images"});
  const int nvars = detail::intField(j, where, "nvars");
  const int dim = detail::intField(j, where, "dim");
  const int maxDeg = detail::intField(j, where, "maxDeg");
  if (nvars < 0 || dim <= 0 || maxDeg < 0) throw ParseError(where + ": bad shape fields");
  const Json& images = j.at("images");
  if (!images.is_array()) throw ParseError(where + ".images: expected an array");

  std::map<std::pair<std::size_t, MultiIndex>, MatrixPolynomial<F>,
           typename PolyOperator<F>::KeyLess>
      parsed;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const std::string cellWhere = where + ".images[" + std::to_string(i) + "]";
    detail::requireKeys(images.at(i), cellWhere, {"basisIndex", "exponents", "image"});
    const int basisIndex = detail::intField(images.at(i), cellWhere, "basisIndex");
    if (basisIndex < 0 || static_cast<std::size_t>(basisIndex) >= hermBasisSize(dim))
      throw ParseError(cellWhere + ".basisIndex: out of range");
    auto alpha = exponentsFromJson(images.at(i).at("exponents"), cellWhere + ".exponents", nvars);
    if (alpha.totalDegree() > static_cast<std::uint32_t>(maxDeg))
      throw ParseError(cellWhere + ".exponents: degree exceeds maxDeg");
    auto img = polyTermsFromJson<F>(images.at(i).at("image"), cellWhere + ".image", nvars,
                                    static_cast<std::size_t>(dim));
    auto key = std::make_pair(static_cast<std::size_t>(basisIndex), std::move(alpha));
    if (parsed.count(key)) throw ParseError(cellWhere + ": duplicate image cell");
    parsed.emplace(std::move(key), std::move(img));
  }
  return PolyOperator<F>::fromImageFn(
      nvars, static_cast<std::size_t>(dim), maxDeg,
      [&](std::size_t i, const MultiIndex& alpha) -> MatrixPolynomial<F> {
        auto it = parsed.find(std::make_pair(i, alpha));
        return it == parsed.end() ? MatrixPolynomial<F>(nvars, static_cast<std::size_t>(dim))
                                  : it->second;
      });
}

template <ScalarField F>
inline Json sequenceToJson(const OperatorSequence<F>& s) {
  Json entries = Json::array();
  for (const auto& [alpha, m] : s.storedEntries())
    entries.push_back(Json{{"exponents", exponentsToJson(alpha)}, {"matrix", matrixToJson<F>(m)}});
  return Json{{"nvars", s.nvars()},
              {"dim", s.dim()},
              {"order", s.order()},
              {"entries", std::move(entries)}};
}

template <ScalarField F>
inline OperatorSequence<F> sequenceFromJson(const Json& j, const std::string& where) {
  detail::requireKeys(j, where, {"nvars", "dim", "order", "entries"});
  const int nvars = detail::intField(j, where, "nvars");
  const int dim = detail::intField(j, where, "dim");
  const int order = detail::intField(j, where, "order");
  if (nvars < 0 || dim <= 0 || order < 0) throw ParseError(where + ": bad shape fields");
  OperatorSequence<F> s(nvars, static_cast<std::size_t>(dim), order);
  const Json& entries = j.at("entries");
  if (!entries.is_array()) throw ParseError(where + ".entries: expected an array");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string w = where + ".entries[" + std::to_string(i) + "]";
    detail::requireKeys(entries.at(i), w, {"exponents", "matrix"});
    auto alpha = exponentsFromJson(entries.at(i).at("exponents"), w + ".exponents", nvars);
    auto m = matrixFromJson<F>(entries.at(i).at("matrix"), w + ".matrix");
    if (m.dim() != static_cast<std::size_t>(dim)) throw ParseError(w + ".matrix: dim mismatch");
    try {
      s.setEntry(alpha, std::move(m));
    } catch (const std::invalid_argument& e) {
      throw ParseError(w + ": " + e.what());
    }
  }
  return s;
}

template <ScalarField F>
inline Json measureToJson(const AtomicOperatorMeasure<F>& mu) {
  Json atoms = Json::array();
  for (const auto& atom : mu.atoms())
    atoms.push_back(Json{{"point", realVectorToJson<F>(atom.point)},
                         {"weight", matrixToJson<F>(atom.weight)}});
  return Json{{"nvars", mu.nvars()},
              {"dim", mu.dim()},
              {"region", regionToJson<F>(mu.support())},
              {"atoms", std::move(atoms)}};
}

template <ScalarField F>
inline Json mapMeasureToJson(const AtomicMapMeasure<F>& nu) {
  Json atoms = Json::array();
  for (const auto& atom : nu.atoms())
    atoms.push_back(Json{{"point", realVectorToJson<F>(atom.point)},
                         {"choi", matrixToJson<F>(atom.choi)}});
  return Json{{"nvars", nu.nvars()},
              {"dim", nu.dim()},
              {"region", regionToJson<F>(nu.support())},
              {"atoms", std::move(atoms)}};
}

/// Either kind of atomic measure document payload.
template <ScalarField F>
using MeasureVariant = std::variant<AtomicOperatorMeasure<F>, AtomicMapMeasure<F>>;

template <ScalarField F>
inline MeasureVariant<F> measureVariantFromJson(const Json& j, const std::string& where,
                                                std::optional<double> tol) {
  detail::requireKeys(j, where, {"nvars", "dim", "region", "atoms"});
  const int nvars = detail::intField(j, where, "nvars");
  const int dim = detail::intField(j, where, "dim");
  if (nvars < 0 || dim <= 0) throw ParseError(where + ": bad nvars/dim");
  auto region = regionFromJson<F>(j.at("region"), where + ".region");
  if (region.nvars() != nvars) throw ParseError(where + ".region: arity mismatch");
  const Json& atoms = j.at("atoms");
  if (!atoms.is_array()) throw ParseError(where + ".atoms: expected an array");

  bool mapKind = false;
  if (!atoms.empty()) {
    detail::requireObject(atoms.at(0), where + ".atoms[0]");
    mapKind = atoms.at(0).contains("choi");
  }
  try {
    if (mapKind) {
      std::vector<MapAtom<F>> parsed;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        const std::string w = where + ".atoms[" + std::to_string(i) + "]";
        detail::requireKeys(atoms.at(i), w, {"point", "choi"});
        parsed.push_back(MapAtom<F>{realVectorFromJson<F>(atoms.at(i).at("point"), w + ".point"),
                                    matrixFromJson<F>(atoms.at(i).at("choi"), w + ".choi")});
      }
      return AtomicMapMeasure<F>(std::move(region), std::move(parsed),
                                 static_cast<std::size_t>(dim), tol);
    }
    std::vector<OperatorAtom<F>> parsed;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const std::string w = where + ".atoms[" + std::to_string(i) + "]";
      detail::requireKeys(atoms.at(i), w, {"point", "weight"});
      parsed.push_back(OperatorAtom<F>{realVectorFromJson<F>(atoms.at(i).at("point"), w + ".point"),
                                       matrixFromJson<F>(atoms.at(i).at("weight"), w + ".weight")});
    }
    return AtomicOperatorMeasure<F>(std::move(region), std::move(parsed),
                                    static_cast<std::size_t>(dim), tol);
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
}

template <ScalarField F>
inline Json familyToJson(const CovariantMeasureFamily<F>& fam) {
  Json atoms = Json::array();
  for (std::size_t i = 0; i < fam.offsets().size(); ++i)
    atoms.push_back(Json{{"offset", realVectorToJson<F>(fam.offsets()[i])},
                         {"choi", matrixToJson<F>(fam.chois()[i])}});
  return Json{{"nvars", fam.nvars()},
              {"dim", fam.dim()},
              {"region", regionToJson<F>(fam.region())},
              {"atoms", std::move(atoms)}};
}

template <ScalarField F>
inline CovariantMeasureFamily<F> familyFromJson(const Json& j, const std::string& where,
                                                std::optional<double> tol) {
  detail::requireKeys(j, where, {"nvars", "dim", "region", "atoms"});
  const int nvars = detail::intField(j, where, "nvars");
  const int dim = detail::intField(j, where, "dim");
  if (nvars < 0 || dim <= 0) throw ParseError(where + ": bad nvars/dim");
  auto region = regionFromJson<F>(j.at("region"), where + ".region");
  if (region.nvars() != nvars) throw ParseError(where + ".region: arity mismatch");
  const Json& atoms = j.at("atoms");
  if (!atoms.is_array() || atoms.empty())
    throw ParseError(where + ".atoms: expected a nonempty array");
  std::vector<std::vector<typename F::Real>> offsets;
  std::vector<HermMatrix<F>> chois;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string w = where + ".atoms[" + std::to_string(i) + "]";
    detail::requireKeys(atoms.at(i), w, {"offset", "choi"});
    offsets.push_back(realVectorFromJson<F>(atoms.at(i).at("offset"), w + ".offset"));
    chois.push_back(matrixFromJson<F>(atoms.at(i).at("choi"), w + ".choi"));
  }
  try {
    return CovariantMeasureFamily<F>(std::move(region), std::move(offsets), std::move(chois),
                                     static_cast<std::size_t>(dim), tol);
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
}

// -- documents -----------------------------------------------------------------

enum class DocKind { polynomial, operatorMap, measure, mapMeasureFamily, sequence, region };

inline std::string docKindName(DocKind k) {
  switch (k) {
    case DocKind::polynomial: return "polynomial";
    case DocKind::operatorMap: return "operator";
    case DocKind::measure: return "measure";
    case DocKind::mapMeasureFamily: return "mapMeasureFamily";
    case DocKind::sequence: return "sequence";
    case DocKind::region: return "region";
  }
  return "?";
}

inline DocKind docKindFromName(const std::string& name) {
  if (name == "polynomial") return DocKind::polynomial;
  if (name == "operator") return DocKind::operatorMap;
  if (name == "measure") return DocKind::measure;
  if (name == "mapMeasureFamily") return DocKind::mapMeasureFamily;
  if (name == "sequence") return DocKind::sequence;
  if (name == "region") return DocKind::region;
  throw ParseError("document.kind: unknown kind '" + name + "'");
}

/// Versioned envelope around any payload the CLI reads or writes.
template <ScalarField F>
struct ProblemDocument {
  DocKind kind = DocKind::region;
  std::optional<double> psdTol;  // tolerances.psd
  std::variant<MatrixPolynomial<F>, PolyOperator<F>, OperatorSequence<F>, RegionK<F>,
               AtomicOperatorMeasure<F>, AtomicMapMeasure<F>, CovariantMeasureFamily<F>>
      payload{RegionK<F>::allSpace(1)};

  friend bool operator==(const ProblemDocument& a, const ProblemDocument& b) {
    return a.kind == b.kind && a.psdTol == b.psdTol && a.payload == b.payload;
  }
  friend bool operator!=(const ProblemDocument& a, const ProblemDocument& b) { return !(a == b); }
};

inline std::string documentBackendName(const Json& j) {
  detail::requireKeys(j, "document", {"version", "kind", "backend", "payload"}, {"tolerances"});
  const Json& version = j.at("version");
  if (!version.is_string() || version.get<std::string>() != "1")
    throw ParseError("document.version: expected \"1\"");
  const Json& backend = j.at("backend");
  if (!backend.is_string()) throw ParseError("document.backend: expected a string");
  const std::string name = backend.get<std::string>();
  if (name != "exact" && name != "approx")
    throw ParseError("document.backend: expected \"exact\" or \"approx\"");
  return name;
}

template <ScalarField F>
inline ProblemDocument<F> documentFromJson(const Json& j) {
  const std::string backend = documentBackendName(j);
  if ((backend == "exact") != F::kExact)
    throw ParseError("document.backend: does not match the requested backend");
  const Json& kindJson = j.at("kind");
  if (!kindJson.is_string()) throw ParseError("document.kind: expected a string");

  ProblemDocument<F> doc;
  doc.kind = docKindFromName(kindJson.get<std::string>());
  if (j.contains("tolerances")) {
    detail::requireKeys(j.at("tolerances"), "document.tolerances", {}, {"psd"});
    if (j.at("tolerances").contains("psd")) {
      const Json& t = j.at("tolerances").at("psd");
      if (!t.is_number()) throw ParseError("document.tolerances.psd: expected a number");
      doc.psdTol = t.get<double>();
    }
  }
  const Json& payload = j.at("payload");
  const std::string where = "payload";
  switch (doc.kind) {
    case DocKind::polynomial:
      doc.payload = polynomialFromJson<F>(payload, where);
      break;
    case DocKind::operatorMap:
      doc.payload = operatorFromJson<F>(payload, where);
      break;
    case DocKind::sequence:
      doc.payload = sequenceFromJson<F>(payload, where);
      break;
    case DocKind::region:
      doc.payload = regionFromJson<F>(payload, where);
      break;
    case DocKind::measure: {
      auto variant = measureVariantFromJson<F>(payload, where, doc.psdTol);
      if (std::holds_alternative<AtomicOperatorMeasure<F>>(variant))
        doc.payload = std::get<AtomicOperatorMeasure<F>>(std::move(variant));
      else
        doc.payload = std::get<AtomicMapMeasure<F>>(std::move(variant));
      break;
    }
    case DocKind::mapMeasureFamily:
      doc.payload = familyFromJson<F>(payload, where, doc.psdTol);
      break;
  }
  return doc;
}

template <ScalarField F>
inline Json documentToJson(const ProblemDocument<F>& doc) {
  Json out{{"version", "1"},
           {"kind", docKindName(doc.kind)},
           {"backend", F::kExact ? "exact" : "approx"}};
  if (doc.psdTol) out["tolerances"] = Json{{"psd", *doc.psdTol}};
  std::visit(
      [&](const auto& value) {
        using T = std::decay_t<decltype(value)>;
        if constexpr (std::is_same_v<T, MatrixPolynomial<F>>)
          out["payload"] = polynomialToJson<F>(value);
        else if constexpr (std::is_same_v<T, PolyOperator<F>>)
          out["payload"] = operatorToJson<F>(value);
        else if constexpr (std::is_same_v<T, OperatorSequence<F>>)
          out["payload"] = sequenceToJson<F>(value);
        else if constexpr (std::is_same_v<T, RegionK<F>>)
          out["payload"] = regionToJson<F>(value);
        else if constexpr (std::is_same_v<T, AtomicOperatorMeasure<F>>)
          out["payload"] = measureToJson<F>(value);
        else if constexpr (std::is_same_v<T, AtomicMapMeasure<F>>)
          out["payload"] = mapMeasureToJson<F>(value);
        else
          out["payload"] = familyToJson<F>(value);
      },
      doc.payload);
  return out;
}

/// Canonical text rendering: sorted keys, two-space indent, trailing newline.
inline std::string renderJson(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace opmoment
