// opmoment — command-line front end for the operator-polynomial toolkit.
//
// Subcommands: canon, apply, moment-check, preserve-check, borcea, demo.
// Exit codes: 0 = pass, 1 = principled fail (a certificate), 2 = usage/parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "opmoment/opmoment.hpp"

using namespace opmoment;

namespace {

struct GlobalOptions {
  bool jsonOutput = false;
  std::optional<std::string> backend;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
};

std::uint64_t effectiveSeed(const GlobalOptions& opts) {
  if (opts.seed) return *opts.seed;
  if (const char* env = std::getenv("OPMOMENT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ParseError("OPMOMENT_SEED: not a valid unsigned integer");
    }
  }
  return 0;
}

Json loadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": invalid JSON: " + e.what());
  }
  return j;
}

std::string chooseBackend(const Json& doc, const GlobalOptions& opts) {
  const std::string native = documentBackendName(doc);
  return opts.backend.value_or(native);
}

template <ScalarField F>
ProblemDocument<F> loadDocument(const Json& j) {
  const std::string native = documentBackendName(j);
  if ((native == "exact") == F::kExact) return documentFromJson<F>(j);
  if constexpr (F::kExact)
    return convertDocument<ExactField, ApproxField>(documentFromJson<ApproxField>(j));
  else
    return convertDocument<ApproxField, ExactField>(documentFromJson<ExactField>(j));
}

template <ScalarField F, class T>
const T& payloadAs(const ProblemDocument<F>& doc, const std::string& expectedKind) {
  if (!std::holds_alternative<T>(doc.payload))
    throw ParseError("document: expected kind '" + expectedKind + "'");
  return std::get<T>(doc.payload);
}

/// --region accepts inline JSON (leading '{') or a path to a region document.
template <ScalarField F>
RegionK<F> parseRegionFlag(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("--region: invalid JSON: ") + e.what());
    }
    return regionFromJson<F>(j, "--region");
  }
  auto doc = loadDocument<F>(loadJsonFile(text));
  return payloadAs<F, RegionK<F>>(doc, "region");
}

template <ScalarField F>
Json verdictToJson(const PsdVerdict<F>& v) {
  Json out{{"isPsd", v.isPsd}};
  if (v.minEigenvalue) out["minEigenvalue"] = *v.minEigenvalue;
  if (v.witness) {
    Json re = Json::array(), im = Json::array();
    for (const auto& z : *v.witness) {
      re.push_back(realToJson<F>(F::realPart(z)));
      im.push_back(realToJson<F>(F::imagPart(z)));
    }
    out["witness"] = Json{{"re", std::move(re)}, {"im", std::move(im)}};
  }
  return out;
}

template <ScalarField F>
Json momentVerdictToJson(const MomentVerdict<F>& v) {
  Json items = Json::array();
  for (const auto& item : v.items)
    items.push_back(Json{{"label", item.label}, {"verdict", verdictToJson<F>(item.verdict)}});
  Json out{{"mode", momentTestModeName(v.mode)}, {"pass", v.pass}, {"items", std::move(items)}};
  if (v.failLabel) out["failLabel"] = *v.failLabel;
  return out;
}

void emit(const GlobalOptions& opts, const Json& jsonReport, const std::string& text) {
  if (opts.jsonOutput)
    std::cout << renderJson(jsonReport);
  else
    std::cout << text;
}

// ---------------------------------------------------------------- canon ----

template <ScalarField F>
int cmdCanon(const Json& input, std::optional<int> maxDeg, const GlobalOptions& opts) {
  auto doc = loadDocument<F>(input);
  const auto& t = payloadAs<F, PolyOperator<F>>(doc, "operator");
  const int level = maxDeg.value_or(t.maxDeg());
  if (level > t.maxDeg())
    throw ParseError("--max-deg exceeds the operator truncation " + std::to_string(t.maxDeg()));
  auto rep = extractCanonical(t);

  Json entries = Json::array();
  std::ostringstream text;
  text << "canonical representation (maxDeg " << level << ", dim " << t.dim() << ", nvars "
       << t.nvars() << ")\n";
  for (const auto& beta : monomialsUpTo(static_cast<std::size_t>(t.nvars()), level))
    for (std::size_t i = 0; i < hermBasisSize(t.dim()); ++i) {
      auto q = rep.q(beta, i);
      if (q.isZero()) continue;
      entries.push_back(Json{{"exponents", exponentsToJson(beta)},
                             {"basisIndex", i},
                             {"value", polyTermsToJson<F>(q)}});
      text << "Q" << beta.toString() << "(B" << i << ") = " << formatPoly(q) << "\n";
    }
  emit(opts, Json{{"command", "canon"}, {"maxDeg", level}, {"entries", std::move(entries)}},
       text.str());
  return 0;
}

// ---------------------------------------------------------------- apply ----

template <ScalarField F>
int cmdApply(const Json& input, const std::string& polyPath, const GlobalOptions& opts) {
  auto doc = loadDocument<F>(input);
  const auto& t = payloadAs<F, PolyOperator<F>>(doc, "operator");
  auto polyDoc = loadDocument<F>(loadJsonFile(polyPath));
  const auto& p = payloadAs<F, MatrixPolynomial<F>>(polyDoc, "polynomial");
  auto image = applyOperator(t, p);

  ProblemDocument<F> out;
  out.kind = DocKind::polynomial;
  out.payload = image;
  emit(opts, documentToJson(out), "T(p) = " + formatPoly(image) + "\n");
  return 0;
}

// ---------------------------------------------------------- moment-check ----

template <ScalarField F>
int cmdMomentCheck(const Json& input, const std::string& regionText, int level,
                   const std::string& mode, std::optional<int> order, const GlobalOptions& opts) {
  auto doc = loadDocument<F>(input);
  auto region = parseRegionFlag<F>(regionText);

  std::optional<OperatorSequence<F>> seq;
  if (std::holds_alternative<OperatorSequence<F>>(doc.payload)) {
    seq = std::get<OperatorSequence<F>>(doc.payload);
  } else if (std::holds_alternative<AtomicOperatorMeasure<F>>(doc.payload)) {
    const auto& mu = std::get<AtomicOperatorMeasure<F>>(doc.payload);
    int constraintDeg = 0;
    for (const auto& g : region.constraintPolys())
      constraintDeg = std::max(constraintDeg, g.degree());
    seq = sequenceFromMeasure(mu, order.value_or(2 * level + constraintDeg));
  } else {
    throw ParseError("document: expected kind 'sequence' or an operator-valued 'measure'");
  }

  const auto testMode = (mode == "block") ? MomentTestMode::block : MomentTestMode::compression;
  auto verdict = truncatedMomentTest(*seq, region, level, testMode, {}, opts.tol);

  std::ostringstream text;
  text << "truncated moment test (" << momentTestModeName(testMode) << ", level " << level
       << "): " << (verdict.pass ? "pass" : "fail") << "\n";
  for (const auto& item : verdict.items) {
    text << "  " << item.label << ": " << (item.verdict.isPsd ? "PSD" : "not PSD");
    if (item.verdict.minEigenvalue) text << " (min eigenvalue " << *item.verdict.minEigenvalue << ")";
    text << "\n";
  }
  emit(opts, momentVerdictToJson<F>(verdict), text.str());
  return verdict.pass ? 0 : 1;
}

// -------------------------------------------------------- preserve-check ----

template <ScalarField F>
int cmdPreserveCheck(const Json& input, const std::string& regionText, int trials, int deg,
                     int gridPoints, const GlobalOptions& opts) {
  auto doc = loadDocument<F>(input);
  const auto& t = payloadAs<F, PolyOperator<F>>(doc, "operator");
  auto region = parseRegionFlag<F>(regionText);
  GridSpec<F> grid;
  grid.pointsPerAxis = gridPoints;
  auto report = checkPreserverSampling(t, region, trials, deg, grid, opts.tol.value_or(1e-9),
                                       effectiveSeed(opts));

  Json j{{"command", "preserve-check"},
         {"pass", report.pass},
         {"trials", report.trials},
         {"worstTrial", report.worstTrial},
         {"worstPoint", realVectorToJson<F>(report.worstPoint)},
         {"worstMinEig", report.worstMinEig}};
  std::ostringstream text;
  text << "sampled preservation over " << report.trials << " positive inputs: "
       << (report.pass ? "pass" : "fail") << "\n"
       << "  worst min eigenvalue " << report.worstMinEig << " at trial " << report.worstTrial
       << "\n";
  emit(opts, j, text.str());
  return report.pass ? 0 : 1;
}

// ---------------------------------------------------------------- borcea ----

template <ScalarField F>
int cmdBorcea(const Json& input, const std::string& regionText, int level,
              const std::string& mode, int gridPoints, const GlobalOptions& opts) {
  auto doc = loadDocument<F>(input);
  const auto& t = payloadAs<F, PolyOperator<F>>(doc, "operator");
  auto region = parseRegionFlag<F>(regionText);
  auto yGrid = defaultYGrid(region, gridPoints);
  const auto testMode = (mode == "block") ? MomentTestMode::block : MomentTestMode::compression;
  auto report = borceaNecessaryCheck(t, region, yGrid, level, testMode, {}, opts.tol);

  Json cells = Json::array();
  for (const auto& cell : report.cells)
    cells.push_back(Json{{"y", realVectorToJson<F>(cell.y)},
                         {"probeIndex", cell.probeIndex},
                         {"pass", cell.verdict.pass}});
  Json j{{"command", "borcea"},
         {"mode", momentTestModeName(testMode)},
         {"pass", report.pass},
         {"cells", std::move(cells)}};
  if (report.firstFailCell) {
    j["firstFailCell"] = *report.firstFailCell;
    j["firstFailDetail"] = momentVerdictToJson<F>(report.cells[*report.firstFailCell].verdict);
  }
  std::ostringstream text;
  text << "canonical-data moment check (" << momentTestModeName(testMode) << ", level " << level
       << ") over " << yGrid.size() << " grid points x "
       << (report.cells.size() / std::max<std::size_t>(yGrid.size(), 1)) << " probes: "
       << (report.pass ? "pass" : "fail") << "\n";
  if (report.firstFailCell) {
    const auto& cell = report.cells[*report.firstFailCell];
    text << "  first failure at y = (";
    for (std::size_t i = 0; i < cell.y.size(); ++i) {
      if (i) text << ", ";
      text << realToJson<F>(cell.y[i]).dump();
    }
    text << "), probe " << cell.probeIndex << ", " << cell.verdict.failLabel.value_or("?") << "\n";
  }
  emit(opts, j, text.str());
  return report.pass ? 0 : 1;
}

// ------------------------------------------------------------------ demo ----

int cmdDemoBisgaard(const GlobalOptions& opts) {
  auto report = bisgaardDemo();

  Json locals = Json::array();
  for (std::size_t i = 0; i < report.localChecks.size(); ++i)
    locals.push_back(Json{{"level", i + 1}, {"pass", report.localChecks[i].pass}});
  Json j{{"command", "demo"},
         {"name", "bisgaard"},
         {"hankel", matrixToJson<ExactField>(report.hankel)},
         {"hankelVerdict", verdictToJson<ExactField>(report.hankelVerdict)},
         {"hankelMinEig", report.hankelMinEig},
         {"blockPass", report.blockCheck.pass},
         {"localChecks", std::move(locals)},
         {"samplingPass", report.sampling.pass},
         {"allExpected", report.allExpected}};

  std::ostringstream text;
  text << "block moment matrix at level 1:\n  " << formatMatrix<ExactField>(report.hankel) << "\n"
       << "  PSD: " << (report.hankelVerdict.isPsd ? "yes" : "no") << ", min eigenvalue "
       << report.hankelMinEig << "\n";
  if (report.hankelVerdict.witness) {
    text << "  witness v with <Mv, v> < 0: [";
    const auto& w = *report.hankelVerdict.witness;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) text << ", ";
      text << formatComplex<ExactField>(w[i]);
    }
    text << "]\n";
  }
  text << "block-mode check at level 1: " << (report.blockCheck.pass ? "pass" : "fail") << "\n";
  for (std::size_t i = 0; i < report.localChecks.size(); ++i)
    text << "compression-mode check at level " << (i + 1) << ": "
         << (report.localChecks[i].pass ? "pass" : "fail") << "\n";
  text << "sampled preservation on [-1, 1]: " << (report.sampling.pass ? "pass" : "fail") << "\n"
       << "all published facts reproduced: " << (report.allExpected ? "yes" : "no") << "\n";
  emit(opts, j, text.str());
  return report.allExpected ? 0 : 1;
}

int cmdDemoShift(const GlobalOptions& opts) {
  // T(A ⊗ x^k) = Phi(A) (x+y)^k with Phi = congruence by diag(1, 2), y = 2
  const Rational y(2);
  const int maxDeg = 4;
  Matrix<ExactField> s(2, 2);
  s.at(0, 0) = ExactField::makeComplex(Rational(1), Rational(0));
  s.at(1, 1) = ExactField::makeComplex(Rational(2), Rational(0));
  auto choi = choiCongruenceMap<ExactField>(s);
  auto t = shiftExampleOperator(choi, y, maxDeg);
  auto rep = extractCanonical(t);

  bool allMatch = true;
  Json table = Json::array();
  std::ostringstream text;
  text << "shift operator with y = " << rationalToString(y) << ", maxDeg " << maxDeg << "\n";
  for (int m = 0; m <= maxDeg; ++m) {
    const Rational ym = rationalPow(y, static_cast<unsigned long>(m));
    bool match = true;
    for (std::size_t i = 0; i < hermBasisSize(2); ++i) {
      auto expected = MatrixPolynomial<ExactField>::constant(
          1, ym * applyChoiMap(choi, hermBasisElement<ExactField>(2, i)));
      match = match && (rep.q(MultiIndex{static_cast<std::uint32_t>(m)}, i) == expected);
    }
    allMatch = allMatch && match;
    table.push_back(Json{{"m", m}, {"yPow", rationalToString(ym)}, {"match", match}});
    text << "  Q_" << m << "(A) = " << rationalToString(ym) << " * Phi(A): "
         << (match ? "verified" : "MISMATCH") << "\n";
  }
  text << "canonical data match y^m * Phi for all m <= " << maxDeg << ": "
       << (allMatch ? "yes" : "no") << "\n";
  Json j{{"command", "demo"},
         {"name", "shift"},
         {"y", rationalToString(y)},
         {"maxDeg", maxDeg},
         {"table", std::move(table)},
         {"allExpected", allMatch}};
  emit(opts, j, text.str());
  return allMatch ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"opmoment — Hermitian-matrix polynomial toolkit: canonical representations, "
               "atomic operator/map-valued measures, truncated moment tests, positivity "
               "preservers"};
  app.require_subcommand(1);

  GlobalOptions opts;
  app.add_flag("--json", opts.jsonOutput, "emit machine-readable JSON reports");
  app.add_option("--backend", opts.backend, "compute in this backend, converting the input")
      ->check(CLI::IsMember({"exact", "approx"}));
  app.add_option("--tol", opts.tol, "PSD tolerance override");
  app.add_option("--seed", opts.seed, "seed for randomized checks (fallback: OPMOMENT_SEED)");

  std::string inputPath, polyPath, regionText, mode = "block", demoName;
  int level = 1, trials = 25, gridPoints = 0, deg = 2;
  std::optional<int> maxDegFlag, orderFlag;

  auto* canon = app.add_subcommand("canon", "print the canonical representation of an operator");
  canon->add_option("input", inputPath, "operator document")->required();
  canon->add_option("--max-deg", maxDegFlag, "truncate the printed data at this degree");

  auto* apply = app.add_subcommand("apply", "apply an operator to a polynomial document");
  apply->add_option("input", inputPath, "operator document")->required();
  apply->add_option("--poly", polyPath, "polynomial document")->required();

  auto* moment = app.add_subcommand("moment-check", "truncated moment test on a sequence/measure");
  moment->add_option("input", inputPath, "sequence or measure document")->required();
  moment->add_option("--region", regionText, "region document path or inline JSON")->required();
  moment->add_option("--max-deg", level, "moment matrix level D");
  moment->add_option("--mode", mode, "block | local")->check(CLI::IsMember({"block", "local"}));
  moment->add_option("--order", orderFlag, "sequence truncation when converting a measure");

  auto* preserve = app.add_subcommand("preserve-check", "sampled positivity preservation");
  preserve->add_option("input", inputPath, "operator document")->required();
  preserve->add_option("--region", regionText, "region document path or inline JSON")->required();
  preserve->add_option("--trials", trials, "number of random positive inputs");
  preserve->add_option("--max-deg", deg, "degree of the random positive inputs");
  preserve->add_option("--grid", gridPoints, "sample points per axis (default 17)");

  auto* borcea = app.add_subcommand("borcea", "moment conditions on the canonical data");
  borcea->add_option("input", inputPath, "operator document")->required();
  borcea->add_option("--region", regionText, "region document path or inline JSON")->required();
  borcea->add_option("--max-deg", level, "moment matrix level D");
  borcea->add_option("--mode", mode, "block | local")->check(CLI::IsMember({"block", "local"}));
  borcea->add_option("--grid", gridPoints, "y-grid points per axis (default 5)");

  auto* demo = app.add_subcommand("demo", "self-contained worked examples");
  demo->add_option("name", demoName, "bisgaard | shift")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (canon->parsed()) {
      const Json input = loadJsonFile(inputPath);
      return chooseBackend(input, opts) == "exact" ? cmdCanon<ExactField>(input, maxDegFlag, opts)
                                                   : cmdCanon<ApproxField>(input, maxDegFlag, opts);
    }
    if (apply->parsed()) {
      const Json input = loadJsonFile(inputPath);
      return chooseBackend(input, opts) == "exact" ? cmdApply<ExactField>(input, polyPath, opts)
                                                   : cmdApply<ApproxField>(input, polyPath, opts);
    }
    if (moment->parsed()) {
      const Json input = loadJsonFile(inputPath);
      return chooseBackend(input, opts) == "exact"
                 ? cmdMomentCheck<ExactField>(input, regionText, level, mode, orderFlag, opts)
                 : cmdMomentCheck<ApproxField>(input, regionText, level, mode, orderFlag, opts);
    }
    if (preserve->parsed()) {
      const Json input = loadJsonFile(inputPath);
      const int grid = gridPoints > 0 ? gridPoints : 17;
      return chooseBackend(input, opts) == "exact"
                 ? cmdPreserveCheck<ExactField>(input, regionText, trials, deg, grid, opts)
                 : cmdPreserveCheck<ApproxField>(input, regionText, trials, deg, grid, opts);
    }
    if (borcea->parsed()) {
      const Json input = loadJsonFile(inputPath);
      const int grid = gridPoints > 0 ? gridPoints : 5;
      return chooseBackend(input, opts) == "exact"
                 ? cmdBorcea<ExactField>(input, regionText, level, mode, grid, opts)
                 : cmdBorcea<ApproxField>(input, regionText, level, mode, grid, opts);
    }
    if (demo->parsed()) {
      if (demoName == "bisgaard") return cmdDemoBisgaard(opts);
      if (demoName == "shift") return cmdDemoShift(opts);
      std::cerr << "error: unknown demo '" << demoName << "' (expected bisgaard | shift)\n";
      return 2;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
