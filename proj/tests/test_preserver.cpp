#include <catch2/catch.hpp>

#include "test_support.hpp"

using namespace opmoment;
using namespace opmoment::testing;

namespace {

using EF = ExactField;

CovariantMeasureFamily<EF> randomFamily(DeterministicRng& rng, const RegionK<EF>& region,
                                        std::size_t d, int maxAtoms, long offsetDenom = 4) {
  std::vector<std::vector<Rational>> offsets;
  std::vector<HermMatrix<EF>> chois;
  const int count = static_cast<int>(rng.nextInt(1, maxAtoms));
  for (int i = 0; i < count; ++i) {
    std::vector<Rational> c;
    for (int v = 0; v < region.nvars(); ++v)
      c.push_back(Rational(rng.nextInt(-offsetDenom / 2, offsetDenom / 2), offsetDenom));
    offsets.push_back(std::move(c));
    chois.push_back(randomChoi<EF>(rng, d));
  }
  return CovariantMeasureFamily<EF>(region, std::move(offsets), std::move(chois), d);
}

std::vector<std::vector<Rational>> halfBoxGrid(int n, int perAxis) {
  auto core = RegionK<EF>::box(std::vector<Rational>(n, Rational(-1, 2)),
                               std::vector<Rational>(n, Rational(1, 2)));
  GridSpec<EF> spec;
  spec.pointsPerAxis = perAxis;
  return regionGridPoints(core, spec);
}

}  // namespace

TEST_CASE("family-built operators") {
  SECTION("single zero offset with the identity map is the identity operator") {
    CovariantMeasureFamily<EF> fam(RegionK<EF>::allSpace(1), {{Rational(0)}},
                                   {choiIdentityMap<EF>(2)}, 2);
    CHECK(buildFromFamily(fam, 3) == PolyOperator<EF>::identity(1, 2, 3));
  }
  SECTION("offsets +-1 with half the identity map: x^2 maps to x^2 + 1") {
    auto half = Rational(1, 2) * choiIdentityMap<EF>(2);
    CovariantMeasureFamily<EF> fam(RegionK<EF>::allSpace(1), {{Rational(1)}, {Rational(-1)}},
                                   {half, half}, 2);
    auto t = buildFromFamily(fam, 2);
    DeterministicRng rng(3);
    auto a = randomHermMatrix<EF>(rng, 2);
    auto p = MatrixPolynomial<EF>::monomial(1, MultiIndex{2}, a);
    auto expected = MatrixPolynomial<EF>::monomial(1, MultiIndex{2}, a) +
                    MatrixPolynomial<EF>::constant(1, a);
    CHECK(applyOperator(t, p) == expected);
  }
  SECTION("canonical data equal the monomial integrals of the family measure") {
    DeterministicRng rng(7);
    for (int rep = 0; rep < 10; ++rep) {
      const int n = static_cast<int>(rng.nextInt(1, 2));
      auto fam = randomFamily(rng, RegionK<EF>::allSpace(n), 2, 3);
      auto rep_ = extractCanonical(buildFromFamily(fam, 3));
      auto nu = fam.measure();
      for (const auto& beta : monomialsUpTo(static_cast<std::size_t>(n), 3))
        for (std::size_t i = 0; i < hermBasisSize(2); ++i) {
          // right-hand side: integral of t^beta against nu[B_i]
          HermMatrix<EF> viaMeasure = HermMatrix<EF>::zero(2);
          for (const auto& atom : nu.atoms())
            viaMeasure += evalMonomial<EF>(beta, atom.point) *
                          applyChoiMap(atom.choi, hermBasisElement<EF>(2, i));
          CHECK(rep_.q(beta, i) == MatrixPolynomial<EF>::constant(n, viaMeasure));
        }
    }
  }
}

TEST_CASE("random positive polynomials land in Pos(K)") {
  SECTION("degree zero is a PSD constant") {
    auto all = RegionK<EF>::allSpace(2);
    auto p = randomPositivePoly<EF>(all, 0, 2, 42);
    CHECK(p.degree() <= 0);
    CHECK(psdCheckExact(eval(p, {Rational(0), Rational(0)})).isPsd);
  }
  SECTION("allSpace: pointwise PSD wherever we look (exact)") {
    auto all = RegionK<EF>::allSpace(1);
    DeterministicRng rng(11);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto p = randomPositivePoly<EF>(all, 4, 2, seed);
      for (int rep = 0; rep < 5; ++rep)
        CHECK(psdCheckExact(eval(p, {Rational(rng.nextInt(-8, 8), 2)})).isPsd);
    }
  }
  SECTION("box constraints contribute and stay positive on K") {
    auto box = RegionK<EF>::box({Rational(-1)}, {Rational(1)});
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      auto p = randomPositivePoly<EF>(box, 2, 2, seed);
      CHECK(posSample(p, box, {}, 1e-10).pass);
    }
  }
  SECTION("ball region") {
    auto ball = RegionK<EF>::ball({Rational(0), Rational(0)}, Rational(1));
    GridSpec<EF> grid;
    grid.pointsPerAxis = 7;
    for (std::uint64_t seed = 0; seed < 10; ++seed)
      CHECK(posSample(randomPositivePoly<EF>(ball, 2, 2, seed), ball, grid, 1e-10).pass);
  }
}

TEST_CASE("sampled preservation check") {
  auto box = RegionK<EF>::box({Rational(-1)}, {Rational(1)});
  SECTION("identity passes") {
    auto report = checkPreserverSampling(PolyOperator<EF>::identity(1, 2, 2), box, 10, 2);
    CHECK(report.pass);
    CHECK(report.trials == 10);
  }
  SECTION("negation fails immediately with a strict witness") {
    auto report = checkPreserverSampling(PolyOperator<EF>::negation(1, 2, 2), box, 5, 2);
    REQUIRE_FALSE(report.pass);
    CHECK(report.worstTrial == 0);
    CHECK(report.worstMinEig < -1e-6);
    CHECK(report.worstPoint.size() == 1);
  }
  SECTION("family-built operators pass when sampling stays in the window") {
    DeterministicRng rng(15);
    auto k2 = RegionK<EF>::box({Rational(-1), Rational(-1)}, {Rational(1), Rational(1)});
    GridSpec<EF> window;
    window.pointsPerAxis = 7;
    window.boundingBox = std::make_pair(std::vector<Rational>{Rational(-1, 2), Rational(-1, 2)},
                                        std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    for (int rep = 0; rep < 5; ++rep) {
      auto fam = randomFamily(rng, k2, 2, 3);
      auto t = buildFromFamily(fam, 2);
      CHECK(checkPreserverSampling(t, k2, 5, 2, window, 1e-8, 100 + rep).pass);
    }
  }
  SECTION("degree overflow rejected") {
    CHECK_THROWS_AS(checkPreserverSampling(PolyOperator<EF>::identity(1, 2, 1), box, 1, 2),
                    std::invalid_argument);
  }
}

TEST_CASE("necessary moment checks on the canonical data") {
  auto k2 = RegionK<EF>::box({Rational(-1), Rational(-1)}, {Rational(1), Rational(1)});

  SECTION("family operators pass block mode when y + c stays in K") {
    DeterministicRng rng(19);
    auto yGrid = halfBoxGrid(2, 3);
    for (int rep = 0; rep < 5; ++rep) {
      auto fam = randomFamily(rng, k2, 2, 3);
      auto t = buildFromFamily(fam, 4);
      auto report = borceaNecessaryCheck(t, k2, yGrid, 2, MomentTestMode::block);
      CHECK(report.pass);
      CHECK(report.cells.size() == yGrid.size() * defaultMatrixProbes<EF>(2).size());
    }
  }
  SECTION("block pass implies local pass on the same probes") {
    DeterministicRng rng(23);
    auto yGrid = halfBoxGrid(2, 3);
    for (int rep = 0; rep < 5; ++rep) {
      auto fam = randomFamily(rng, k2, 2, 3);
      auto t = buildFromFamily(fam, 4);
      REQUIRE(borceaNecessaryCheck(t, k2, yGrid, 2, MomentTestMode::block).pass);
      CHECK(borceaNecessaryCheck(t, k2, yGrid, 2, MomentTestMode::compression).pass);
    }
  }
  SECTION("grid point outside K rejected") {
    auto t = PolyOperator<EF>::identity(2, 2, 2);
    CHECK_THROWS_AS(
        borceaNecessaryCheck(t, k2, {{Rational(2), Rational(0)}}, 1, MomentTestMode::block),
        std::invalid_argument);
  }
  SECTION("level beyond the truncation rejected") {
    auto t = PolyOperator<EF>::identity(2, 2, 2);
    CHECK_THROWS_AS(
        borceaNecessaryCheck(t, k2, {{Rational(0), Rational(0)}}, 2, MomentTestMode::block),
        std::invalid_argument);
  }
}

TEST_CASE("the bisgaard operator separates the two moment conditions") {
  auto op = bisgaardOperator(6);
  auto all = RegionK<EF>::allSpace(1);
  std::vector<std::vector<Rational>> yGrid{{Rational(-1)}, {Rational(0)}, {Rational(1)}};

  SECTION("block mode fails at level 1") {
    auto report = borceaNecessaryCheck(op, all, yGrid, 1, MomentTestMode::block);
    REQUIRE_FALSE(report.pass);
    REQUIRE(report.firstFailCell.has_value());
    // the first failing cell is the first probe (E_11) at the first grid point,
    // whose sequence is exactly the published one
    const auto& cell = report.cells[*report.firstFailCell];
    CHECK(cell.probeIndex == 0);
    REQUIRE_FALSE(cell.verdict.pass);
  }
  SECTION("compression mode passes at levels 1..3 for every y and probe") {
    for (int level = 1; level <= 3; ++level)
      CHECK(borceaNecessaryCheck(op, all, yGrid, level, MomentTestMode::compression).pass);
  }
  SECTION("probe E_11 recovers the published sequence through the canonical data") {
    auto rep = extractCanonical(op);
    auto s = bisgaardSequence(3);
    auto e11 = hermBasisElement<EF>(2, 0);
    for (std::uint32_t k = 0; k <= 6; ++k)
      CHECK(rep.qValue(MultiIndex{k}, e11, {Rational(1, 2)}) == s.entry(MultiIndex{k}));
  }
}

TEST_CASE("negative controls fail both checks") {
  auto k2 = RegionK<EF>::box({Rational(-1), Rational(-1)}, {Rational(1), Rational(1)});
  auto yGrid = halfBoxGrid(2, 3);
  GridSpec<EF> window;
  window.pointsPerAxis = 7;
  window.boundingBox = std::make_pair(std::vector<Rational>{Rational(-1, 2), Rational(-1, 2)},
                                      std::vector<Rational>{Rational(1, 2), Rational(1, 2)});

  SECTION("negation operator") {
    auto t = PolyOperator<EF>::negation(2, 2, 4);
    CHECK_FALSE(checkPreserverSampling(t, k2, 3, 2, window).pass);
    CHECK_FALSE(borceaNecessaryCheck(t, k2, yGrid, 1, MomentTestMode::block).pass);
  }
  SECTION("sign-corrupted family operator") {
    DeterministicRng rng(27);
    auto fam = randomFamily(rng, k2, 2, 3);
    const auto atomIndex = static_cast<std::size_t>(rng.nextU64() % fam.offsets().size());
    auto corrupted = buildFromFamilyNegatedAtom(fam, atomIndex, 4);
    auto sampling = checkPreserverSampling(corrupted, k2, 10, 2, window, 1e-8);
    REQUIRE_FALSE(sampling.pass);
    CHECK(sampling.worstMinEig < -1e-6);
    CHECK_FALSE(borceaNecessaryCheck(corrupted, k2, yGrid, 2, MomentTestMode::block).pass);
  }
}

TEST_CASE("bisgaard demo asserts all published facts") {
  auto report = bisgaardDemo();
  CHECK(report.allExpected);
  CHECK(report.hankel == hermFromReal<EF>({{4, 0, 0, 2}, {0, 1, 2, 0}, {0, 2, 1, 0}, {2, 0, 0, 4}}));
  CHECK_FALSE(report.hankelVerdict.isPsd);
  CHECK(report.hankelMinEig == Approx(-1.0).margin(1e-9));
  CHECK_FALSE(report.blockCheck.pass);
  REQUIRE(report.localChecks.size() == 3);
  for (const auto& check : report.localChecks) CHECK(check.pass);
  CHECK(report.sampling.pass);
}
