#include <catch2/catch.hpp>

#include "test_support.hpp"

using namespace opmoment;
using namespace opmoment::testing;

namespace {

MatrixPolynomial<ExactField> monoPoly(MultiIndex alpha, HermMatrix<ExactField> coeff) {
  const int nvars = static_cast<int>(alpha.size());
  return MatrixPolynomial<ExactField>::monomial(nvars, std::move(alpha), std::move(coeff));
}

}  // namespace

TEST_CASE("matrix polynomial evaluation") {
  auto a = hermFromReal<ExactField>({{1, 0}, {0, 0}});
  auto b = hermFromReal<ExactField>({{0, 1}, {1, 0}});

  SECTION("constant polynomial returns its coefficient") {
    auto p = MatrixPolynomial<ExactField>::constant(1, a);
    CHECK(eval(p, {Rational(5)}) == a);
  }
  SECTION("I x^2 at x = 3") {
    auto p = monoPoly(MultiIndex{2}, HermMatrix<ExactField>::identity(2));
    CHECK(eval(p, {Rational(3)}) == Rational(9) * HermMatrix<ExactField>::identity(2));
  }
  SECTION("A x1 x2 + B x1^2 at (2, 5) is 10A + 4B") {
    auto p = monoPoly(MultiIndex{1, 1}, a) + monoPoly(MultiIndex{2, 0}, b);
    auto expected = Rational(10) * a + Rational(4) * b;
    CHECK(eval(p, {Rational(2), Rational(5)}) == expected);
    CHECK(ExactField::realPart(expected.entry(0, 0)) == 10);
    CHECK(ExactField::realPart(expected.entry(0, 1)) == 4);
    CHECK(ExactField::realPart(expected.entry(1, 1)) == 0);
  }
  SECTION("dimension mismatch rejected") {
    auto p = MatrixPolynomial<ExactField>::constant(2, a);
    CHECK_THROWS_AS(eval(p, {Rational(1)}), std::invalid_argument);
  }
}

TEST_CASE("matrix polynomial derivative") {
  auto a = hermFromReal<ExactField>({{2, 1}, {1, 0}});

  SECTION("zeroth derivative is the identity") {
    auto p = monoPoly(MultiIndex{3}, a) + MatrixPolynomial<ExactField>::constant(1, a);
    CHECK(derivative(p, MultiIndex{0}) == p);
  }
  SECTION("d/dx A x^3 = 3 A x^2") {
    auto p = monoPoly(MultiIndex{3}, a);
    CHECK(derivative(p, MultiIndex{1}) == monoPoly(MultiIndex{2}, Rational(3) * a));
  }
  SECTION("d^(1,2) A x1^2 x2^3 = 12 A x1 x2") {
    auto p = monoPoly(MultiIndex{2, 3}, a);
    CHECK(derivative(p, MultiIndex{1, 2}) == monoPoly(MultiIndex{1, 1}, Rational(12) * a));
  }
  SECTION("derivatives compose additively") {
    DeterministicRng rng(5);
    for (int rep = 0; rep < 20; ++rep) {
      auto p = randomMatrixPolynomial<ExactField>(rng, 2, 2, 4);
      MultiIndex alpha{static_cast<std::uint32_t>(rng.nextInt(0, 2)),
                       static_cast<std::uint32_t>(rng.nextInt(0, 1))};
      MultiIndex beta{static_cast<std::uint32_t>(rng.nextInt(0, 1)),
                      static_cast<std::uint32_t>(rng.nextInt(0, 2))};
      CHECK(derivative(derivative(p, alpha), beta) == derivative(p, alpha + beta));
    }
  }
}

TEST_CASE("argument shift") {
  auto a = hermFromReal<ExactField>({{1, 2}, {2, -1}});

  SECTION("zero shift is the identity") {
    auto p = monoPoly(MultiIndex{2}, a);
    CHECK(shiftArg(p, {Rational(0)}) == p);
  }
  SECTION("A x^2 shifted by 1 is A (x^2 + 2x + 1)") {
    auto p = monoPoly(MultiIndex{2}, a);
    auto expected = monoPoly(MultiIndex{2}, a) + monoPoly(MultiIndex{1}, Rational(2) * a) +
                    MatrixPolynomial<ExactField>::constant(1, a);
    CHECK(shiftArg(p, {Rational(1)}) == expected);
  }
  SECTION("round trip and commutation with evaluation") {
    DeterministicRng rng(13);
    for (int rep = 0; rep < 25; ++rep) {
      const int n = static_cast<int>(rng.nextInt(1, 3));
      auto p = randomMatrixPolynomial<ExactField>(rng, n, 2, 5);
      std::vector<Rational> y, x;
      for (int i = 0; i < n; ++i) {
        y.push_back(randomReal<ExactField>(rng));
        x.push_back(randomReal<ExactField>(rng));
      }
      std::vector<Rational> negY(y);
      for (auto& v : negY) v = -v;
      CHECK(shiftArg(shiftArg(p, y), negY) == p);

      std::vector<Rational> xPlusY(x);
      for (std::size_t i = 0; i < xPlusY.size(); ++i) xPlusY[i] += y[i];
      CHECK(eval(shiftArg(p, y), x) == eval(p, xPlusY));
    }
  }
}

TEST_CASE("linearity of evaluation (exact backend)") {
  DeterministicRng rng(17);
  for (int rep = 0; rep < 25; ++rep) {
    auto p = randomMatrixPolynomial<ExactField>(rng, 2, 2, 3);
    auto q = randomMatrixPolynomial<ExactField>(rng, 2, 2, 3);
    Rational c = randomReal<ExactField>(rng);
    std::vector<Rational> x{randomReal<ExactField>(rng), randomReal<ExactField>(rng)};
    CHECK(eval(p.scaledReal(c) + q, x) == c * eval(p, x) + eval(q, x));
  }
}

TEST_CASE("zero polynomial degree sentinel") {
  MatrixPolynomial<ExactField> zero(2, 2);
  CHECK(zero.degree() == kZeroPolyDegree);
  CHECK(zero.degree() < 0);
  auto p = monoPoly(MultiIndex{1}, hermFromReal<ExactField>({{1}}));
  auto q = p - p;
  CHECK(q.degree() == kZeroPolyDegree);
  CHECK(q.isZero());
}

TEST_CASE("region membership is exact") {
  auto box = RegionK<ExactField>::box({Rational(-1), Rational(0)}, {Rational(1), Rational(2)});
  CHECK(box.contains({Rational(1), Rational(2)}));
  CHECK(box.contains({Rational(-1), Rational(0)}));
  CHECK_FALSE(box.contains({Rational(1, 1), Rational(2000001, 1000000)}));

  auto ball = RegionK<ExactField>::ball({Rational(0), Rational(0)}, Rational(1));
  CHECK(ball.contains({Rational(3, 5), Rational(4, 5)}));  // exactly on the sphere
  CHECK_FALSE(ball.contains({Rational(3, 5), Rational(800001, 1000000)}));

  CHECK(RegionK<ExactField>::allSpace(2).contains({Rational(100), Rational(-100)}));

  CHECK_THROWS_AS(RegionK<ExactField>::box({Rational(1)}, {Rational(0)}), std::invalid_argument);
  CHECK_THROWS_AS(RegionK<ExactField>::ball({Rational(0)}, Rational(0)), std::invalid_argument);
}

TEST_CASE("region shift translates parameters and records the offset") {
  auto box = RegionK<ExactField>::box({Rational(-1)}, {Rational(1)});
  auto shifted = box.shifted({Rational(1)});
  CHECK(shifted.lo()[0] == -2);
  CHECK(shifted.hi()[0] == 0);
  CHECK(shifted.shiftOffset()[0] == 1);
  CHECK(shifted.contains({Rational(-2)}));
  CHECK_FALSE(shifted.contains({Rational(1, 2)}));
  auto back = shifted.shifted({Rational(-1)});
  CHECK(back == box);
}

TEST_CASE("region constraint polynomials vanish on the boundary, positive inside") {
  auto box = RegionK<ExactField>::box({Rational(0)}, {Rational(1)});
  auto gs = box.constraintPolys();
  REQUIRE(gs.size() == 1);
  CHECK(gs[0].eval({Rational(0)}) == 0);
  CHECK(gs[0].eval({Rational(1)}) == 0);
  CHECK(gs[0].eval({Rational(1, 2)}) == Rational(1, 4));
  CHECK(gs[0].eval({Rational(2)}) == Rational(-2));

  auto ball = RegionK<ExactField>::ball({Rational(1), Rational(0)}, Rational(2));
  auto gb = ball.constraintPolys();
  REQUIRE(gb.size() == 1);
  CHECK(gb[0].eval({Rational(1), Rational(0)}) == Rational(4));
  CHECK(gb[0].eval({Rational(3), Rational(0)}) == Rational(0));
  CHECK(gb[0].eval({Rational(4), Rational(0)}) == Rational(-5));

  CHECK(RegionK<ExactField>::allSpace(3).constraintPolys().empty());
}

TEST_CASE("grid-sampled positivity") {
  const auto eye = HermMatrix<ExactField>::identity(2);

  SECTION("I x^2 on [-1,1] passes with worst point 0") {
    auto p = monoPoly(MultiIndex{2}, eye);
    auto box = RegionK<ExactField>::box({Rational(-1)}, {Rational(1)});
    auto report = posSample(p, box);
    CHECK(report.pass);
    CHECK(report.worstPoint == std::vector<Rational>{Rational(0)});
    CHECK(report.worstMinEig == Approx(0.0).margin(1e-12));
    CHECK(report.pointsTested == 17);
  }
  SECTION("I (x - 2) on [0,1] fails with witness x = 0") {
    auto p = monoPoly(MultiIndex{1}, eye) +
             MatrixPolynomial<ExactField>::constant(1, Rational(-2) * eye);
    auto box = RegionK<ExactField>::box({Rational(0)}, {Rational(1)});
    auto report = posSample(p, box);
    CHECK_FALSE(report.pass);
    CHECK(report.worstPoint == std::vector<Rational>{Rational(0)});
    CHECK(report.worstMinEig == Approx(-2.0).margin(1e-12));
  }
  SECTION("constant diag(1,-1) fails everywhere; first grid point reported") {
    auto p = MatrixPolynomial<ExactField>::constant(
        1, HermMatrix<ExactField>::diagReal({Rational(1), Rational(-1)}));
    auto box = RegionK<ExactField>::box({Rational(-1)}, {Rational(1)});
    auto report = posSample(p, box);
    CHECK_FALSE(report.pass);
    CHECK(report.worstMinEig == Approx(-1.0).margin(1e-12));
    CHECK(report.worstPoint == std::vector<Rational>{Rational(-1)});
  }
  SECTION("allSpace needs an explicit bounding box") {
    auto p = monoPoly(MultiIndex{2}, eye);
    auto all = RegionK<ExactField>::allSpace(1);
    CHECK_THROWS_AS(posSample(p, all), std::invalid_argument);
    GridSpec<ExactField> grid;
    grid.boundingBox = std::make_pair(std::vector<Rational>{Rational(-2)},
                                      std::vector<Rational>{Rational(2)});
    CHECK(posSample(p, all, grid).pass);
  }
  SECTION("empty grid-region intersection is an error") {
    auto p = MatrixPolynomial<ExactField>::constant(2, eye);
    auto tiny = RegionK<ExactField>::ball({Rational(1, 2), Rational(1, 2)}, Rational(1, 100));
    GridSpec<ExactField> grid;
    grid.pointsPerAxis = 2;
    CHECK_THROWS_AS(posSample(p, tiny, grid), std::invalid_argument);
  }
  SECTION("Gram squares never fail") {
    DeterministicRng rng(41);
    auto box = RegionK<ExactField>::box({Rational(-1), Rational(-1)}, {Rational(1), Rational(1)});
    GridSpec<ExactField> grid;
    grid.pointsPerAxis = 5;
    for (int rep = 0; rep < 10; ++rep) {
      RectMatrixPoly<ExactField> g;
      g.nvars = 2;
      g.rows = 2;
      g.cols = 2;
      for (const auto& alpha : monomialsUpTo(2, 2))
        g.terms.emplace(alpha, randomMatrix<ExactField>(rng, 2, 2));
      CHECK(posSample(gramSquare(g), box, grid, 1e-10).pass);
    }
  }
}

TEST_CASE("scalar polynomial arithmetic") {
  auto x = ScalarPolynomial<ExactField>::variable(1, 0);
  auto one = ScalarPolynomial<ExactField>::constant(1, Rational(1));
  auto g = (x - one) * (one.scaled(Rational(3)) - x);  // (x-1)(3-x)
  CHECK(g.eval({Rational(1)}) == 0);
  CHECK(g.eval({Rational(3)}) == 0);
  CHECK(g.eval({Rational(2)}) == 1);
  CHECK(g.degree() == 2);

  auto p = MatrixPolynomial<ExactField>::constant(1, hermFromReal<ExactField>({{1, 0}, {0, 2}}));
  auto gp = g * p;
  CHECK(gp.degree() == 2);
  CHECK(eval(gp, {Rational(2)}) == hermFromReal<ExactField>({{1, 0}, {0, 2}}));
}
