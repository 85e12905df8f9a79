#include <catch2/catch.hpp>

#include "test_support.hpp"

using namespace opmoment;
using namespace opmoment::testing;

namespace {

template <ScalarField F>
PolyOperator<F> multiplicationByX(std::size_t d, int maxDeg) {
  // T(A ⊗ x^k) = A ⊗ x^{k+1}, univariate
  return PolyOperator<F>::fromImageFn(1, d, maxDeg, [&](std::size_t i, const MultiIndex& alpha) {
    return MatrixPolynomial<F>::monomial(1, alpha + MultiIndex{1}, hermBasisElement<F>(d, i));
  });
}

// The Remark's binomial transform computed directly from the images; a test-side
// route independent of extractCanonical.
template <ScalarField F>
MatrixPolynomial<F> binomialTransformOracle(const PolyOperator<F>& t, const MultiIndex& beta,
                                            std::size_t basisIndex) {
  MatrixPolynomial<F> acc(t.nvars(), t.dim());
  forEachSubIndex(beta, [&](const MultiIndex& alpha) {
    const MultiIndex rest = beta.minus(alpha);
    long sign = (rest.totalDegree() % 2 == 0) ? 1 : -1;
    acc += t.image(basisIndex, alpha)
               .mulMonomial(rest)
               .scaledReal(F::fromLong(sign * static_cast<long>(binomialProduct(beta, alpha))));
  });
  return acc;
}

}  // namespace

TEST_CASE("applyOperator extends basis images linearly") {
  SECTION("identity operator fixes every polynomial") {
    auto t = PolyOperator<ExactField>::identity(2, 2, 3);
    DeterministicRng rng(3);
    for (int rep = 0; rep < 10; ++rep) {
      auto p = randomMatrixPolynomial<ExactField>(rng, 2, 2, 3);
      CHECK(applyOperator(t, p) == p);
    }
  }
  SECTION("linearity") {
    DeterministicRng rng(9);
    auto t = reconstruct(extractCanonical(multiplicationByX<ExactField>(2, 4)));
    for (int rep = 0; rep < 10; ++rep) {
      auto p = randomMatrixPolynomial<ExactField>(rng, 1, 2, 3);
      auto q = randomMatrixPolynomial<ExactField>(rng, 1, 2, 3);
      Rational c = randomReal<ExactField>(rng);
      CHECK(applyOperator(t, p.scaledReal(c) + q) ==
            applyOperator(t, p).scaledReal(c) + applyOperator(t, q));
    }
  }
  SECTION("degree overflow is rejected") {
    auto t = PolyOperator<ExactField>::identity(1, 2, 2);
    auto p = MatrixPolynomial<ExactField>::monomial(1, MultiIndex{3},
                                                    HermMatrix<ExactField>::identity(2));
    CHECK_THROWS_AS(applyOperator(t, p), std::invalid_argument);
  }
}

TEST_CASE("canonical representation of the identity operator") {
  auto t = PolyOperator<ExactField>::identity(1, 2, 3);
  auto rep = extractCanonical(t);
  for (std::size_t i = 0; i < hermBasisSize(2); ++i) {
    CHECK(rep.q(MultiIndex{0}, i) ==
          MatrixPolynomial<ExactField>::constant(1, hermBasisElement<ExactField>(2, i)));
    for (std::uint32_t k = 1; k <= 3; ++k) CHECK(rep.q(MultiIndex{k}, i).isZero());
  }
}

TEST_CASE("canonical representation of multiplication by x") {
  auto t = multiplicationByX<ExactField>(2, 4);
  auto rep = extractCanonical(t);
  for (std::size_t i = 0; i < hermBasisSize(2); ++i) {
    auto expected = MatrixPolynomial<ExactField>::monomial(1, MultiIndex{1},
                                                           hermBasisElement<ExactField>(2, i));
    CHECK(rep.q(MultiIndex{0}, i) == expected);
    // telescoping binomial sum: all higher Q vanish
    for (std::uint32_t k = 1; k <= 4; ++k) {
      CHECK(rep.q(MultiIndex{k}, i).isZero());
      CHECK(binomialTransformOracle(t, MultiIndex{k}, i).isZero());
    }
  }
  // and the operator defined by Q_0 = (A -> A x) alone multiplies by x
  CanonicalRep<ExactField> onlyQ0(1, 2, 4);
  for (std::size_t i = 0; i < hermBasisSize(2); ++i)
    onlyQ0.set(MultiIndex{0}, i,
               MatrixPolynomial<ExactField>::monomial(1, MultiIndex{1},
                                                      hermBasisElement<ExactField>(2, i)));
  auto rebuilt = reconstruct(onlyQ0);
  DeterministicRng rng(21);
  auto a = randomHermMatrix<ExactField>(rng, 2);
  for (std::uint32_t k = 0; k <= 3; ++k) {
    auto p = MatrixPolynomial<ExactField>::monomial(1, MultiIndex{k}, a);
    CHECK(applyOperator(rebuilt, p) ==
          MatrixPolynomial<ExactField>::monomial(1, MultiIndex{k + 1}, a));
  }
}

TEST_CASE("round trip reconstruct(extractCanonical(T)) = T") {
  DeterministicRng rng(33);
  SECTION("exact backend, exact equality") {
    for (int rep = 0; rep < 20; ++rep) {
      const int n = static_cast<int>(rng.nextInt(1, 2));
      const std::size_t d = static_cast<std::size_t>(rng.nextInt(1, 2));
      const int maxDeg = static_cast<int>(rng.nextInt(0, 3));
      auto t = PolyOperator<ExactField>::fromImageFn(
          n, d, maxDeg, [&](std::size_t, const MultiIndex&) {
            return randomMatrixPolynomial<ExactField>(rng, n, d, maxDeg);
          });
      CHECK(reconstruct(extractCanonical(t)) == t);
    }
  }
  SECTION("approx backend, entrywise 1e-10") {
    for (int rep = 0; rep < 5; ++rep) {
      auto t = PolyOperator<ApproxField>::fromImageFn(
          1, 2, 3, [&](std::size_t, const MultiIndex&) {
            return randomMatrixPolynomial<ApproxField>(rng, 1, 2, 3);
          });
      auto back = reconstruct(extractCanonical(t));
      for (std::size_t i = 0; i < hermBasisSize(2); ++i)
        for (const auto& alpha : monomialsUpTo(1, 3)) {
          auto diff = t.image(i, alpha) - back.image(i, alpha);
          for (const auto& [idx, coeff] : diff.terms())
            CHECK(coeff.maxAbsEntry() <= 1e-10);
        }
    }
  }
}

TEST_CASE("canonical data are unique: extract after reconstruct is the identity") {
  DeterministicRng rng(55);
  for (int rep = 0; rep < 10; ++rep) {
    CanonicalRep<ExactField> c(2, 2, 2);
    for (const auto& beta : monomialsUpTo(2, 2))
      for (std::size_t i = 0; i < hermBasisSize(2); ++i)
        c.set(beta, i, randomMatrixPolynomial<ExactField>(rng, 2, 2, 2));
    CHECK(extractCanonical(reconstruct(c)) == c);

    // perturbing one Q cell changes some image
    auto perturbed = c;
    perturbed.set(MultiIndex{1, 0}, 0,
                  c.q(MultiIndex{1, 0}, 0) +
                      MatrixPolynomial<ExactField>::constant(2, HermMatrix<ExactField>::identity(2)));
    CHECK(reconstruct(perturbed) != reconstruct(c));
  }
}

TEST_CASE("the shift operator example") {
  SECTION("images are shifted monomials") {
    const Rational y(2);
    auto choi = choiIdentityMap<ExactField>(2);
    auto t = shiftExampleOperator(choi, y, 3);
    DeterministicRng rng(4);
    auto a = randomHermMatrix<ExactField>(rng, 2);
    for (std::uint32_t k = 0; k <= 3; ++k) {
      auto p = MatrixPolynomial<ExactField>::monomial(1, MultiIndex{k}, a);
      CHECK(applyOperator(t, p) == shiftArg(p, {y}));  // A (x+y)^k
    }
  }
  SECTION("images with a nontrivial map match T(A ⊗ x^k) = Phi(A) (x+y)^k") {
    const Rational y(-3, 2);
    auto choi = choiDepolarizingMap<ExactField>(2);
    auto t = shiftExampleOperator(choi, y, 3);
    DeterministicRng rng(8);
    auto a = randomHermMatrix<ExactField>(rng, 2);
    for (std::uint32_t k = 0; k <= 3; ++k) {
      auto p = MatrixPolynomial<ExactField>::monomial(1, MultiIndex{k}, a);
      auto expected = shiftArg(
          MatrixPolynomial<ExactField>::monomial(1, MultiIndex{k}, applyChoiMap(choi, a)), {y});
      CHECK(applyOperator(t, p) == expected);
    }
  }
  SECTION("y = 0 gives Q_0 = Phi and nothing else") {
    auto choi = choiDepolarizingMap<ExactField>(2);
    auto t = shiftExampleOperator(choi, Rational(0), 3);
    auto rep = extractCanonical(t);
    for (std::size_t i = 0; i < hermBasisSize(2); ++i) {
      auto expected = MatrixPolynomial<ExactField>::constant(
          1, applyChoiMap(choi, hermBasisElement<ExactField>(2, i)));
      CHECK(rep.q(MultiIndex{0}, i) == expected);
      for (std::uint32_t m = 1; m <= 3; ++m) CHECK(rep.q(MultiIndex{m}, i).isZero());
    }
  }
  SECTION("y = 2, identity map: Q_m(A) = 2^m A, against the direct binomial sum") {
    auto t = shiftExampleOperator(choiIdentityMap<ExactField>(2), Rational(2), 3);
    auto rep = extractCanonical(t);
    for (std::size_t i = 0; i < hermBasisSize(2); ++i)
      for (std::uint32_t m = 0; m <= 3; ++m) {
        auto expected = MatrixPolynomial<ExactField>::constant(
            1, rationalPow(Rational(2), m) * hermBasisElement<ExactField>(2, i));
        CHECK(rep.q(MultiIndex{m}, i) == expected);
        CHECK(binomialTransformOracle(t, MultiIndex{m}, i) == expected);
      }
  }
  SECTION("congruence stand-in with an irrational scale, approx backend") {
    const double s2 = std::sqrt(3.0);
    Matrix<ApproxField> s(2, 2);
    s.at(0, 0) = {1.0, 0.0};
    s.at(1, 1) = {s2, 0.0};
    auto choi = choiCongruenceMap<ApproxField>(s);
    auto t = shiftExampleOperator(choi, 1.0, 4);
    auto rep = extractCanonical(t);
    for (std::size_t i = 0; i < hermBasisSize(2); ++i) {
      auto sas = conjugateBy(s, hermBasisElement<ApproxField>(2, i));
      for (std::uint32_t m = 0; m <= 4; ++m) {
        auto q = rep.q(MultiIndex{m}, i);
        auto diff = q - MatrixPolynomial<ApproxField>::constant(1, sas);
        double worst = 0.0;
        for (const auto& [idx, coeff] : diff.terms()) worst = std::max(worst, coeff.maxAbsEntry());
        CHECK(worst <= 1e-10);
      }
    }
  }
  SECTION("reconstructing from the example's canonical data returns the operator") {
    auto choi = choiCongruenceMap<ExactField>(
        [] {
          Matrix<ExactField> s(2, 2);
          s.at(0, 0) = ExactField::makeComplex(Rational(1), Rational(0));
          s.at(1, 1) = ExactField::makeComplex(Rational(2), Rational(0));
          return s;
        }());
    auto t = shiftExampleOperator(choi, Rational(1, 2), 4);
    CHECK(reconstruct(extractCanonical(t)) == t);
  }
}
