// Build the shift operator T(A ⊗ x^k) = Phi(A) (x+y)^k over exact rationals,
// extract its canonical data, and confirm Q_m(A) = y^m Phi(A).

#include <iostream>

#include "opmoment/opmoment.hpp"

using namespace opmoment;

int main() {
  const Rational y(1, 2);
  const int maxDeg = 5;

  Matrix<ExactField> s(2, 2);
  s.at(0, 0) = ExactField::makeComplex(Rational(1), Rational(0));
  s.at(1, 1) = ExactField::makeComplex(Rational(2), Rational(0));
  auto phi = choiCongruenceMap<ExactField>(s);

  auto t = shiftExampleOperator(phi, y, maxDeg);
  auto rep = extractCanonical(t);

  std::cout << "shift operator with y = " << rationalToString(y) << "\n";
  for (int m = 0; m <= maxDeg; ++m) {
    auto q = rep.q(MultiIndex{static_cast<std::uint32_t>(m)}, 0);
    std::cout << "Q_" << m << "(B0) = " << formatPoly(q) << "   (expected scale y^" << m << " = "
              << rationalToString(rationalPow(y, static_cast<unsigned long>(m))) << ")\n";
  }

  // the canonical data reassemble the operator exactly
  std::cout << "reconstruct(extract(T)) == T: "
            << (reconstruct(rep) == t ? "yes" : "no") << "\n";
  return 0;
}
