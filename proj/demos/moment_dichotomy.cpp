// The explicit sequence whose vector compressions are all classical moment
// sequences while the block moment matrix is indefinite: compression-mode
// tests pass where the block-mode test fails.

#include <iostream>

#include "opmoment/opmoment.hpp"

using namespace opmoment;

int main() {
  auto s = bisgaardSequence(3);
  auto all = RegionK<ExactField>::allSpace(1);

  auto block = truncatedMomentTest(s, all, 1, MomentTestMode::block);
  std::cout << "block moment matrix at level 1: " << (block.pass ? "PSD" : "not PSD") << "\n";
  std::cout << "  " << formatMatrix<ExactField>(momentMatrix(s, 1)) << "\n";

  for (int level = 1; level <= 3; ++level) {
    auto comp = truncatedMomentTest(s, all, level, MomentTestMode::compression);
    std::cout << "compressed scalar Hankels at level " << level << ": "
              << (comp.pass ? "all PSD" : "not PSD") << " (" << comp.items.size() << " probes)\n";
  }

  std::cout << "largest stored entry: S_6 = "
            << formatMatrix<ExactField>(s.entry(MultiIndex{6})) << "\n";
  return 0;
}
