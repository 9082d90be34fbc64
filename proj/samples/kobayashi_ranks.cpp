// Kobayashi ranks of Lambda/(F) over Z_3 and over Z_3[sqrt 3].
#include <iostream>

#include "iwg/kobayashi.hpp"

using namespace iwg;

int main() {
  auto zp = DvrRing::zp(3, 36);
  auto ram = DvrRing::make(3, 2, 1, {}, {{-3}, {0}}, 60);
  for (const auto& ring : {zp, ram}) {
    // F = pi * (X^2 + pi X + pi^2)
    DvrElement pi = ring->uniformizer();
    Poly<DvrElement> f({pi * pi * pi, pi * pi, pi}, ring->zero());
    auto F = IwasawaPoly<DvrElement>::exact(f);
    std::cout << ring->describe() << "\n";
    auto show = [](const NablaResult& r) { return r.defined ? std::to_string(r.value) : std::string("undefined"); };
    for (int n = 1; n <= 3; ++n)
      std::cout << "  n=" << n << "  definition " << show(nabla_oracle(F, n)) << "  e*ord " << show(nabla_char_series(F, n))
                << "\n";
    auto t = nabla_asymptotic(F, 1, 4);
    std::cout << "  mu=" << t.mu_uniformizer << " (uniformizer units)  lambda=" << t.invariants.lambda << "  agrees from n="
              << (t.threshold ? std::to_string(*t.threshold) : "-") << "\n";
  }
}
