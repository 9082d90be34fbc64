// Valuations of the logarithmic matrix entries at eps_n for p = 3, a_p = 3.
#include <iostream>

#include "iwg/coleman.hpp"

int main() {
  iwg::ColemanFamily<iwg::Integer> fam(3, iwg::Integer(3), 5);
  for (int n = 1; n <= 5; ++n) {
    auto s = iwg::h_valuation(fam, n, true), f = iwg::h_valuation(fam, n, false);
    std::cout << "n=" << n << "  ord H#=" << s.computed.str() << "  ord Hb=" << f.computed.str()
              << "  det ok=" << fam.verify_det(n) << "\n";
  }
}
