// e_n - e_{n-1} for an a_p = 0 curve with one prime above p.
#include <iostream>

#include "iwg/growth.hpp"

int main() {
  iwg::GrowthParams g;
  g.p = 3;
  g.d = 1;
  g.odd_signs = {iwg::Sign::flat};
  g.even_signs = {iwg::Sign::sharp};
  g.lambda = 1;
  g.n_min = 1;
  g.n_max = 6;
  g.e_baseline = iwg::Integer(0);
  for (const auto& r : iwg::emit_growth_table(g).rows)
    std::cout << "n=" << r.n << "  F_v=" << r.F_v << "  delta=" << r.delta_e << "  e_n=" << *r.cumulative_e << "\n";
}
