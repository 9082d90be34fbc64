#pragma once

#include <chrono>

#include "iwg/formal_group.hpp"

namespace iwg::testing {

/// y^2 = x^3 - x at p = 3, with a_3 replaced by `a3` (0 is the true value).
inline EulerData curve(long a3) {
  EulerData E;
  E.g = 1;
  E.p = 3;
  E.u1 = {1};
  auto m = [](long v) { return MatZ::from_rows({{v}}, Integer(0)); };
  E.factors[2] = {m(0), m(0)};
  E.bad_primes = {2};
  const long aq[][2] = {{3, a3}, {5, -2}, {7, 0}, {11, 0}, {13, 6}, {17, 2}, {19, 0}, {23, 0}};
  for (const auto& r : aq) E.factors[r[0]] = {m(r[1]), m(1)};
  E.validate();
  return E;
}

/// Multiplication by a + b sqrt2 on Z[sqrt2] in the basis 1, sqrt2.
inline MatZ z_sqrt2(long a, long b) { return MatZ::from_rows({{a, 2 * b}, {b, a}}, Integer(0)); }

/// A g = 2 example over Z[sqrt2] with C_3 = 3 sqrt2.
inline EulerData rank_two() {
  EulerData E;
  E.g = 2;
  E.p = 3;
  E.u1 = {1, 1};
  MatZ I = MatZ::identity(2, Integer(0));
  E.factors[2] = {z_sqrt2(1, 1), I};
  E.factors[3] = {z_sqrt2(0, 3), I};
  for (long q : {5L, 7L, 11L, 13L, 17L, 19L, 23L}) E.factors[q] = {z_sqrt2(q % 3, q % 5 % 2), I};
  E.validate();
  return E;
}

/// A g = 2 example over Z[sqrt3] with C_3 = sqrt3: nilpotent mod 3 but not divisible by 3.
inline EulerData rank_two_nilpotent() {
  EulerData E;
  E.g = 2;
  E.p = 3;
  E.u1 = {1, 1};
  MatZ I = MatZ::identity(2, Integer(0));
  auto z3 = [](long a, long b) { return MatZ::from_rows({{a, 3 * b}, {b, a}}, Integer(0)); };
  E.factors[2] = {z3(1, 1), I};
  E.factors[3] = {z3(0, 1), I};
  for (long q : {5L, 7L, 11L, 13L, 17L, 19L, 23L}) E.factors[q] = {z3(q % 3, 0), I};
  E.validate();
  return E;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace iwg::testing
