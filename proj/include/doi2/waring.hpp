#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <vector>

namespace doi2 {

// One representation target = c0^3 + c1^3 + c2^3 + c3^3 with c0<=c1<=c2<=c3.
// Construction sorts the components and recomputes the target, so the
// invariant holds by construction.
struct CubeQuad {
  std::array<mpz_class, 4> c;
  mpz_class target;

  CubeQuad(mpz_class a, mpz_class b, mpz_class d, mpz_class e);

  bool operator==(const CubeQuad& o) const { return c == o.c; }
  bool operator<(const CubeQuad& o) const { return c < o.c; }
};

// All four-cube representations of target as nondecreasing quadruples,
// sorted lexicographically.  allow_zero=false restricts to strictly
// positive components.  Meet-in-the-middle over cube-pair sums; targets
// above 10^12 throw std::invalid_argument ("target too large for direct
// enumeration") -- huge showcase targets are reached with tower_lift.
std::vector<CubeQuad> four_cube_reps(const mpz_class& target, bool allow_zero = true,
                                     unsigned workers = 1);

// Number of ordered 4-tuples the unordered list accounts for: each quad
// contributes 4! / (product of multiplicities!) orderings.
uint64_t ordered_count(const std::vector<CubeQuad>& quads);

// Scale a representation of 10^(2+3a) by 10^b to one of 10^(2+3(a+b)).
// Quads whose target is not such a power of ten throw std::invalid_argument.
CubeQuad tower_lift(const CubeQuad& root, unsigned long b);

// Filter out decimally divisible quads.  weak: drop quads where *every*
// component is divisible by 10; strong: keep only quads where *no*
// component is divisible by 10 (zero counts as divisible).
enum class PrimitiveRule { weak, strong };
std::vector<CubeQuad> primitive_solutions(const std::vector<CubeQuad>& quads,
                                          PrimitiveRule rule = PrimitiveRule::weak);

}  // namespace doi2
