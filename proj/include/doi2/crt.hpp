#pragma once

#include <gmpxx.h>

#include <vector>

namespace doi2 {

// One congruence x = residue (mod modulus), modulus >= 1.
struct Congruence {
  mpz_class residue;
  mpz_class modulus;
};

struct CongruenceSystem {
  std::vector<Congruence> congruences;
};

// x = residue (mod modulus) with 0 <= residue < modulus.
struct CrtSolution {
  mpz_class residue;
  mpz_class modulus;
};

// Chinese-remainder solver.  Moduli must be pairwise coprime; throws
// std::invalid_argument with message
//   "inconsistent system"            if two congruences contradict, and
//   "moduli not pairwise coprime"    if they agree but share a factor
// (contradiction is checked first so the caller learns the stronger fact).
// Non-positive moduli throw as well.  An empty system solves to 0 mod 1.
CrtSolution crt_solve(const CongruenceSystem& sys);

}  // namespace doi2
