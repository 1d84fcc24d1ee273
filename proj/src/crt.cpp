#include "doi2/crt.hpp"

#include <stdexcept>

namespace doi2 {

CrtSolution crt_solve(const CongruenceSystem& sys) {
  for (const Congruence& c : sys.congruences) {
    if (c.modulus <= 0) throw std::invalid_argument("modulus must be positive");
  }

  // Classify failures before solving: an actual contradiction outranks a
  // mere coprimality violation.
  const auto& cs = sys.congruences;
  bool coprime = true;
  for (size_t i = 0; i < cs.size(); ++i) {
    for (size_t j = i + 1; j < cs.size(); ++j) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), cs[i].modulus.get_mpz_t(), cs[j].modulus.get_mpz_t());
      if (g == 1) continue;
      mpz_class diff = cs[i].residue - cs[j].residue;
      if (diff % g != 0) throw std::invalid_argument("inconsistent system");
      coprime = false;
    }
  }
  if (!coprime) throw std::invalid_argument("moduli not pairwise coprime");

  CrtSolution sol{0, 1};
  for (const Congruence& c : cs) {
    // Merge x = sol.residue (mod sol.modulus) with x = c.residue (mod c.modulus).
    mpz_class inv;
    if (c.modulus > 1 &&
        mpz_invert(inv.get_mpz_t(), sol.modulus.get_mpz_t(), c.modulus.get_mpz_t()) == 0) {
      throw std::invalid_argument("moduli not pairwise coprime");  // unreachable after the scan
    }
    mpz_class r = c.residue % c.modulus;
    if (r < 0) r += c.modulus;
    mpz_class t = ((r - sol.residue) * inv) % c.modulus;
    if (t < 0) t += c.modulus;
    sol.residue += t * sol.modulus;
    sol.modulus *= c.modulus;
  }
  sol.residue %= sol.modulus;
  if (sol.residue < 0) sol.residue += sol.modulus;
  return sol;
}

}  // namespace doi2
