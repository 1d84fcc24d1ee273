#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <gmpxx.h>

#include "doi2/certified.hpp"
#include "doi2/crt.hpp"
#include "doi2/primes.hpp"
#include "doi2/reference.hpp"

using namespace doi2;

TEST_CASE("segmented sieve matches trial division") {
  const PrimeTable t = sieve_primes(10000);
  CHECK(t.primes == reference::primes_trial_division(10000));
  CHECK(t.primes.size() == 1229);
  CHECK(t.contains(2));
  CHECK(t.contains(9973));
  CHECK(!t.contains(9999));
}

TEST_CASE("sieve edge limits") {
  CHECK(sieve_primes(0).primes.empty());
  CHECK(sieve_primes(1).primes.empty());
  CHECK(sieve_primes(2).primes == std::vector<uint64_t>{2});
  CHECK(sieve_primes(3).primes == std::vector<uint64_t>{2, 3});
}

TEST_CASE("is_prime_u64 basics") {
  CHECK(!is_prime_u64(0));
  CHECK(!is_prime_u64(1));
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(13));
  CHECK(!is_prime_u64(15));
  CHECK(is_prime_u64(6043));
  CHECK(!is_prime_u64(6042));
}

TEST_CASE("crt solves the single and the small composite system") {
  CrtSolution one = crt_solve({{{0, 7}}});
  CHECK(one.residue == 0);
  CHECK(one.modulus == 7);

  CrtSolution s = crt_solve({{{2, 3}, {3, 5}, {2, 7}}});
  CHECK(s.residue == 23);
  CHECK(s.modulus == 105);
}

TEST_CASE("crt residues are normalized into [0, modulus)") {
  CrtSolution s = crt_solve({{{-1, 3}, {-1, 5}}});
  CHECK(s.residue == 14);
  CHECK(s.modulus == 15);
}

TEST_CASE("crt solves the length-17 covering system") {
  CrtSolution s = crt_solve({{{0, 2}, {2, 3}, {0, 5}, {5, 7}, {0, 11}, {10, 13}}});
  CHECK(s.residue == 27830);
  CHECK(s.modulus == 30030);
}

TEST_CASE("crt distinguishes contradiction from shared factors") {
  CHECK_THROWS_WITH(crt_solve({{{1, 4}, {2, 6}}}), "inconsistent system");
  CHECK_THROWS_WITH(crt_solve({{{1, 4}, {3, 6}}}), "moduli not pairwise coprime");
  CHECK_THROWS_AS(crt_solve({{{0, 0}}}), std::invalid_argument);
  CHECK_THROWS_AS(crt_solve({{{0, -3}}}), std::invalid_argument);
}

TEST_CASE("crt of an empty system is 0 mod 1") {
  CrtSolution s = crt_solve({});
  CHECK(s.residue == 0);
  CHECK(s.modulus == 1);
}

TEST_CASE("certified log10 brackets the true value tightly") {
  const CertifiedReal l2 = log10_certified(2, 128);
  CHECK(l2.lower < l2.upper);
  mpq_class width_cap(1);
  width_cap >>= 128;
  CHECK(l2.width() <= width_cap);
  // log10(2) = 0.30102999566398119521... bracket it by coarse rationals.
  CHECK(l2.lower > mpq_class(30102999, 100000000));
  CHECK(l2.upper < mpq_class(30103000, 100000000));
}

TEST_CASE("certified log10 of powers of ten is exact") {
  for (unsigned k : {0u, 1u, 5u, 100u}) {
    mpz_class n;
    mpz_ui_pow_ui(n.get_mpz_t(), 10, k);
    const CertifiedReal l = log10_certified(n, 64);
    CHECK(l.lower == l.upper);
    CHECK(l.lower == mpq_class(k));
  }
}

TEST_CASE("certified log10 rejects nonpositive input") {
  CHECK_THROWS_AS(log10_certified(0, 64), std::invalid_argument);
  CHECK_THROWS_AS(log10_certified(-5, 64), std::invalid_argument);
}

TEST_CASE("precision tracker records work and stays modest") {
  reset_certified_precision_tracker();
  CHECK(max_certified_precision_used() == 0);
  log10_certified(7, 256);
  CHECK(max_certified_precision_used() >= 256);
  CHECK(max_certified_precision_used() <= 4096);
}
