#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <random>

#include "doi2/reference.hpp"
#include "doi2/waring.hpp"

using namespace doi2;

namespace {

using Raw = std::array<unsigned long, 4>;

// Every four-cube representation of 10^8, lexicographic.
const std::vector<Raw> kReps1e8 = {
    {0, 196, 312, 396},   {4, 122, 295, 417},   {4, 302, 304, 354},
    {14, 58, 106, 462},   {18, 107, 220, 445},  {18, 200, 232, 430},
    {22, 263, 316, 369},  {28, 44, 358, 378},   {32, 124, 148, 456},
    {37, 65, 75, 463},    {41, 57, 79, 463},    {44, 64, 250, 438},
    {44, 100, 160, 456},  {54, 151, 288, 417},  {58, 134, 256, 432},
    {58, 159, 337, 386},  {58, 188, 319, 393},  {60, 240, 340, 360},
    {64, 65, 255, 436},   {67, 92, 352, 381},   {70, 183, 198, 441},
    {72, 195, 277, 414},  {92, 136, 240, 436},  {92, 244, 256, 408},
    {100, 200, 300, 400}, {100, 256, 272, 396}, {107, 184, 213, 436},
    {114, 147, 277, 420}, {114, 170, 274, 418}, {120, 160, 340, 380},
    {128, 172, 292, 408}, {145, 170, 340, 375}, {151, 282, 288, 369},
    {155, 309, 322, 322}, {156, 176, 244, 424}, {193, 267, 299, 361},
    {200, 210, 295, 385}, {204, 256, 292, 368}, {216, 260, 298, 358},
    {225, 295, 300, 330}, {230, 288, 295, 337}, {240, 244, 256, 380},
    {260, 265, 274, 351},
};

std::vector<Raw> to_raw(const std::vector<CubeQuad>& quads) {
  std::vector<Raw> out;
  for (const CubeQuad& q : quads) {
    out.push_back({q.c[0].get_ui(), q.c[1].get_ui(), q.c[2].get_ui(), q.c[3].get_ui()});
  }
  return out;
}

}  // namespace

TEST_CASE("CubeQuad sorts components and derives its target") {
  CubeQuad q(4, 1, 3, 2);
  CHECK(q.c[0] == 1);
  CHECK(q.c[3] == 4);
  CHECK(q.target == 100);
  CHECK_THROWS_AS(CubeQuad(-1, 2, 3, 4), std::invalid_argument);
}

TEST_CASE("the hundred has exactly one representation") {
  const auto quads = four_cube_reps(100);
  REQUIRE(quads.size() == 1);
  CHECK(to_raw(quads)[0] == Raw{1, 2, 3, 4});
  CHECK(ordered_count(quads) == 24);
}

TEST_CASE("10^5 has the three printed representations") {
  const auto quads = four_cube_reps(100000);
  CHECK(to_raw(quads) ==
        std::vector<Raw>{{6, 24, 34, 36}, {10, 20, 30, 40}, {12, 16, 34, 38}});
  CHECK(ordered_count(quads) == 72);
}

TEST_CASE("10^8 yields the full table of 43") {
  const auto quads = four_cube_reps(100000000);
  REQUIRE(quads.size() == 43);
  CHECK(to_raw(quads) == kReps1e8);
  CHECK(ordered_count(quads) == 1020);
  for (const CubeQuad& q : quads) CHECK(q.target == 100000000);
}

TEST_CASE("worker counts do not change the result") {
  const auto one = four_cube_reps(100000000, true, 1);
  const auto eight = four_cube_reps(100000000, true, 8);
  CHECK(to_raw(one) == to_raw(eight));
}

TEST_CASE("zero exclusion drops quads with a zero component") {
  const auto with = four_cube_reps(100000000, true);
  const auto without = four_cube_reps(100000000, false);
  CHECK(with.size() == 43);
  CHECK(without.size() == 42);  // only (0,196,312,396) has a zero
  for (const CubeQuad& q : without) CHECK(q.c[0] > 0);
}

TEST_CASE("matches brute force on every small target") {
  for (uint64_t n = 0; n <= 300; ++n) {
    const auto fast = four_cube_reps(n);
    const auto slow = reference::four_cube_reps_bruteforce(n);
    CHECK(to_raw(fast) == to_raw(slow));
  }
}

TEST_CASE("matches brute force on seeded random targets") {
  std::mt19937_64 rng(20260817);
  for (int i = 0; i < 12; ++i) {
    const uint64_t n = rng() % 1000000;
    CAPTURE(n);
    CHECK(to_raw(four_cube_reps(n)) == to_raw(reference::four_cube_reps_bruteforce(n)));
  }
}

TEST_CASE("ordered_count accounts for repeated components") {
  CHECK(ordered_count({CubeQuad(1, 2, 3, 4)}) == 24);
  CHECK(ordered_count({CubeQuad(155, 309, 322, 322)}) == 12);
  CHECK(ordered_count({CubeQuad(5, 5, 5, 5)}) == 1);
  CHECK(ordered_count({CubeQuad(1, 1, 2, 2)}) == 6);
}

TEST_CASE("tower lift scales a root representation by powers of ten") {
  const CubeQuad root(1, 2, 3, 4);
  const CubeQuad lifted = tower_lift(root, 3);
  CHECK(lifted.c[0] == 1000);
  CHECK(lifted.c[3] == 4000);
  mpz_class want;
  mpz_ui_pow_ui(want.get_mpz_t(), 10, 11);
  CHECK(lifted.target == want);

  // The showcase lift: 10^2 root scaled to a 10^2021 representation.
  const CubeQuad tall = tower_lift(root, 673);
  CHECK(tall.target.get_str().size() == 2022);
  mpz_class comp;
  mpz_ui_pow_ui(comp.get_mpz_t(), 10, 673);
  CHECK(tall.c[0] == comp);
  CHECK(tall.c[1] == 2 * comp);
}

TEST_CASE("tower lift rejects non-tower targets") {
  CHECK_THROWS_AS(tower_lift(CubeQuad(1, 1, 2, 3), 1), std::invalid_argument);  // 37
  CHECK_THROWS_AS(tower_lift(CubeQuad(0, 0, 0, 0), 1), std::invalid_argument);
  CHECK_THROWS_AS(tower_lift(CubeQuad(0, 0, 0, 10), 1), std::invalid_argument);  // 10^3
}

TEST_CASE("primitive filters prune decade multiples") {
  const auto quads = four_cube_reps(100000000);
  const auto weak = primitive_solutions(quads, PrimitiveRule::weak);
  CHECK(weak.size() == 40);  // drops (100,200,300,400), (60,240,340,360), (120,160,340,380)
  for (const CubeQuad& q : weak) {
    bool all_div = true;
    for (const auto& c : q.c) all_div = all_div && c % 10 == 0;
    CHECK(!all_div);
  }
  const auto strong = primitive_solutions(quads, PrimitiveRule::strong);
  for (const CubeQuad& q : strong) {
    for (const auto& c : q.c) CHECK(c % 10 != 0);
  }
  CHECK(strong.size() < weak.size());  // the zero-component quad survives weak only
}

TEST_CASE("targets beyond the direct cap are rejected") {
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), 10, 13);
  CHECK_THROWS_AS(four_cube_reps(big), std::invalid_argument);
  CHECK_THROWS_AS(four_cube_reps(-1), std::invalid_argument);
}
