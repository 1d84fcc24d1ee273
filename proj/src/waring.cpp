#include "doi2/waring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel_util.hpp"

namespace doi2 {

namespace {

constexpr uint64_t kDirectCap = 1'000'000'000'000ull;  // 10^12

uint64_t cube(uint64_t v) { return v * v * v; }

uint64_t icbrt(uint64_t n) {
  uint64_t r = static_cast<uint64_t>(std::cbrt(static_cast<double>(n)));
  while (r > 0 && cube(r) > n) --r;
  while (cube(r + 1) <= n) ++r;
  return r;
}

struct PairSum {
  uint64_t sum;
  uint32_t x, y;
};

struct Quad4 {
  uint32_t m, n, p, q;
  bool operator==(const Quad4&) const = default;
  auto operator<=>(const Quad4&) const = default;
};

}  // namespace

CubeQuad::CubeQuad(mpz_class a, mpz_class b, mpz_class d, mpz_class e)
    : c{std::move(a), std::move(b), std::move(d), std::move(e)} {
  std::sort(c.begin(), c.end());
  if (c[0] < 0) throw std::invalid_argument("cube components must be nonnegative");
  target = 0;
  for (const mpz_class& v : c) target += v * v * v;
}

std::vector<CubeQuad> four_cube_reps(const mpz_class& target, bool allow_zero,
                                     unsigned workers) {
  if (target < 0) throw std::invalid_argument("target must be nonnegative");
  if (target > kDirectCap) {
    throw std::invalid_argument("target too large for direct enumeration");
  }
  const uint64_t n = target.get_ui();
  const uint32_t lo = allow_zero ? 0u : 1u;

  // Every cube pair (x <= y, x^3 + y^3 <= n); the low half doubles as the
  // (m, n) side and the whole table is the (p, q) side.
  const uint64_t xmax = icbrt(n / 2);
  std::vector<std::vector<PairSum>> pair_chunks(std::max(1u, workers));
  detail::split_indices(
      xmax >= lo ? static_cast<std::size_t>(xmax - lo + 1) : 0, workers,
      [&](unsigned w, std::size_t b, std::size_t e) {
        auto& out = pair_chunks[w];
        for (std::size_t i = b; i < e; ++i) {
          const uint32_t x = lo + static_cast<uint32_t>(i);
          const uint64_t x3 = cube(x);
          if (2 * x3 > n) break;
          for (uint32_t y = x; cube(y) <= n - x3; ++y) {
            out.push_back({x3 + cube(y), x, y});
          }
        }
      });
  std::vector<PairSum> pairs;
  for (auto& chunk : pair_chunks) {
    pairs.insert(pairs.end(), chunk.begin(), chunk.end());
    chunk.clear();
    chunk.shrink_to_fit();
  }
  std::sort(pairs.begin(), pairs.end(), [](const PairSum& a, const PairSum& b) {
    return a.sum != b.sum ? a.sum < b.sum : (a.x != b.x ? a.x < b.x : a.y < b.y);
  });

  // Meet in the middle: the (m, n) pair owns the low half of the sum, so
  // each nondecreasing quadruple appears exactly once.
  std::size_t half_count = 0;
  while (half_count < pairs.size() && 2 * pairs[half_count].sum <= n) ++half_count;

  std::vector<std::vector<Quad4>> quad_chunks(std::max(1u, workers));
  detail::split_indices(half_count, workers, [&](unsigned w, std::size_t b, std::size_t e) {
    auto& out = quad_chunks[w];
    for (std::size_t i = b; i < e; ++i) {
      const PairSum& a = pairs[i];
      const uint64_t rem = n - a.sum;
      auto range = std::equal_range(
          pairs.begin(), pairs.end(), PairSum{rem, 0, 0},
          [](const PairSum& l, const PairSum& r) { return l.sum < r.sum; });
      for (auto it = range.first; it != range.second; ++it) {
        if (it->x >= a.y) out.push_back({a.x, a.y, it->x, it->y});
      }
    }
  });

  std::vector<Quad4> raw;
  for (auto& chunk : quad_chunks) {
    raw.insert(raw.end(), chunk.begin(), chunk.end());
  }
  std::sort(raw.begin(), raw.end());
  if (std::adjacent_find(raw.begin(), raw.end()) != raw.end()) {
    throw std::logic_error("duplicate quadruple escaped the half-sum split");
  }

  std::vector<CubeQuad> result;
  result.reserve(raw.size());
  for (const Quad4& q : raw) result.emplace_back(q.m, q.n, q.p, q.q);
  return result;
}

uint64_t ordered_count(const std::vector<CubeQuad>& quads) {
  uint64_t total = 0;
  for (const CubeQuad& q : quads) {
    uint64_t perms = 24;
    std::size_t i = 0;
    while (i < 4) {
      std::size_t j = i;
      while (j < 4 && q.c[j] == q.c[i]) ++j;
      const uint64_t run = j - i;
      for (uint64_t f = 2; f <= run; ++f) perms /= f;
      i = j;
    }
    total += perms;
  }
  return total;
}

CubeQuad tower_lift(const CubeQuad& root, unsigned long b) {
  mpz_class m = root.target;
  unsigned long k = 0;
  while (m > 0 && m % 10 == 0) {
    m /= 10;
    ++k;
  }
  if (m != 1 || k < 2 || (k - 2) % 3 != 0) {
    throw std::invalid_argument("tower_lift requires a 10^(2+3a) target");
  }
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, b);
  return CubeQuad(root.c[0] * scale, root.c[1] * scale, root.c[2] * scale,
                  root.c[3] * scale);
}

std::vector<CubeQuad> primitive_solutions(const std::vector<CubeQuad>& quads,
                                          PrimitiveRule rule) {
  std::vector<CubeQuad> kept;
  for (const CubeQuad& q : quads) {
    int divisible = 0;
    for (const mpz_class& v : q.c) {
      if (v % 10 == 0) ++divisible;  // zero counts as divisible
    }
    const bool keep = rule == PrimitiveRule::weak ? divisible < 4 : divisible == 0;
    if (keep) kept.push_back(q);
  }
  return kept;
}

}  // namespace doi2
