#include "doi2/reference.hpp"

#include <algorithm>

namespace doi2::reference {

std::vector<CubeQuad> four_cube_reps_bruteforce(uint64_t target, bool allow_zero) {
  std::vector<CubeQuad> out;
  const uint64_t lo = allow_zero ? 0 : 1;
  const auto cube = [](uint64_t v) { return v * v * v; };
  for (uint64_t m = lo; cube(m) * 4 <= target; ++m) {
    for (uint64_t n = m; cube(m) + cube(n) * 3 <= target; ++n) {
      for (uint64_t p = n; cube(m) + cube(n) + cube(p) * 2 <= target; ++p) {
        const uint64_t rest = target - cube(m) - cube(n) - cube(p);
        // q must finish the sum exactly
        uint64_t q = p;
        while (cube(q) < rest) ++q;
        if (cube(q) == rest) {
          out.emplace_back(static_cast<unsigned long>(m), static_cast<unsigned long>(n),
                           static_cast<unsigned long>(p), static_cast<unsigned long>(q));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<uint64_t> primes_trial_division(uint64_t limit) {
  std::vector<uint64_t> out;
  for (uint64_t n = 2; n <= limit; ++n) {
    bool prime = true;
    for (uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(n);
  }
  return out;
}

std::string fibonacci_word_substitution(size_t length) {
  // Fixed point of a -> ab, b -> a, grown by repeated substitution.
  std::string w = "a";
  while (w.size() < length) {
    std::string next;
    next.reserve(w.size() * 2);
    for (char c : w) {
      if (c == 'a') {
        next += "ab";
      } else {
        next += 'a';
      }
    }
    w = std::move(next);
  }
  return w.substr(0, length);
}

}  // namespace doi2::reference
