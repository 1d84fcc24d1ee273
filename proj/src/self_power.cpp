#include "doi2/self_power.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "mpfr_raii.hpp"
#include "parallel_util.hpp"

namespace doi2 {

namespace {

constexpr mpfr_prec_t kPrecisionStop = 1 << 20;  // absolute escalation stop
constexpr unsigned long kExactCrossCheckDigits = 10000;

// Exact decimal length of an expanded integer.  mpz_sizeinbase(,10) may
// overcount by one, so compare against the corresponding power of ten.
unsigned long exact_digits(const mpz_class& v) {
  const std::size_t size = mpz_sizeinbase(v.get_mpz_t(), 10);
  if (size <= 1) return 1;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, size - 1);
  return v < p10 ? size - 1 : size;
}

}  // namespace

DigitCount digit_count_pow_detail(const mpz_class& base, const mpz_class& exp) {
  if (base < 0 || exp < 0) throw std::invalid_argument("base and exponent must be nonnegative");
  if (base == 0 && exp == 0) throw std::invalid_argument("undefined");
  if (base == 0) return {1, DigitCountMethod::exact};  // the number 0 itself
  if (base == 1 || exp == 0) return {1, DigitCountMethod::exact};

  // Powers of ten are the only bases with integral log10; handle exactly.
  {
    mpz_class m = base;
    unsigned long k = 0;
    while (m % 10 == 0) {
      m /= 10;
      ++k;
    }
    if (m == 1) return {exp * k + 1, DigitCountMethod::exact};
  }

  mpz_class count;
  for (mpfr_prec_t prec = 64;; prec *= 2) {
    if (prec > kPrecisionStop) {
      throw std::runtime_error("digit count did not disambiguate below the precision stop");
    }
    detail::Mpfr lb(prec), ub(prec);
    mpfr_set_z(lb.x, base.get_mpz_t(), MPFR_RNDD);
    mpfr_log10(lb.x, lb.x, MPFR_RNDD);
    mpfr_set_z(ub.x, base.get_mpz_t(), MPFR_RNDU);
    mpfr_log10(ub.x, ub.x, MPFR_RNDU);

    // Widen for the multiply so the integer part of exp*log10(base) fits.
    const mpfr_prec_t wide = prec + mpz_sizeinbase(exp.get_mpz_t(), 2) + 8;
    detail::note_precision(static_cast<unsigned>(wide));
    detail::Mpfr tlo(wide), thi(wide);
    mpfr_mul_z(tlo.x, lb.x, exp.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(thi.x, ub.x, exp.get_mpz_t(), MPFR_RNDU);
    mpz_class flo, fhi;
    mpfr_get_z(flo.get_mpz_t(), tlo.x, MPFR_RNDD);
    mpfr_get_z(fhi.get_mpz_t(), thi.x, MPFR_RNDD);
    if (flo == fhi) {
      count = flo + 1;
      break;
    }
  }

  if (count <= kExactCrossCheckDigits) {
    mpz_class full;
    mpz_pow_ui(full.get_mpz_t(), base.get_mpz_t(), exp.get_ui());
    if (count != exact_digits(full)) {
      throw std::logic_error("certified digit count disagrees with exact expansion");
    }
    return {count, DigitCountMethod::exact};
  }
  return {count, DigitCountMethod::certified_log};
}

mpz_class digit_count_pow(const mpz_class& base, const mpz_class& exp) {
  return digit_count_pow_detail(base, exp).count;
}

bool is_repdigit(const mpz_class& x) {
  if (x < 0) throw std::invalid_argument("repdigit test expects a nonnegative value");
  const std::string s = x.get_str();
  return std::all_of(s.begin(), s.end(), [&](char c) { return c == s[0]; });
}

SelfPowerRecord selfpower_record(uint64_t n) {
  DigitCount d = digit_count_pow_detail(mpz_class(n), mpz_class(n));
  return {n, d.count, is_repdigit(d.count), d.method};
}

std::vector<SelfPowerRecord> search_selfpower_cwn(uint64_t limit, unsigned workers) {
  if (limit < 1) throw std::invalid_argument("limit must be >= 1");
  std::vector<std::vector<SelfPowerRecord>> found(std::max(1u, workers));
  detail::split_indices(limit, workers, [&](unsigned w, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      SelfPowerRecord rec = selfpower_record(static_cast<uint64_t>(i + 1));
      if (rec.is_constant_word) found[w].push_back(std::move(rec));
    }
  });
  std::vector<SelfPowerRecord> out;
  for (auto& chunk : found) {
    for (auto& rec : chunk) out.push_back(std::move(rec));
  }
  return out;  // ascending by construction: chunks cover 1..limit in order
}

namespace {

// Cache of "is l(i^j) a repdigit" per worker; keys are packed pairs.
struct RepdigitPowCache {
  std::unordered_map<uint64_t, bool> seen;

  bool query(uint64_t i, uint64_t j) {
    const uint64_t key = (i << 32) | j;
    auto it = seen.find(key);
    if (it != seen.end()) return it->second;
    const bool val = is_repdigit(digit_count_pow(mpz_class(i), mpz_class(j)));
    seen.emplace(key, val);
    return val;
  }
};

std::vector<uint64_t> minimal_rotation(const std::vector<uint64_t>& v) {
  std::vector<uint64_t> best = v;
  std::vector<uint64_t> rot = v;
  for (std::size_t s = 1; s < v.size(); ++s) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

}  // namespace

std::optional<AmicableTuple> verify_amicable(const std::vector<uint64_t>& members) {
  if (members.empty()) throw std::invalid_argument("tuple must have at least one member");
  AmicableTuple t;
  t.members = members;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const uint64_t from = members[i];
    const uint64_t to = members[(i + 1) % members.size()];
    mpz_class count = digit_count_pow(mpz_class(from), mpz_class(to));
    if (!is_repdigit(count)) return std::nullopt;
    t.digit_counts.push_back(std::move(count));
  }
  return t;
}

std::vector<AmicableTuple> search_amicable(unsigned k, uint64_t bound,
                                           std::size_t limit_results, unsigned workers) {
  if (k < 1) throw std::invalid_argument("tuple size must be >= 1");
  if (bound < 2) throw std::invalid_argument("bound must be >= 2");
  if (bound >> 32) throw std::invalid_argument("bound exceeds the packed-cache range");

  std::vector<std::vector<std::vector<uint64_t>>> found(std::max(1u, workers));
  detail::split_indices(bound, workers, [&](unsigned w, std::size_t lo, std::size_t hi) {
    RepdigitPowCache cache;
    std::vector<uint64_t> tuple(k);
    // Depth-first over ordered tuples, pruning on the first cyclic count
    // that is not a repdigit.
    auto dfs = [&](auto&& self, unsigned depth) -> void {
      if (depth == k) {
        if (cache.query(tuple[k - 1], tuple[0])) found[w].push_back(tuple);
        return;
      }
      for (uint64_t m = 1; m <= bound; ++m) {
        if (!cache.query(tuple[depth - 1], m)) continue;
        tuple[depth] = m;
        self(self, depth + 1);
      }
    };
    for (std::size_t first = lo; first < hi; ++first) {
      tuple[0] = static_cast<uint64_t>(first + 1);
      if (k == 1) {
        if (cache.query(tuple[0], tuple[0])) found[w].push_back(tuple);
      } else {
        dfs(dfs, 1);
      }
    }
  });

  std::set<std::vector<uint64_t>> canonical;
  for (const auto& chunk : found) {
    for (const auto& tuple : chunk) canonical.insert(minimal_rotation(tuple));
  }

  std::vector<AmicableTuple> out;
  for (const auto& members : canonical) {
    if (limit_results > 0 && out.size() >= limit_results) break;
    auto verified = verify_amicable(members);
    if (!verified) throw std::logic_error("canonicalized tuple failed re-verification");
    out.push_back(std::move(*verified));
  }
  return out;
}

std::vector<mpz_class> sequence_gaps(GapSequence which, uint64_t count) {
  if (count < 2) throw std::invalid_argument("count must be >= 2");
  std::vector<mpz_class> values;
  values.reserve(count);
  if (which == GapSequence::repdigit_numbers) {
    // d * (10^len - 1) / 9 ascending: all lengths, digits 1..9.
    for (unsigned long len = 1; values.size() < count; ++len) {
      mpz_class p10;
      mpz_ui_pow_ui(p10.get_mpz_t(), 10, len);
      const mpz_class repunit = (p10 - 1) / 9;
      for (unsigned d = 1; d <= 9 && values.size() < count; ++d) {
        values.push_back(d * repunit);
      }
    }
  } else {
    for (uint64_t n = 1; n <= count; ++n) {
      values.push_back(digit_count_pow(mpz_class(n), mpz_class(n)));
    }
  }
  std::vector<mpz_class> gaps;
  gaps.reserve(values.size() - 1);
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    gaps.push_back(values[i + 1] - values[i]);
  }
  return gaps;
}

}  // namespace doi2
