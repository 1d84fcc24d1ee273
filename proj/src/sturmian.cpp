#include "doi2/sturmian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "mpfr_raii.hpp"
#include "parallel_util.hpp"

namespace doi2 {

// ---- RealParam ----------------------------------------------------------

RealParam RealParam::rational(const mpq_class& v) {
  RealParam p;
  p.rational_ = true;
  p.value_ = v;
  p.value_.canonicalize();
  return p;
}

RealParam RealParam::algebraic(long add, long sqrt_coeff, unsigned long radicand,
                               long pi_coeff, unsigned long den) {
  if (den == 0) throw std::invalid_argument("denominator must be nonzero");
  if (sqrt_coeff == 0 && pi_coeff == 0) {
    return rational(mpq_class(add, den));
  }
  RealParam p;
  p.rational_ = false;
  p.add_ = add;
  p.sqrt_coeff_ = sqrt_coeff;
  p.radicand_ = radicand;
  p.pi_coeff_ = pi_coeff;
  p.den_ = den;
  return p;
}

RealParam RealParam::sqrt_ratio(unsigned long radicand, unsigned long den) {
  const unsigned long root = static_cast<unsigned long>(std::sqrt(static_cast<double>(radicand)));
  if (root * root == radicand) {
    return rational(mpq_class(root, den));  // perfect square: exact
  }
  return algebraic(0, 1, radicand, 0, den);
}

RealParam RealParam::pi_ratio(unsigned long den) { return algebraic(0, 0, 0, 1, den); }

const mpq_class& RealParam::rational_value() const {
  if (!rational_) throw std::logic_error("parameter is not rational");
  return value_;
}

namespace {

// b = a * c with directed rounding, c signed (flips rounding direction).
void scale_signed(mpfr_t out, mpfr_srcptr in, long c, mpfr_rnd_t down_or_up) {
  // For negative factors a lower bound needs the upper input and vice
  // versa; callers pass matched in/out, so just honor the direction.
  mpfr_mul_si(out, in, c, down_or_up);
}

}  // namespace

void RealParam::enclose(mpfr_t lo, mpfr_t hi) const {
  if (rational_) {
    mpfr_set_q(lo, value_.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi, value_.get_mpq_t(), MPFR_RNDU);
    return;
  }
  const mpfr_prec_t prec = mpfr_get_prec(lo);
  detail::Mpfr t_lo(prec), t_hi(prec), acc_lo(prec), acc_hi(prec);
  mpfr_set_si(acc_lo.x, add_, MPFR_RNDD);
  mpfr_set_si(acc_hi.x, add_, MPFR_RNDU);

  if (sqrt_coeff_ != 0) {
    detail::Mpfr s_lo(prec), s_hi(prec);
    mpfr_sqrt_ui(s_lo.x, radicand_, MPFR_RNDD);
    mpfr_sqrt_ui(s_hi.x, radicand_, MPFR_RNDU);
    if (sqrt_coeff_ > 0) {
      scale_signed(t_lo.x, s_lo.x, sqrt_coeff_, MPFR_RNDD);
      scale_signed(t_hi.x, s_hi.x, sqrt_coeff_, MPFR_RNDU);
    } else {
      scale_signed(t_lo.x, s_hi.x, sqrt_coeff_, MPFR_RNDD);
      scale_signed(t_hi.x, s_lo.x, sqrt_coeff_, MPFR_RNDU);
    }
    mpfr_add(acc_lo.x, acc_lo.x, t_lo.x, MPFR_RNDD);
    mpfr_add(acc_hi.x, acc_hi.x, t_hi.x, MPFR_RNDU);
  }
  if (pi_coeff_ != 0) {
    detail::Mpfr p_lo(prec), p_hi(prec);
    mpfr_const_pi(p_lo.x, MPFR_RNDD);
    mpfr_const_pi(p_hi.x, MPFR_RNDU);
    if (pi_coeff_ > 0) {
      scale_signed(t_lo.x, p_lo.x, pi_coeff_, MPFR_RNDD);
      scale_signed(t_hi.x, p_hi.x, pi_coeff_, MPFR_RNDU);
    } else {
      scale_signed(t_lo.x, p_hi.x, pi_coeff_, MPFR_RNDD);
      scale_signed(t_hi.x, p_lo.x, pi_coeff_, MPFR_RNDU);
    }
    mpfr_add(acc_lo.x, acc_lo.x, t_lo.x, MPFR_RNDD);
    mpfr_add(acc_hi.x, acc_hi.x, t_hi.x, MPFR_RNDU);
  }
  mpfr_div_ui(lo, acc_lo.x, den_, MPFR_RNDD);
  mpfr_div_ui(hi, acc_hi.x, den_, MPFR_RNDU);
}

std::string RealParam::describe() const {
  if (rational_) return value_.get_str();
  std::string s;
  const bool simple = add_ == 0 && ((sqrt_coeff_ == 1 && pi_coeff_ == 0) ||
                                    (pi_coeff_ == 1 && sqrt_coeff_ == 0));
  if (simple) {
    s = sqrt_coeff_ == 1 ? "sqrt" + std::to_string(radicand_) : "pi";
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }
  s = "(" + std::to_string(add_);
  if (sqrt_coeff_ != 0) {
    s += (sqrt_coeff_ > 0 ? "+" : "") + std::to_string(sqrt_coeff_) + "*sqrt" +
         std::to_string(radicand_);
  }
  if (pi_coeff_ != 0) {
    s += (pi_coeff_ > 0 ? "+" : "") + std::to_string(pi_coeff_) + "*pi";
  }
  s += ")/" + std::to_string(den_);
  return s;
}

RealParam parse_real_token(const std::string& token) {
  const auto bad = [&] {
    return std::invalid_argument("cannot parse real parameter token: " + token);
  };
  if (token.empty()) throw bad();
  if (token == "fib") {
    return RealParam::algebraic(-1, 1, 5, 0, 2);  // (sqrt5 - 1) / 2
  }
  if (token.rfind("sqrt", 0) == 0 || token.rfind("pi", 0) == 0) {
    const bool is_sqrt = token[0] == 's';
    std::size_t pos = is_sqrt ? 4 : 2;
    unsigned long radicand = 0;
    if (is_sqrt) {
      std::size_t digits = 0;
      radicand = std::stoul(token.substr(pos), &digits);
      pos += digits;
      if (digits == 0) throw bad();
    }
    unsigned long den = 1;
    if (pos < token.size()) {
      if (token[pos] != '/') throw bad();
      std::size_t digits = 0;
      den = std::stoul(token.substr(pos + 1), &digits);
      if (digits == 0 || pos + 1 + digits != token.size() || den == 0) throw bad();
    }
    return is_sqrt ? RealParam::sqrt_ratio(radicand, den) : RealParam::pi_ratio(den);
  }
  // Fraction "p/q" or decimal literal "0.25" -- both exact rationals.
  try {
    if (token.find('/') != std::string::npos) {
      mpq_class v(token, 10);
      v.canonicalize();
      return RealParam::rational(v);
    }
    std::size_t dot = token.find('.');
    if (dot == std::string::npos) {
      // base fixed at 10: the default auto-detects octal on leading zeros
      return RealParam::rational(mpq_class(mpz_class(token, 10)));
    }
    const std::string digits = token.substr(0, dot) + token.substr(dot + 1);
    const std::size_t frac_len = token.size() - dot - 1;
    if (digits.empty() || frac_len == 0) throw bad();
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    return RealParam::rational(mpq_class(num) / mpq_class(den));
  } catch (const std::invalid_argument&) {
    throw bad();
  }
}

// ---- Words --------------------------------------------------------------

std::string Word::prefix(uint64_t length) const {
  std::string s;
  s.reserve(length);
  for (uint64_t n = 1; n <= length; ++n) s.push_back(letter(n));
  return s;
}

TextWord::TextWord(std::string letters, bool periodic)
    : letters_(std::move(letters)), periodic_(periodic) {
  if (letters_.empty()) throw std::invalid_argument("word must have at least one letter");
  for (char c : letters_) {
    if (c != 'a' && c != 'b') throw std::invalid_argument("alphabet is {a, b}");
  }
}

char TextWord::letter(uint64_t n) const {
  if (n == 0) throw std::out_of_range("letters are 1-indexed");
  if (periodic_) return letters_[(n - 1) % letters_.size()];
  if (n > letters_.size()) throw std::out_of_range("word prefix exhausted");
  return letters_[n - 1];
}

std::string TextWord::describe() const {
  return (periodic_ ? "periodic:" : "text:") + letters_;
}

RotationWord::RotationWord(RealParam theta, RealParam phi, unsigned start_precision)
    : theta_(std::move(theta)),
      phi_(std::move(phi)),
      start_precision_(std::max(32u, start_precision)),
      precision_(start_precision_) {
  // Range checks via a coarse enclosure (exact for rationals).
  detail::Mpfr lo(64), hi(64);
  theta_.enclose(lo.x, hi.x);
  if (!(mpfr_sgn(lo.x) > 0 && mpfr_cmp_ui(hi.x, 1) < 0)) {
    throw std::invalid_argument("theta must lie strictly between 0 and 1");
  }
  phi_.enclose(lo.x, hi.x);
  if (!(mpfr_sgn(lo.x) >= 0 && mpfr_cmp_ui(hi.x, 1) < 0)) {
    throw std::invalid_argument("phi must lie in [0, 1)");
  }
}

namespace {

constexpr unsigned kOrbitPrecisionStop = 1u << 16;

// One rotation letter from directed intervals at the given precision;
// '?' when the enclosure cannot decide the letter yet.
char interval_letter(const RealParam& theta, const RealParam& phi, uint64_t n,
                     unsigned prec) {
  detail::Mpfr th_lo(prec), th_hi(prec), ph_lo(prec), ph_hi(prec);
  theta.enclose(th_lo.x, th_hi.x);
  phi.enclose(ph_lo.x, ph_hi.x);

  detail::Mpfr s_lo(prec), s_hi(prec);
  mpfr_mul_ui(s_lo.x, th_lo.x, n - 1, MPFR_RNDD);
  mpfr_mul_ui(s_hi.x, th_hi.x, n - 1, MPFR_RNDU);
  mpfr_add(s_lo.x, s_lo.x, ph_lo.x, MPFR_RNDD);
  mpfr_add(s_hi.x, s_hi.x, ph_hi.x, MPFR_RNDU);

  // Shared integer part, else the fractional interval wraps: escalate.
  mpz_class k_lo, k_hi;
  mpfr_get_z(k_lo.get_mpz_t(), s_lo.x, MPFR_RNDD);
  mpfr_get_z(k_hi.get_mpz_t(), s_hi.x, MPFR_RNDD);
  if (k_lo != k_hi) return '?';

  mpfr_sub_z(s_lo.x, s_lo.x, k_lo.get_mpz_t(), MPFR_RNDD);
  mpfr_sub_z(s_hi.x, s_hi.x, k_lo.get_mpz_t(), MPFR_RNDU);
  if (mpfr_cmp(s_hi.x, th_lo.x) < 0) return 'a';   // frac certainly below theta
  if (mpfr_cmp(s_lo.x, th_hi.x) >= 0) return 'b';  // frac certainly at/above theta
  return '?';
}

char rational_letter(const mpq_class& theta, const mpq_class& phi, uint64_t n) {
  mpq_class t = phi + mpq_class(static_cast<unsigned long>(n - 1)) * theta;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
  mpq_class f = t - mpq_class(fl);
  return f < theta ? 'a' : 'b';
}

}  // namespace

void RotationWord::extend(uint64_t upto) const {
  const bool exact = theta_.is_rational() && phi_.is_rational();
  for (uint64_t n = cache_.size() + 1; n <= upto; ++n) {
    if (exact) {
      cache_.push_back(rational_letter(theta_.rational_value(), phi_.rational_value(), n));
      continue;
    }
    char c = '?';
    while (c == '?') {
      c = interval_letter(theta_, phi_, n, precision_);
      if (c == '?') {
        if (precision_ >= kOrbitPrecisionStop) {
          throw std::runtime_error("orbit hits boundary");
        }
        precision_ *= 2;
      }
    }
    detail::note_precision(precision_);
    cache_.push_back(c);
  }
}

char RotationWord::letter(uint64_t n) const {
  if (n == 0) throw std::out_of_range("letters are 1-indexed");
  if (n > cache_.size()) extend(n);
  return cache_[n - 1];
}

std::string RotationWord::prefix(uint64_t length) const {
  if (length > cache_.size()) extend(length);
  return cache_.substr(0, length);
}

std::string RotationWord::describe() const {
  return "rotation theta=" + theta_.describe() + " phi=" + phi_.describe();
}

RotationWord fibonacci_word(unsigned start_precision) {
  // theta = (sqrt5-1)/2, phi = sqrt5-2: starts "abaab", b-density (3-sqrt5)/2.
  return RotationWord(RealParam::algebraic(-1, 1, 5, 0, 2),
                      RealParam::algebraic(-2, 1, 5, 0, 1), start_precision);
}

// ---- Statistics ----------------------------------------------------------

std::string word_prefix(const Word& w, uint64_t length) {
  if (length < 1) throw std::invalid_argument("length must be >= 1");
  return w.prefix(length);
}

std::vector<std::pair<unsigned, uint64_t>> complexity(const Word& w, unsigned max_n,
                                                      uint64_t sample_length) {
  if (max_n < 1) throw std::invalid_argument("max_n must be >= 1");
  if (sample_length < max_n) throw std::invalid_argument("sample shorter than max_n");
  const std::string s = w.prefix(sample_length);
  std::vector<std::pair<unsigned, uint64_t>> out;
  for (unsigned n = 1; n <= max_n; ++n) {
    std::unordered_set<std::string_view> factors;
    for (std::size_t i = 0; i + n <= s.size(); ++i) {
      factors.insert(std::string_view(s).substr(i, n));
    }
    out.emplace_back(n, factors.size());
  }
  return out;
}

void PlanarPath::validate() const {
  if (points.empty() || points.front() != std::pair<long long, long long>{0, 0}) {
    throw std::logic_error("path must start at the origin");
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    const long long dx = points[i].first - points[i - 1].first;
    const long long dy = points[i].second - points[i - 1].second;
    if (std::abs(dx) + std::abs(dy) != 1) {
      throw std::logic_error("path step is not a unit axis move");
    }
  }
  for (std::size_t m : marks) {
    if (m >= points.size()) throw std::logic_error("mark index out of range");
  }
}

namespace {

struct Turtle {
  long long x = 0, y = 0;
  long long dx = 0, dy = 1;  // heading up

  void forward() {
    x += dx;
    y += dy;
  }
  void left() {
    const long long t = dx;
    dx = -dy;
    dy = t;
  }
  void right() {
    const long long t = dx;
    dx = dy;
    dy = -t;
  }
};

}  // namespace

PlanarPath odd_even_curve(const Word& w, uint64_t steps) {
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  const std::string s = w.prefix(steps);
  PlanarPath path;
  path.points.reserve(steps + 1);
  Turtle t;
  path.points.emplace_back(0, 0);
  for (uint64_t n = 1; n <= steps; ++n) {
    t.forward();
    path.points.emplace_back(t.x, t.y);
    if (s[n - 1] == 'b') {
      if (n % 2 == 0) {
        t.left();
      } else {
        t.right();
      }
    }
  }
  return path;
}

ParityProfile parity_profile(const Word& w, uint64_t n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  ParityProfile p{n, 0, 0, 0};
  const auto tally = [&](uint64_t divisor) {
    if (w.letter(divisor) != 'b') return;
    if ((n / divisor) % 2 == 1) {
      ++p.o;
    } else {
      ++p.e;
    }
  };
  for (uint64_t j = 1; j * j <= n; ++j) {
    if (n % j != 0) continue;
    tally(j);
    if (n / j != j) tally(n / j);
  }
  p.d = static_cast<int64_t>(p.o) - static_cast<int64_t>(p.e);
  return p;
}

std::vector<int32_t> divisor_parity_sweep(const Word& w, uint64_t x, unsigned workers) {
  if (x < 1) throw std::invalid_argument("x must be >= 1");
  const std::string s = w.prefix(x);
  std::vector<int32_t> d(x + 1, 0);

  // For every rank j carrying letter b, its multiples n = j*s gain +1 for
  // odd s and -1 for even s.  Workers own disjoint j-ranges and private
  // accumulators; merging is plain addition.
  const unsigned lanes = std::max(1u, workers);
  std::vector<std::vector<int32_t>> local(lanes);
  detail::split_indices(x, workers, [&](unsigned lane, std::size_t b, std::size_t e) {
    std::vector<int32_t>& acc = local[lane];
    acc.assign(x + 1, 0);
    for (std::size_t i = b; i < e; ++i) {
      const uint64_t j = i + 1;
      if (s[j - 1] != 'b') continue;
      int32_t sign = 1;
      for (uint64_t n = j; n <= x; n += j) {
        acc[n] += sign;
        sign = -sign;
      }
    }
  });
  for (const auto& acc : local) {
    if (acc.empty()) continue;
    for (std::size_t i = 0; i <= x; ++i) d[i] += acc[i];
  }
  return d;
}

PlanarPath parity_walk(const Word& w, uint64_t steps, bool flip_turns, unsigned workers) {
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  const std::vector<int32_t> d = divisor_parity_sweep(w, steps, workers);
  PlanarPath path;
  path.points.reserve(steps + 1);
  Turtle t;
  path.points.emplace_back(0, 0);
  for (uint64_t n = 1; n <= steps; ++n) {
    t.forward();
    path.points.emplace_back(t.x, t.y);
    const int32_t sign = flip_turns ? -d[n] : d[n];
    if (sign > 0) {
      t.left();
    } else if (sign < 0) {
      t.right();
    } else {
      path.marks.push_back(static_cast<std::size_t>(n));
    }
  }
  return path;
}

mpq_class density(const Word& w, uint64_t sample) {
  if (sample < 1) throw std::invalid_argument("sample must be >= 1");
  const std::string s = w.prefix(sample);
  const auto b_count = static_cast<unsigned long>(std::count(s.begin(), s.end(), 'b'));
  mpq_class q(b_count, static_cast<unsigned long>(sample));
  q.canonicalize();
  return q;
}

MollifiedAverage mollified_average(const Word& w, uint64_t x, MollifierWeight weight,
                                   unsigned workers) {
  if (x < 1) throw std::invalid_argument("x must be >= 1");
  const std::vector<int32_t> d = divisor_parity_sweep(w, x, workers);

  MollifiedAverage avg;
  avg.x = x;
  avg.weight = weight;
  avg.beta = density(w, x);

  if (weight == MollifierWeight::riesz) {
    // sum (1 - n/x) d(n) = (1/x) sum (x - n) d(n), exactly.
    mpz_class s = 0;
    for (uint64_t n = 1; n <= x; ++n) {
      s += mpz_class(static_cast<long>(d[n])) * mpz_class(x - n);
    }
    avg.value = mpq_class(s) / mpq_class(static_cast<unsigned long>(x));
    avg.value.canonicalize();
  } else {
    // Literal printed weight (1 - x/n); double precision, exploratory.
    double acc = 0.0;
    for (uint64_t n = 1; n <= x; ++n) {
      if (d[n] == 0) continue;
      acc += (1.0 - static_cast<double>(x) / static_cast<double>(n)) * d[n];
    }
    mpq_class v;
    mpq_set_d(v.get_mpq_t(), acc);
    avg.value = v;
  }
  avg.slope = avg.value / mpq_class(static_cast<unsigned long>(x));
  avg.slope.canonicalize();
  return avg;
}

}  // namespace doi2
