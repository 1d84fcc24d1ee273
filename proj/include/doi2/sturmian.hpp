#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace doi2 {

// A real in [0, 1) kept symbolically: either an exact rational or
// (add + sqrt_coeff*sqrt(radicand) + pi_coeff*pi) / den, so directed
// enclosures of any precision can be produced on demand.
class RealParam {
 public:
  static RealParam rational(const mpq_class& v);
  static RealParam algebraic(long add, long sqrt_coeff, unsigned long radicand,
                             long pi_coeff, unsigned long den);
  static RealParam sqrt_ratio(unsigned long radicand, unsigned long den);
  static RealParam pi_ratio(unsigned long den);

  bool is_rational() const { return rational_; }
  const mpq_class& rational_value() const;

  // Writes lower/upper bounds into lo/hi (both already initialized; their
  // precision is the working precision).
  void enclose(mpfr_t lo, mpfr_t hi) const;

  // Token form usable on the command line ("sqrt7/7", "pi/8", "1/5", ...).
  std::string describe() const;

 private:
  RealParam() = default;
  bool rational_ = true;
  mpq_class value_;  // rational case
  long add_ = 0;
  long sqrt_coeff_ = 0;
  unsigned long radicand_ = 0;
  long pi_coeff_ = 0;
  unsigned long den_ = 1;
};

// "sqrt7/7", "pi/8", "fib" (golden-rotation theta), decimals ("0.2") and
// fractions ("1/5").  Throws std::invalid_argument naming the bad token.
RealParam parse_real_token(const std::string& token);

// An infinite (or finite) word over {a, b}, 1-indexed.
class Word {
 public:
  virtual ~Word() = default;
  virtual char letter(uint64_t n) const = 0;
  virtual std::string prefix(uint64_t length) const;
  virtual std::string describe() const = 0;
};

// Fixed letters, optionally repeated periodically.
class TextWord : public Word {
 public:
  explicit TextWord(std::string letters, bool periodic = false);
  char letter(uint64_t n) const override;
  std::string describe() const override;

 private:
  std::string letters_;
  bool periodic_;
};

// Rotation word: letter(n) = 'a' iff frac(phi + (n-1)*theta) lies in
// [0, theta).  Rational parameter pairs are evaluated exactly; otherwise
// letters come from directed interval arithmetic whose precision doubles
// (from start_precision) until the letter is certain.  An orbit point that
// will not separate from the boundary raises std::runtime_error
// ("orbit hits boundary").
class RotationWord : public Word {
 public:
  RotationWord(RealParam theta, RealParam phi, unsigned start_precision = 128);
  char letter(uint64_t n) const override;
  std::string prefix(uint64_t length) const override;
  std::string describe() const override;

  const RealParam& theta() const { return theta_; }
  const RealParam& phi() const { return phi_; }

 private:
  void extend(uint64_t upto) const;

  RealParam theta_, phi_;
  unsigned start_precision_;
  mutable unsigned precision_;     // current working precision
  mutable std::string cache_;      // letters 1..cache_.size()
};

// The golden-rotation preset whose prefix is the classical substitution
// fixed point (a -> ab, b -> a) and whose letter-b density is (3-sqrt5)/2.
RotationWord fibonacci_word(unsigned start_precision = 128);

// ---- Statistics and drawings ------------------------------------------

std::string word_prefix(const Word& w, uint64_t length);

// (n, number of distinct length-n factors of the sample prefix).
std::vector<std::pair<unsigned, uint64_t>> complexity(const Word& w, unsigned max_n,
                                                      uint64_t sample_length);

// Unit-step turtle path; first point is the origin.
struct PlanarPath {
  std::vector<std::pair<long long, long long>> points;
  std::vector<std::size_t> marks;  // indices into points

  // Throws std::logic_error if a step is not a unit axis move or the path
  // does not start at the origin.
  void validate() const;
};

// Per letter n: forward; on letter b turn left (n even) or right (n odd).
PlanarPath odd_even_curve(const Word& w, uint64_t steps);

// Divisor parities at n: o / e count divisors j of n with letter(j) = 'b'
// and odd / even cofactor n/j; d = o - e.
struct ParityProfile {
  uint64_t n;
  uint64_t o, e;
  int64_t d;
};
ParityProfile parity_profile(const Word& w, uint64_t n);

// d-values for all n = 1..x in one O(x log x) sweep over letter-b ranks.
// The result has size x+1 and is indexed by n directly: [n] = d(n), [0] = 0.
std::vector<int32_t> divisor_parity_sweep(const Word& w, uint64_t x, unsigned workers = 1);

// Per n: forward, then turn by the sign of d(n); d = 0 leaves the heading
// and marks the point.  flip_turns mirrors the orientation.
PlanarPath parity_walk(const Word& w, uint64_t steps, bool flip_turns = false,
                       unsigned workers = 1);

// Proportion of b's in the first `sample` letters.
mpq_class density(const Word& w, uint64_t sample);

// Weighted average of d(n) up to x.  riesz: sum (1 - n/x) d(n), exact
// rational.  literal: sum (1 - x/n) d(n), evaluated in double precision
// (exploratory only).  beta is the sample b-density over the same prefix.
enum class MollifierWeight { riesz, literal };
struct MollifiedAverage {
  uint64_t x;
  mpq_class value;
  mpq_class slope;  // value / x
  mpq_class beta;
  MollifierWeight weight;
};
MollifiedAverage mollified_average(const Word& w, uint64_t x,
                                   MollifierWeight weight = MollifierWeight::riesz,
                                   unsigned workers = 1);

}  // namespace doi2
