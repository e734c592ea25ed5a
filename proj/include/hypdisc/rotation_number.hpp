#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hypdisc {

using BigInt = boost::multiprecision::cpp_int;

// A rotation by 2 pi alpha, alpha an exact rational p/q in [0, 1) in lowest
// terms. Rotation numbers given as doubles are stored as the exact dyadic
// rational the double represents; nothing pretends to be irrational.
//
// The reason for exactness: the boundary function needs |sin(pi i alpha)| for
// i far beyond 1e8, and reducing i*alpha mod 1 in floating point loses all
// significant digits there.
class RotationNumber {
 public:
  RotationNumber() : RotationNumber(BigInt(0), BigInt(1)) {}
  RotationNumber(BigInt numerator, BigInt denominator);

  // The exact value of x mod 1.
  static RotationNumber from_double(double x);
  // Parses "p/q", a decimal literal (taken as a double), or one of the named
  // constants "golden" ((sqrt5-1)/2), "silver" (sqrt2-1) and "liouville:K"
  // (sum_{k<=K} 10^{-k!}). Throws DomainError on anything else.
  static RotationNumber parse(const std::string& text);
  static RotationNumber liouville(int k_max);

  const BigInt& numerator() const { return p_; }
  const BigInt& denominator() const { return q_; }
  double value() const;
  bool is_zero() const { return p_ == 0; }
  bool is_half() const { return q_ == 2; }
  // "p/q".
  std::string to_string() const;

  // ||i alpha||, the distance from i*alpha to the nearest integer, reduced
  // exactly and then rounded to double.
  double distance_to_integer(std::uint64_t i) const;

  // Walks i = 1, 2, 3, ... and yields ||i alpha|| using exact modular
  // addition only.
  class Orbit {
   public:
    explicit Orbit(const RotationNumber& alpha);
    double next();

   private:
    bool native_;
    std::uint64_t p64_ = 0, q64_ = 1, s64_ = 0;
    double q_double_ = 1.0;
    BigInt p_, q_, s_;
  };
  Orbit orbit() const { return Orbit(*this); }

  friend bool operator==(const RotationNumber& a, const RotationNumber& b) {
    return a.p_ == b.p_ && a.q_ == b.q_;
  }

 private:
  BigInt p_, q_;
};

// Partial quotients and convergents p_k/q_k of a number in [0, 1).
struct ContinuedFraction {
  enum class Source { ExactRational, RealInput };

  std::vector<BigInt> quotients;  // a_0, a_1, ...
  std::vector<BigInt> p;          // convergent numerators
  std::vector<BigInt> q;          // convergent denominators
  Source source = Source::ExactRational;
  // True when the expansion ended because the input is exactly p.back()/q.back().
  bool complete = false;

  bool is_convergent_denominator(const BigInt& i) const;
};

// Expansion of an exact rational, up to `depth` quotients after a_0 (fewer if
// the expansion terminates).
ContinuedFraction continued_fraction(const RotationNumber& alpha, std::size_t depth);

// Expansion of a real number known only to double precision. Convergents are
// kept while |alpha - p_k/q_k| > 1e-15; asking for more terms than that
// throws PrecisionHorizon.
ContinuedFraction continued_fraction(double alpha, std::size_t depth);

// The smallest-denominator p/q with q <= max_denominator and |q x - p| <= tol
// (so that a rotation by 2 pi x has order q up to tol), if any.
std::optional<RotationNumber> detect_rational(double x, std::uint64_t max_denominator,
                                              double tol);

}  // namespace hypdisc
