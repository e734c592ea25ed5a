#include "hypdisc/rotation_number.hpp"

#include <cmath>
#include <limits>

#include "hypdisc/errors.hpp"

namespace hypdisc {

namespace {

// Orbits stay on native integers while s + p cannot overflow.
const BigInt kNativeLimit = BigInt(1) << 62;

// num / den for 0 <= num, 0 < den: a 64-bit integer quotient rounded once.
double ratio_to_double(const BigInt& num, const BigInt& den) {
  if (num == 0) return 0.0;
  const long shift =
      static_cast<long>(boost::multiprecision::msb(den)) - static_cast<long>(boost::multiprecision::msb(num)) + 64;
  const BigInt scaled = shift >= 0 ? BigInt((num << shift) / den) : BigInt(num / (den << -shift));
  return std::ldexp(scaled.convert_to<double>(), static_cast<int>(-shift));
}

BigInt big_gcd(BigInt a, BigInt b) {
  while (b != 0) {
    BigInt r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Deepest convergent of a periodic expansion [0; a, a, a, ...] whose
// denominator stays below 2^62.
RotationNumber periodic_convergent(unsigned quotient) {
  BigInt p_prev = 1, q_prev = 0;  // p_{-1}, q_{-1}
  BigInt p = 0, q = 1;            // p_0 / q_0 = a_0 = 0
  while (true) {
    BigInt p_next = quotient * p + p_prev;
    BigInt q_next = quotient * q + q_prev;
    if (q_next >= kNativeLimit) break;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
  }
  return RotationNumber(p, q);
}

}  // namespace

RotationNumber::RotationNumber(BigInt numerator, BigInt denominator)
    : p_(std::move(numerator)), q_(std::move(denominator)) {
  if (q_ <= 0) throw DomainError("rotation number denominator must be positive");
  if (boost::multiprecision::msb(q_) > 1000) {
    throw DomainError("rotation number denominator exceeds 2^1000");
  }
  p_ %= q_;
  if (p_ < 0) p_ += q_;
  const BigInt g = big_gcd(p_, q_);
  if (g > 1) {
    p_ /= g;
    q_ /= g;
  }
}

RotationNumber RotationNumber::from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("rotation number must be finite");
  double frac = x - std::floor(x);
  if (frac >= 1.0) frac = 0.0;
  if (frac == 0.0) return RotationNumber(0, 1);
  int exponent = 0;
  const double mantissa = std::frexp(frac, &exponent);  // frac = mantissa * 2^exponent
  const auto scaled = static_cast<std::uint64_t>(std::ldexp(mantissa, 53));
  const int shift = 53 - exponent;  // frac = scaled / 2^shift
  return RotationNumber(BigInt(scaled), BigInt(1) << shift);
}

RotationNumber RotationNumber::liouville(int k_max) {
  if (k_max < 1 || k_max > 5) throw DomainError("liouville truncation must have 1 <= K <= 5");
  long factorial = 1;
  long max_exp = 1;
  for (int k = 1; k <= k_max; ++k) {
    factorial *= k;
    max_exp = factorial;
  }
  BigInt q = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(max_exp));
  BigInt p = 0;
  factorial = 1;
  for (int k = 1; k <= k_max; ++k) {
    factorial *= k;
    p += boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(max_exp - factorial));
  }
  return RotationNumber(p, q);
}

RotationNumber RotationNumber::parse(const std::string& text) {
  if (text == "golden") return periodic_convergent(1);
  if (text == "silver") return periodic_convergent(2);
  if (text.rfind("liouville:", 0) == 0) {
    try {
      return liouville(std::stoi(text.substr(10)));
    } catch (const std::logic_error&) {
      throw DomainError("bad liouville constant: " + text);
    }
  }
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    try {
      return RotationNumber(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::runtime_error& e) {
      throw DomainError("bad rational rotation number '" + text + "'");
    }
  }
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::logic_error&) {
    throw DomainError("bad rotation number '" + text + "'");
  }
  if (used != text.size()) throw DomainError("bad rotation number '" + text + "'");
  return from_double(x);
}

double RotationNumber::value() const { return ratio_to_double(p_, q_); }

std::string RotationNumber::to_string() const { return p_.str() + "/" + q_.str(); }

double RotationNumber::distance_to_integer(std::uint64_t i) const {
  if (q_ < kNativeLimit) {
    const auto p = p_.convert_to<std::uint64_t>();
    const auto q = q_.convert_to<std::uint64_t>();
    const auto s = static_cast<std::uint64_t>(static_cast<unsigned __int128>(i) * p % q);
    const std::uint64_t d = std::min(s, q - s);
    return static_cast<double>(d) / static_cast<double>(q);
  }
  const BigInt s = (BigInt(i) * p_) % q_;
  const BigInt d = (q_ - s < s) ? BigInt(q_ - s) : s;
  return ratio_to_double(d, q_);
}

RotationNumber::Orbit::Orbit(const RotationNumber& alpha) : native_(alpha.q_ < kNativeLimit) {
  if (native_) {
    p64_ = alpha.p_.convert_to<std::uint64_t>();
    q64_ = alpha.q_.convert_to<std::uint64_t>();
    q_double_ = static_cast<double>(q64_);
  } else {
    p_ = alpha.p_;
    q_ = alpha.q_;
    s_ = 0;
  }
}

double RotationNumber::Orbit::next() {
  if (native_) {
    s64_ += p64_;
    if (s64_ >= q64_) s64_ -= q64_;
    const std::uint64_t d = std::min(s64_, q64_ - s64_);
    return static_cast<double>(d) / q_double_;
  }
  s_ += p_;
  if (s_ >= q_) s_ -= q_;
  const BigInt rest = q_ - s_;
  return ratio_to_double(rest < s_ ? rest : s_, q_);
}

bool ContinuedFraction::is_convergent_denominator(const BigInt& i) const {
  for (const auto& qk : q) {
    if (qk == i) return true;
    if (qk > i) return false;
  }
  return false;
}

namespace {

// Full expansion of p/q with 0 <= p/q < 1, up to max_terms quotients after a_0.
ContinuedFraction expand(BigInt num, BigInt den, std::size_t max_terms) {
  ContinuedFraction cf;
  BigInt p_prev = 1, q_prev = 0;
  BigInt p_prev2 = 0, q_prev2 = 1;
  for (std::size_t k = 0; k <= max_terms; ++k) {
    const BigInt a = num / den;
    const BigInt rem = num % den;
    const BigInt pk = a * p_prev + p_prev2;
    const BigInt qk = a * q_prev + q_prev2;
    cf.quotients.push_back(a);
    cf.p.push_back(pk);
    cf.q.push_back(qk);
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = pk;
    q_prev = qk;
    if (rem == 0) {
      cf.complete = true;
      break;
    }
    num = den;
    den = rem;
  }
  return cf;
}

}  // namespace

ContinuedFraction continued_fraction(const RotationNumber& alpha, std::size_t depth) {
  ContinuedFraction cf = expand(alpha.numerator(), alpha.denominator(), depth);
  cf.source = ContinuedFraction::Source::ExactRational;
  return cf;
}

ContinuedFraction continued_fraction(double alpha, std::size_t depth) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("continued_fraction needs 0 < alpha < 1");
  const RotationNumber exact = RotationNumber::from_double(alpha);
  const ContinuedFraction full = expand(exact.numerator(), exact.denominator(), 4096);

  // a_k is determined by the input only while the previous convergent is
  // still resolvable at double precision.
  constexpr double kHorizon = 1e-15;
  ContinuedFraction cf;
  cf.source = ContinuedFraction::Source::RealInput;
  for (std::size_t k = 0; k < full.quotients.size(); ++k) {
    if (k > 0) {
      const BigInt err_num = exact.numerator() * full.q[k - 1] - full.p[k - 1] * exact.denominator();
      const double err =
          ratio_to_double(err_num < 0 ? BigInt(-err_num) : err_num, exact.denominator() * full.q[k - 1]);
      if (!(err > kHorizon)) break;
    }
    if (k > depth) break;
    cf.quotients.push_back(full.quotients[k]);
    cf.p.push_back(full.p[k]);
    cf.q.push_back(full.q[k]);
  }
  cf.complete = full.complete && cf.quotients.size() == full.quotients.size();
  if (cf.quotients.size() < depth + 1 && !cf.complete) {
    throw PrecisionHorizon("double input determines only " + std::to_string(cf.quotients.size() - 1) +
                           " partial quotients, " + std::to_string(depth) + " requested");
  }
  return cf;
}

std::optional<RotationNumber> detect_rational(double x, std::uint64_t max_denominator, double tol) {
  const RotationNumber exact = RotationNumber::from_double(x);
  const ContinuedFraction cf = expand(exact.numerator(), exact.denominator(), 4096);
  const long double xl = x - std::floor(x);
  for (std::size_t k = 0; k < cf.q.size(); ++k) {
    if (cf.q[k] > max_denominator) break;
    const auto q = cf.q[k].convert_to<std::uint64_t>();
    const auto p = cf.p[k].convert_to<std::uint64_t>();
    const long double defect = std::fabs(static_cast<long double>(q) * xl - static_cast<long double>(p));
    if (defect <= tol) return RotationNumber(BigInt(p), BigInt(q));
  }
  return std::nullopt;
}

}  // namespace hypdisc
