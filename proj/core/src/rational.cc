#include "topent/rational.h"

#include <charconv>
#include <limits>
#include <ostream>

#include "topent/error.h"

namespace topent {
namespace {

wide_int wide_abs(wide_int v) { return v < 0 ? -v : v; }

wide_int wide_gcd(wide_int a, wide_int b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    const wide_int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr wide_int kMax = std::numeric_limits<std::int64_t>::max();

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(wide_int num, wide_int den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) return Rational();
  const wide_int g = wide_gcd(num, den);
  num /= g;
  den /= g;
  if (num > kMax || num < -kMax || den > kMax) {
    throw ArithmeticOverflow("rational result exceeds 64-bit range");
  }
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::pow2(int exponent) {
  if (exponent < -62 || exponent > 62) {
    throw ArithmeticOverflow("pow2 exponent out of range: " + std::to_string(exponent));
  }
  Rational r;
  if (exponent >= 0) {
    r.num_ = std::int64_t{1} << exponent;
  } else {
    r.num_ = 1;
    r.den_ = std::int64_t{1} << (-exponent);
  }
  return r;
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    std::int64_t v = 0;
    const auto* first = part.data();
    const auto* last = part.data() + part.size();
    if (!part.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) {
      throw InvalidArgument("malformed rational: '" + std::string(text) + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (den_ == rhs.den_) {
    *this = from_wide(wide_int{num_} + rhs.num_, den_);
    return *this;
  }
  const std::int64_t g = gcd64(den_, rhs.den_);
  const wide_int num = wide_int{num_} * (rhs.den_ / g) + wide_int{rhs.num_} * (den_ / g);
  const wide_int den = wide_int{den_ / g} * rhs.den_;
  *this = from_wide(num, den);
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  if (num_ == 0 || rhs.num_ == 0) {
    *this = Rational();
    return *this;
  }
  const std::int64_t g1 = gcd64(num_, rhs.den_);
  const std::int64_t g2 = gcd64(rhs.num_, den_);
  const wide_int num = wide_int{num_ / g1} * (rhs.num_ / g2);
  const wide_int den = wide_int{den_ / g2} * (rhs.den_ / g1);
  *this = from_wide(num, den);
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw InvalidArgument("division by zero rational");
  Rational inv;
  inv.num_ = rhs.num_ < 0 ? -rhs.den_ : rhs.den_;
  inv.den_ = rhs.num_ < 0 ? -rhs.num_ : rhs.num_;
  return *this *= inv;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) return a.num_ <=> b.num_;
  const wide_int lhs = wide_int{a.num_} * b.den_;
  const wide_int rhs = wide_int{b.num_} * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational abs(const Rational& value) { return value.sign() < 0 ? -value : value; }

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.str(); }

}  // namespace topent
