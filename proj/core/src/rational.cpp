#include "ultra/rational.hpp"

#include <cctype>
#include <limits>
#include <numeric>
#include <ostream>

#include "ultra/errors.hpp"

namespace ultra {

namespace {

using Wide = __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

std::int64_t narrow(Wide value, const char* context) {
  if (value > static_cast<Wide>(kMax)) {
    throw DomainError(std::string(context) + ": value exceeds 64-bit exact range");
  }
  return static_cast<std::int64_t>(value);
}

Wide gcd_wide(Wide a, Wide b) {
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::int64_t parse_digits(std::string_view s) {
  std::int64_t value = 0;
  for (char c : s) {
    if (value > (kMax - (c - '0')) / 10) {
      throw StructuralError("distance literal too large for exact 64-bit arithmetic: '" +
                            std::string(s) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

Rational::Rational(std::int64_t value) : num_(value), den_(1) {
  if (value < 0) throw DomainError("distances are nonnegative, got " + std::to_string(value));
}

Rational::Rational(std::int64_t numerator, std::int64_t denominator)
    : num_(numerator), den_(denominator) {
  if (den_ == 0) throw DomainError("zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ < 0) throw DomainError("distances are nonnegative");
  normalize();
}

void Rational::normalize() {
  std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw StructuralError("not a distance value: '" + std::string(text) +
                          "' (expected digits, a p/q ratio or an exact decimal)");
  };
  if (text.empty()) return fail();

  auto slash = text.find('/');
  auto dot = text.find('.');
  if (slash != std::string_view::npos) {
    std::string_view p = text.substr(0, slash);
    std::string_view q = text.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) return fail();
    std::int64_t den = parse_digits(q);
    if (den == 0) throw StructuralError("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_digits(p), den);
  }
  if (dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) return fail();
    std::int64_t num = parse_digits(whole);
    std::int64_t den = 1;
    for (char c : frac) {
      if (den > kMax / 10) {
        throw StructuralError("decimal literal too precise for exact 64-bit arithmetic: '" +
                              std::string(text) + "'");
      }
      den *= 10;
      std::int64_t digit = c - '0';
      if (num > (kMax - digit) / 10) {
        throw StructuralError("decimal literal too large: '" + std::string(text) + "'");
      }
      num = num * 10 + digit;
    }
    return Rational(num, den);
  }
  if (!all_digits(text)) return fail();
  return Rational(parse_digits(text));
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator+(const Rational& other) const {
  Wide num = static_cast<Wide>(num_) * other.den_ + static_cast<Wide>(other.num_) * den_;
  Wide den = static_cast<Wide>(den_) * other.den_;
  Wide g = gcd_wide(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  Rational result;
  result.num_ = narrow(num, "rational addition");
  result.den_ = narrow(den, "rational addition");
  return result;
}

Rational Rational::operator*(const Rational& other) const {
  std::int64_t g1 = std::gcd(num_, other.den_);
  std::int64_t g2 = std::gcd(other.num_, den_);
  Wide num = static_cast<Wide>(num_ / g1) * (other.num_ / g2);
  Wide den = static_cast<Wide>(den_ / g2) * (other.den_ / g1);
  Rational result;
  result.num_ = narrow(num, "rational multiplication");
  result.den_ = narrow(den, "rational multiplication");
  return result;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Wide lhs = static_cast<Wide>(a.num_) * b.den_;
  Wide rhs = static_cast<Wide>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& value) {
  return os << value.str();
}

}  // namespace ultra
