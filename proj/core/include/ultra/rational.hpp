#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace ultra {

/// Exact nonnegative rational scalar, the value type of every distance.
///
/// Stored in lowest terms with a positive denominator, so equality is plain
/// field equality and ordering is an exact cross-multiplication. There is no
/// floating-point anywhere: values come from integer arithmetic or from
/// Rational::parse, which accepts "7", "3/4" and exact decimals like "0.25".
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value);  // NOLINT: integers convert implicitly
  Rational(std::int64_t numerator, std::int64_t denominator);

  /// Parses "<digits>", "<digits>/<digits>" or "<digits>.<digits>".
  /// Exponents, signs, hex floats and anything else raise StructuralError;
  /// rejecting binary floating point keeps exact equality meaningful.
  static Rational parse(std::string_view text);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  /// Canonical text form: "3" for integers, "3/4" otherwise.
  std::string str() const;

  Rational operator+(const Rational& other) const;
  Rational operator*(const Rational& other) const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;

  void normalize();
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace ultra
