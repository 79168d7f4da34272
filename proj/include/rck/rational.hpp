#ifndef RCK_RATIONAL_HPP
#define RCK_RATIONAL_HPP

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace rck {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", "p" or "-p/q". Throws PreconditionError on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers print without a denominator.
std::string to_string(const Rational& value);

/// Utility on the extended real line restricted to what the attack game needs:
/// exact rationals plus a single minus-infinity sentinel.
class ExtendedRational {
 public:
  ExtendedRational() = default;
  ExtendedRational(Rational value) : value_(std::move(value)) {}  // NOLINT(implicit)

  static ExtendedRational minus_infinity() {
    ExtendedRational r;
    r.minus_infinity_ = true;
    return r;
  }

  bool is_minus_infinity() const { return minus_infinity_; }
  const Rational& value() const { return value_; }

  ExtendedRational& operator+=(const ExtendedRational& other);
  friend ExtendedRational operator+(ExtendedRational a, const ExtendedRational& b) { return a += b; }

  /// Scaling by a strictly positive weight keeps minus infinity.
  ExtendedRational scaled(const Rational& weight) const;

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.minus_infinity_ || b.minus_infinity_) return a.minus_infinity_ == b.minus_infinity_;
    return a.value_ == b.value_;
  }
  friend bool operator<(const ExtendedRational& a, const ExtendedRational& b) {
    if (b.minus_infinity_) return false;
    if (a.minus_infinity_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const ExtendedRational& a, const ExtendedRational& b) { return !(b < a); }
  friend bool operator>(const ExtendedRational& a, const ExtendedRational& b) { return b < a; }

 private:
  bool minus_infinity_ = false;
  Rational value_{0};
};

std::string to_string(const ExtendedRational& value);

}  // namespace rck

#endif  // RCK_RATIONAL_HPP
