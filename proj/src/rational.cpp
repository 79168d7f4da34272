#include "rck/rational.hpp"

#include "rck/errors.hpp"

namespace rck {

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw PreconditionError("empty rational literal");
  for (char c : text)
    if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
      throw PreconditionError("malformed rational '" + std::string(text) + "'");
  try {
    return Rational(std::string(text));
  } catch (const std::exception& e) {
    throw PreconditionError("malformed rational '" + std::string(text) + "': " + e.what());
  }
}

std::string to_string(const Rational& value) { return value.str(); }

ExtendedRational& ExtendedRational::operator+=(const ExtendedRational& other) {
  if (minus_infinity_ || other.minus_infinity_) {
    minus_infinity_ = true;
    value_ = 0;
  } else {
    value_ += other.value_;
  }
  return *this;
}

ExtendedRational ExtendedRational::scaled(const Rational& weight) const {
  if (weight <= 0) throw PreconditionError("scaling weight must be positive");
  if (minus_infinity_) return *this;
  return ExtendedRational(value_ * weight);
}

std::string to_string(const ExtendedRational& value) {
  return value.is_minus_infinity() ? std::string("-inf") : to_string(value.value());
}

}  // namespace rck
