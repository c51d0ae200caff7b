#pragma once

#include <string>

#include "pilp/polynomial.hpp"

namespace pilp {

/// Quotient of integer polynomials in canonical form: gcd(num, den) is
/// constant, the combined coefficient content is 1 and den has a positive
/// leading coefficient. Equal functions therefore have identical fields.
class RationalFunction {
 public:
  RationalFunction() : den_(IntPolynomial::constant(1)) {}
  RationalFunction(IntPolynomial num, IntPolynomial den);
  explicit RationalFunction(const RationalPolynomial& p);

  const IntPolynomial& num() const { return num_; }
  const IntPolynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }

  /// Sign of the function for all sufficiently large t.
  int eventual_sign() const { return num_.leading_sign(); }

  /// T >= 0 such that num and den have constant, nonzero sign on t > T.
  Integer sign_threshold() const;

  /// Throws PreconditionError when den(t) = 0.
  Rational eval(const Integer& t) const;

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  /// Throws PreconditionError on division by the zero function.
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) = default;

 private:
  void normalize();

  IntPolynomial num_;
  IntPolynomial den_;
};

std::string to_string(const RationalFunction& f, std::string_view var = "t");

}  // namespace pilp
