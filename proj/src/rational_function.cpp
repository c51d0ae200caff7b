#include "pilp/rational_function.hpp"

#include <algorithm>

#include "pilp/error.hpp"

namespace pilp {

RationalFunction::RationalFunction(IntPolynomial num, IntPolynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw PreconditionError("rational function with zero denominator");
  normalize();
}

RationalFunction::RationalFunction(const RationalPolynomial& p) {
  auto [num, den] = clear_denominators(p);
  num_ = std::move(num);
  den_ = IntPolynomial::constant(den);
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = IntPolynomial::constant(1);
    return;
  }
  const RationalPolynomial g = gcd(to_rational(num_), to_rational(den_));
  if (g.degree() > 0) {
    num_ = clear_denominators(divrem(to_rational(num_), g).first).first;
    den_ = clear_denominators(divrem(to_rational(den_), g).first).first;
  }
  Integer c = content(num_);
  mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), content(den_).get_mpz_t());
  if (den_.leading_sign() < 0) c = -c;
  if (c != 1) {
    std::vector<Integer> n, d;
    for (const auto& x : num_.coeffs()) n.push_back(x / c);
    for (const auto& x : den_.coeffs()) d.push_back(x / c);
    num_ = IntPolynomial(std::move(n));
    den_ = IntPolynomial(std::move(d));
  }
}

Integer RationalFunction::sign_threshold() const {
  return std::max(eventual_sign_threshold(num_), eventual_sign_threshold(den_));
}

Rational RationalFunction::eval(const Integer& t) const {
  const Integer d = den_.eval(t);
  if (d == 0) throw PreconditionError("rational function pole at t = " + to_string(t));
  return make_rational(num_.eval(t), d);
}

RationalFunction RationalFunction::operator-() const { return {-num_, den_}; }

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw PreconditionError("division by the zero rational function");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

std::string to_string(const RationalFunction& f, std::string_view var) {
  if (f.den() == IntPolynomial::constant(1)) return to_string(f.num(), var);
  return "(" + to_string(f.num(), var) + ")/(" + to_string(f.den(), var) + ")";
}

}  // namespace pilp
