#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "pilp/arith.hpp"

namespace pilp {

/// Degree reported for the zero polynomial.
inline constexpr int kZeroDegree = -1;

/// Dense univariate polynomial in the parameter t, coefficients in ascending
/// degree. The highest stored coefficient is always nonzero; the zero
/// polynomial stores nothing.
template <class Coeff>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Coeff> coeffs) : coeffs_(coeffs) { trim(); }
  explicit Polynomial(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial constant(const Coeff& c) { return Polynomial(std::vector<Coeff>{c}); }

  static Polynomial monomial(const Coeff& c, std::size_t degree) {
    std::vector<Coeff> cs(degree + 1);
    cs[degree] = c;
    return Polynomial(std::move(cs));
  }

  /// The polynomial t.
  static Polynomial variable() { return monomial(Coeff(1), 1); }

  const std::vector<Coeff>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_constant() const { return coeffs_.size() <= 1; }

  Coeff coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Coeff(0); }
  /// Leading coefficient; zero for the zero polynomial.
  Coeff leading() const { return coeffs_.empty() ? Coeff(0) : coeffs_.back(); }
  int leading_sign() const { return coeffs_.empty() ? 0 : sgn(coeffs_.back()); }

  /// Horner evaluation.
  template <class Value>
  auto eval(const Value& t) const {
    using Result = std::conditional_t<std::is_same_v<Coeff, Rational> || std::is_same_v<Value, Rational>,
                                      Rational, Integer>;
    Result acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc *= t;
      acc += *it;
    }
    return acc;
  }

  /// Replace every coefficient by its absolute value. The result dominates
  /// |p(t)| for every t >= 1.
  Polynomial abs_coeffs() const {
    std::vector<Coeff> cs;
    cs.reserve(coeffs_.size());
    for (const auto& c : coeffs_) cs.push_back(abs(c));
    return Polynomial(std::move(cs));
  }

  Polynomial operator-() const {
    std::vector<Coeff> cs;
    cs.reserve(coeffs_.size());
    for (const auto& c : coeffs_) cs.push_back(-c);
    return Polynomial(std::move(cs));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }

  Polynomial& operator*=(const Coeff& s) {
    for (auto& c : coeffs_) c *= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Coeff& s) { return a *= s; }
  friend Polynomial operator*(const Coeff& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Coeff> cs(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) cs[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(cs));
  }

  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Lexicographic order on (degree, coefficients from the top); only a
  /// total order for containers, unrelated to eventual comparison.
  friend bool structural_less(const Polynomial& a, const Polynomial& b) {
    if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
    for (std::size_t i = a.coeffs_.size(); i-- > 0;) {
      if (a.coeffs_[i] != b.coeffs_[i]) return a.coeffs_[i] < b.coeffs_[i];
    }
    return false;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Coeff> coeffs_;
};

using IntPolynomial = Polynomial<Integer>;
using RationalPolynomial = Polynomial<Rational>;

RationalPolynomial to_rational(const IntPolynomial& p);

/// Write p = q / den with q integral and den the positive lcm of the
/// coefficient denominators.
std::pair<IntPolynomial, Integer> clear_denominators(const RationalPolynomial& p);

/// Exact integer polynomial, or throws PreconditionError when some
/// coefficient is non-integral.
IntPolynomial to_integer(const RationalPolynomial& p);

/// gcd of the coefficients, nonnegative; zero for the zero polynomial.
Integer content(const IntPolynomial& p);

/// Division with remainder over Q. Throws on division by zero.
std::pair<RationalPolynomial, RationalPolynomial> divrem(const RationalPolynomial& a,
                                                         const RationalPolynomial& b);

/// Monic gcd over Q (zero if both inputs are zero).
RationalPolynomial gcd(const RationalPolynomial& a, const RationalPolynomial& b);

/// Stabilized order of p(t) versus q(t) as t -> infinity.
std::strong_ordering compare_eventually(const RationalPolynomial& p, const RationalPolynomial& q);
std::strong_ordering compare_eventually(const IntPolynomial& p, const IntPolynomial& q);

/// An integer T >= 0 with sign(p(t)) = sign(leading coefficient of p) for
/// every t > T (Cauchy root bound).
Integer eventual_sign_threshold(const RationalPolynomial& p);
Integer eventual_sign_threshold(const IntPolynomial& p);

/// Unique polynomial of degree < points.size() through the given points.
/// Throws PreconditionError on duplicate abscissae or empty input.
RationalPolynomial interpolate(std::span<const std::pair<Integer, Rational>> points);

/// Human-readable form such as "t^2 - 5*t + 6" or "(t - 1)/2".
std::string to_string(const IntPolynomial& p, std::string_view var = "t");
std::string to_string(const RationalPolynomial& p, std::string_view var = "t");

}  // namespace pilp
