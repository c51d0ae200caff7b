#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pilp/polynomial.hpp"

namespace pilp {

/// A rational polynomial or BOTTOM, the constant function -inf.
class ExtendedPolynomial {
 public:
  ExtendedPolynomial() = default;  // BOTTOM
  ExtendedPolynomial(RationalPolynomial p) : poly_(std::move(p)) {}  // NOLINT(google-explicit-constructor)

  static ExtendedPolynomial bottom() { return {}; }

  bool is_bottom() const { return !poly_.has_value(); }
  /// Precondition: !is_bottom().
  const RationalPolynomial& polynomial() const;

  ExtendedRational eval(const Integer& t) const;

  /// p + q; BOTTOM absorbs.
  ExtendedPolynomial shifted(const RationalPolynomial& q) const;
  /// s * p for s > 0; BOTTOM absorbs. Non-positive s throws.
  ExtendedPolynomial scaled(const Rational& s) const;

  friend bool operator==(const ExtendedPolynomial&, const ExtendedPolynomial&) = default;

 private:
  std::optional<RationalPolynomial> poly_;
};

/// Stabilized order as t -> infinity; BOTTOM is below every polynomial.
std::strong_ordering compare_eventually(const ExtendedPolynomial& p, const ExtendedPolynomial& q);

/// Stable descending sort under compare_eventually; returns the permutation.
std::vector<std::size_t> eventual_sort(std::span<const ExtendedPolynomial> fs);

std::string to_string(const ExtendedPolynomial& p, std::string_view var = "t");

/// Eventual quasi-polynomial: for t > threshold, value(t) = branches[t mod period](t).
struct QuasiPolynomial {
  std::size_t period = 1;
  Integer threshold = 0;
  std::vector<ExtendedPolynomial> branches{ExtendedPolynomial::bottom()};

  static QuasiPolynomial constant(ExtendedPolynomial p, const Integer& threshold = 0);

  const ExtendedPolynomial& branch_for(const Integer& t) const;
  /// Same function written with a period that is a multiple of this one.
  QuasiPolynomial lifted(std::size_t new_period) const;

  friend bool operator==(const QuasiPolynomial&, const QuasiPolynomial&) = default;
};

/// Throws OutOfRangeError when t <= qp.threshold.
ExtendedRational qp_eval(const QuasiPolynomial& qp, const Integer& t);

std::string to_string(const QuasiPolynomial& qp);

}  // namespace pilp
