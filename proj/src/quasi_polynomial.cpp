#include "pilp/quasi_polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "pilp/error.hpp"

namespace pilp {

const RationalPolynomial& ExtendedPolynomial::polynomial() const {
  if (!poly_) throw PreconditionError("BOTTOM has no polynomial");
  return *poly_;
}

ExtendedRational ExtendedPolynomial::eval(const Integer& t) const {
  if (!poly_) return std::nullopt;
  return poly_->eval(Rational(t));
}

ExtendedPolynomial ExtendedPolynomial::shifted(const RationalPolynomial& q) const {
  if (!poly_) return bottom();
  return *poly_ + q;
}

ExtendedPolynomial ExtendedPolynomial::scaled(const Rational& s) const {
  if (s <= 0) throw PreconditionError("BOTTOM-aware scaling requires a positive factor");
  if (!poly_) return bottom();
  return *poly_ * s;
}

std::strong_ordering compare_eventually(const ExtendedPolynomial& p, const ExtendedPolynomial& q) {
  if (p.is_bottom() || q.is_bottom()) return !p.is_bottom() <=> !q.is_bottom();
  return compare_eventually(p.polynomial(), q.polynomial());
}

std::vector<std::size_t> eventual_sort(std::span<const ExtendedPolynomial> fs) {
  std::vector<std::size_t> order(fs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return compare_eventually(fs[a], fs[b]) == std::strong_ordering::greater;
  });
  return order;
}

std::string to_string(const ExtendedPolynomial& p, std::string_view var) {
  return p.is_bottom() ? std::string("-inf") : to_string(p.polynomial(), var);
}

QuasiPolynomial QuasiPolynomial::constant(ExtendedPolynomial p, const Integer& threshold) {
  return {1, threshold, {std::move(p)}};
}

const ExtendedPolynomial& QuasiPolynomial::branch_for(const Integer& t) const {
  const Integer residue = mod_floor(t, Integer(static_cast<unsigned long>(period)));
  return branches[residue.get_ui()];
}

QuasiPolynomial QuasiPolynomial::lifted(std::size_t new_period) const {
  if (new_period % period != 0) throw PreconditionError("lifted period must be a multiple");
  QuasiPolynomial out{new_period, threshold, {}};
  out.branches.reserve(new_period);
  for (std::size_t j = 0; j < new_period; ++j) out.branches.push_back(branches[j % period]);
  return out;
}

ExtendedRational qp_eval(const QuasiPolynomial& qp, const Integer& t) {
  if (t <= qp.threshold) {
    throw OutOfRangeError("t = " + to_string(t) + " is not above the certified threshold " +
                          to_string(qp.threshold));
  }
  return qp.branch_for(t).eval(t);
}

std::string to_string(const QuasiPolynomial& qp) {
  std::string out = "d=" + std::to_string(qp.period);
  if (qp.period == 1) return out + "; P=" + to_string(qp.branches[0]);
  for (std::size_t j = 0; j < qp.period; ++j) {
    out += "; P" + std::to_string(j) + "=" + to_string(qp.branches[j]);
  }
  return out;
}

}  // namespace pilp
