#pragma once

// Program builders and a brute-force reference oracle shared by the test
// binaries. The oracle evaluates constraints itself and scans a box, so it is
// independent of the library's interval walker and LP code.

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "pilp/model.hpp"

namespace pilp::testing {

inline const IntPolynomial kT{0, 1};

inline Pilp make_program(Form form, std::vector<std::vector<IntPolynomial>> a, std::vector<IntPolynomial> b,
                         std::vector<IntPolynomial> c) {
  Pilp p;
  p.form = form;
  p.m = b.size();
  p.n = c.size();
  p.a = std::move(a);
  p.b = std::move(b);
  p.c = std::move(c);
  return p;
}

// maximize x: x >= 0, 2x <= t
inline Pilp floor_program() { return make_program(Form::kCanonical, {{IntPolynomial{2}}}, {kT}, {IntPolynomial{1}}); }

// maximize x1: x >= 0, x1 + x2 <= t
inline Pilp simplex_program() {
  return make_program(Form::kCanonical, {{IntPolynomial{1}, IntPolynomial{1}}}, {kT}, {IntPolynomial{1}, IntPolynomial{}});
}

// [0, t]^2
inline Pilp square_program() {
  return make_program(Form::kCanonical, {{IntPolynomial{1}, IntPolynomial{}}, {IntPolynomial{}, IntPolynomial{1}}},
                      {kT, kT}, {IntPolynomial{1}, IntPolynomial{1}});
}

// x >= 0, x1 + 2 x2 <= t
inline Pilp triangle_program() {
  return make_program(Form::kCanonical, {{IntPolynomial{1}, IntPolynomial{2}}}, {kT}, {IntPolynomial{1}, IntPolynomial{}});
}

// x >= 0, x <= -1
inline Pilp infeasible_program() {
  return make_program(Form::kCanonical, {{IntPolynomial{1}}}, {IntPolynomial{-1}}, {IntPolynomial{1}});
}

// t x1 + x2 = t^2 + 1, x >= 0
inline Pilp digits_program(IntPolynomial c1 = IntPolynomial{1}, IntPolynomial c2 = IntPolynomial{}) {
  return make_program(Form::kStandard, {{kT, IntPolynomial{1}}}, {IntPolynomial{1, 0, 1}}, {std::move(c1), std::move(c2)});
}

inline Integer eval_at(const IntPolynomial& p, const Integer& t) {
  Integer v = 0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) v = v * t + *it;
  return v;
}

inline bool reference_contains(const Pilp& p, const Integer& t, const IntVector& x) {
  const bool nonneg = p.form != Form::kGeneral;
  if (nonneg && std::any_of(x.begin(), x.end(), [](const Integer& v) { return v < 0; })) return false;
  for (std::size_t i = 0; i < p.m; ++i) {
    Integer lhs = 0;
    for (std::size_t j = 0; j < p.n; ++j) lhs += eval_at(p.a[i][j], t) * x[j];
    const Integer rhs = eval_at(p.b[i], t);
    if (p.form == Form::kStandard ? lhs != rhs : lhs > rhs) return false;
  }
  return true;
}

inline Integer reference_objective(const Pilp& p, const Integer& t, const IntVector& x) {
  Integer v = 0;
  for (std::size_t j = 0; j < p.n; ++j) v += eval_at(p.c[j], t) * x[j];
  return v;
}

/// Every lattice point of p at t inside [lo, hi]^n, lexicographic.
inline std::vector<IntVector> reference_points(const Pilp& p, const Integer& t, const Integer& lo, const Integer& hi) {
  std::vector<IntVector> out;
  IntVector x(p.n, lo);
  if (p.n == 0) {
    if (reference_contains(p, t, x)) out.push_back(x);
    return out;
  }
  while (true) {
    if (reference_contains(p, t, x)) out.push_back(x);
    std::size_t k = p.n;
    while (k > 0) {
      --k;
      if (x[k] < hi) {
        ++x[k];
        std::fill(x.begin() + static_cast<std::ptrdiff_t>(k) + 1, x.end(), lo);
        break;
      }
      if (k == 0) return out;
    }
  }
}

/// Descending objective values with multiplicity, padded with nullopt.
inline std::vector<ExtendedInteger> reference_top(const Pilp& p, const Integer& t, std::size_t ell, const Integer& lo,
                                                  const Integer& hi, bool distinct = false) {
  std::vector<Integer> vals;
  for (const auto& x : reference_points(p, t, lo, hi)) vals.push_back(reference_objective(p, t, x));
  std::sort(vals.begin(), vals.end(), std::greater<>());
  if (distinct) vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  std::vector<ExtendedInteger> out;
  for (std::size_t k = 0; k < ell; ++k) out.push_back(k < vals.size() ? ExtendedInteger(vals[k]) : std::nullopt);
  return out;
}

inline Integer cross2(const IntVector& o, const IntVector& a, const IntVector& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

inline bool on_segment(const IntVector& p, const IntVector& a, const IntVector& b) {
  if (cross2(a, b, p) != 0) return false;
  for (int k = 0; k < 2; ++k) {
    if (p[k] < std::min(a[k], b[k]) || p[k] > std::max(a[k], b[k])) return false;
  }
  return true;
}

inline bool in_triangle(const IntVector& p, const IntVector& a, const IntVector& b, const IntVector& c) {
  const Integer d1 = cross2(a, b, p), d2 = cross2(b, c, p), d3 = cross2(c, a, p);
  const bool neg = d1 < 0 || d2 < 0 || d3 < 0;
  const bool pos = d1 > 0 || d2 > 0 || d3 > 0;
  return !(neg && pos);
}

/// Hull vertices of distinct 2-D points by Caratheodory brute force: p is not
/// a vertex iff it lies in a segment or triangle spanned by the other points.
inline std::vector<IntVector> reference_hull_2d(const std::vector<IntVector>& pts) {
  std::vector<IntVector> out;
  const std::size_t k = pts.size();
  for (std::size_t i = 0; i < k; ++i) {
    bool inside = false;
    for (std::size_t a = 0; a < k && !inside; ++a) {
      if (a == i) continue;
      for (std::size_t b = a + 1; b < k && !inside; ++b) {
        if (b == i) continue;
        if (on_segment(pts[i], pts[a], pts[b])) inside = true;
        for (std::size_t c = b + 1; c < k && !inside; ++c) {
          if (c == i || cross2(pts[a], pts[b], pts[c]) == 0) continue;
          inside = in_triangle(pts[i], pts[a], pts[b], pts[c]);
        }
      }
    }
    if (!inside) out.push_back(pts[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pilp::testing
