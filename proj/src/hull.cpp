#include "pilp/hull.hpp"

#include <algorithm>
#include <map>

#include "pilp/error.hpp"
#include "pilp/oracle.hpp"

namespace pilp {

namespace {

bool is_zero(const Rational& v) { return v == 0; }
bool is_zero(const RationalFunction& v) { return v.is_zero(); }

// Solves M x = rhs by Gaussian elimination over a field; nullopt when M is
// singular. M is square.
template <class F>
std::optional<std::vector<F>> solve(std::vector<std::vector<F>> m, std::vector<F> rhs) {
  const std::size_t k = m.size();
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    while (pivot < k && is_zero(m[pivot][col])) ++pivot;
    if (pivot == k) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col || is_zero(m[r][col])) continue;
      const F f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < k; ++c) m[r][c] = m[r][c] - f * m[col][c];
      rhs[r] = rhs[r] - f * rhs[col];
    }
  }
  for (std::size_t r = 0; r < k; ++r) rhs[r] = rhs[r] / m[r][r];
  return rhs;
}

RationalFunction determinant(std::vector<std::vector<RationalFunction>> m) {
  const std::size_t k = m.size();
  RationalFunction det(RationalPolynomial::constant(Rational(1)));
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    while (pivot < k && m[pivot][col].is_zero()) ++pivot;
    if (pivot == k) return RationalFunction{};
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det = det * m[col][col];
    for (std::size_t r = col + 1; r < k; ++r) {
      if (m[r][col].is_zero()) continue;
      const RationalFunction f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < k; ++c) m[r][c] = m[r][c] - f * m[col][c];
    }
  }
  return det;
}

// Calls visit(subset) for every k-subset of {0..n-1} in lexicographic order
// until visit returns true.
template <class Visit>
bool for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (visit(std::as_const(idx))) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

PolyVector difference(const PolyVector& a, const PolyVector& b) {
  PolyVector out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
  return out;
}

void check_dimensions(std::span<const PolyVector> vs) {
  for (const auto& v : vs) {
    if (v.size() != vs.front().size()) throw PreconditionError("vectors of mixed dimension");
  }
}

Integer max_of(const Integer& a, const Integer& b) { return a > b ? a : b; }

}  // namespace

PolyVector to_poly_vector(std::span<const Integer> v) {
  PolyVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(RationalPolynomial::constant(Rational(x)));
  return out;
}

std::vector<Rational> eval(const PolyVector& v, const Integer& t) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (const auto& p : v) out.push_back(p.eval(t));
  return out;
}

IntVector eval_integral(const PolyVector& v, const Integer& t) {
  IntVector out;
  out.reserve(v.size());
  for (const auto& p : v) {
    const Rational x = p.eval(t);
    if (x.get_den() != 1) throw PreconditionError("vector is not integral at t = " + to_string(t));
    out.push_back(x.get_num());
  }
  return out;
}

std::strong_ordering compare_eventually(const PolyVector& a, const PolyVector& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    const auto c = compare_eventually(a[i], b[i]);
    if (c != std::strong_ordering::equal) return c;
  }
  return a.size() <=> b.size();
}

IndependenceResult affinely_independent_eventually(std::span<const PolyVector> vs) {
  if (vs.empty()) throw PreconditionError("affine independence of an empty set");
  check_dimensions(vs);
  IndependenceResult out;
  const std::size_t k = vs.size() - 1;
  const std::size_t n = vs.front().size();
  if (k == 0) {
    out.independent = true;
    return out;
  }
  std::vector<PolyVector> diffs;
  for (std::size_t h = 1; h < vs.size(); ++h) diffs.push_back(difference(vs[h], vs[0]));
  for_each_subset(n, k, [&](const std::vector<std::size_t>& rows) {
    std::vector<std::vector<RationalFunction>> m(k, std::vector<RationalFunction>(k));
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t h = 0; h < k; ++h) m[r][h] = RationalFunction(diffs[h][rows[r]]);
    }
    const RationalFunction det = determinant(std::move(m));
    if (det.is_zero()) return false;
    out.independent = true;
    out.threshold = eventual_sign_threshold(det.num());
    out.minor_rows = rows;
    return true;
  });
  return out;
}

ConvexCombination convex_combination_eventually(const PolyVector& w, std::span<const PolyVector> vs) {
  const IndependenceResult base = affinely_independent_eventually(vs);
  if (!base.independent) throw PreconditionError("convex_combination_eventually needs affinely independent vectors");
  if (w.size() != vs.front().size()) throw PreconditionError("vectors of mixed dimension");
  ConvexCombination out;
  std::vector<PolyVector> extended(vs.begin(), vs.end());
  extended.push_back(w);
  const IndependenceResult ext = affinely_independent_eventually(extended);
  if (ext.independent) {
    out.threshold = ext.threshold;
    return out;
  }
  const std::size_t k = vs.size() - 1;
  const PolyVector target = difference(w, vs[0]);
  std::vector<RationalFunction> lambda;
  if (k > 0) {
    std::vector<std::vector<RationalFunction>> m(k, std::vector<RationalFunction>(k));
    std::vector<RationalFunction> rhs(k);
    for (std::size_t r = 0; r < k; ++r) {
      const std::size_t row = base.minor_rows[r];
      for (std::size_t h = 0; h < k; ++h) m[r][h] = RationalFunction(vs[h + 1][row] - vs[0][row]);
      rhs[r] = RationalFunction(target[row]);
    }
    lambda = *solve(std::move(m), std::move(rhs));
  }
  for (std::size_t row = 0; row < w.size(); ++row) {
    RationalFunction sum;
    for (std::size_t h = 0; h < k; ++h) sum = sum + lambda[h] * RationalFunction(vs[h + 1][row] - vs[0][row]);
    if (!(sum == RationalFunction(target[row]))) throw Error("affine combination is inconsistent");
  }
  const RationalFunction one(RationalPolynomial::constant(Rational(1)));
  RationalFunction first = one;
  for (const auto& l : lambda) first = first - l;
  out.coefficients.push_back(first);
  out.coefficients.insert(out.coefficients.end(), lambda.begin(), lambda.end());
  out.threshold = base.threshold;
  out.inside = true;
  for (const auto& c : out.coefficients) {
    const RationalFunction rest = one - c;
    out.threshold = max_of(out.threshold, max_of(c.sign_threshold(), rest.sign_threshold()));
    if (c.eventual_sign() < 0 || rest.eventual_sign() < 0) out.inside = false;
  }
  return out;
}

EventualHull eventual_hull_vertices(std::span<const PolyVector> vs) {
  EventualHull out;
  if (vs.empty()) return out;
  check_dimensions(vs);
  const std::size_t n = vs.front().size();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (vs[i] == vs[j]) throw PreconditionError("eventual_hull_vertices: repeated vector");
      // The two vectors stay distinct past the first differing coordinate's roots.
      for (std::size_t c = 0; c < n; ++c) {
        const RationalPolynomial diff = vs[i][c] - vs[j][c];
        if (diff.is_zero()) continue;
        out.threshold = max_of(out.threshold, eventual_sign_threshold(diff));
        break;
      }
    }
  }
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < vs.size(); ++j) {
      if (j != i) others.push_back(j);
    }
    bool inside = false;
    for (std::size_t s = 1; s <= std::min(n + 1, others.size()) && !inside; ++s) {
      inside = for_each_subset(others.size(), s, [&](const std::vector<std::size_t>& pick) {
        std::vector<PolyVector> simplex;
        for (std::size_t p : pick) simplex.push_back(vs[others[p]]);
        const IndependenceResult ind = affinely_independent_eventually(simplex);
        if (!ind.independent) return false;
        const ConvexCombination cc = convex_combination_eventually(vs[i], simplex);
        out.threshold = max_of(out.threshold, max_of(ind.threshold, cc.threshold));
        return cc.inside;
      });
    }
    if (!inside) out.vertices.push_back(i);
  }
  return out;
}

CandidateVertices candidate_vertices_reduced(const Pilp& p) {
  if (p.form != Form::kReducedCanonical) {
    throw FormError("candidate vertices need a reduced-canonical program, got " + std::string(to_string(p.form)));
  }
  require_valid(p);
  const auto rows = general_form_rows(p);
  const std::size_t n = p.n;
  CandidateVertices out;
  std::vector<PolyVector> points;
  for_each_subset(rows.size(), n, [&](const std::vector<std::size_t>& pick) {
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t j = 0; j < n; ++j) m[r][j] = rows[pick[r]].a[j].coeff(0);
    }
    // Solve for the constant and the t coefficient separately.
    std::vector<Rational> rhs0(n), rhs1(n);
    for (std::size_t r = 0; r < n; ++r) {
      rhs0[r] = rows[pick[r]].b.coeff(0);
      rhs1[r] = rows[pick[r]].b.coeff(1);
    }
    const auto x0 = solve(m, rhs0);
    if (!x0) return false;
    const auto x1 = solve(m, rhs1);
    PolyVector v;
    for (std::size_t j = 0; j < n; ++j) v.push_back(RationalPolynomial{(*x0)[j], (*x1)[j]});
    if (std::find(points.begin(), points.end(), v) == points.end()) points.push_back(std::move(v));
    return false;
  });
  if (points.empty()) throw PreconditionError("degenerate program: no nonsingular n x n subsystem");
  std::sort(points.begin(), points.end(),
            [](const PolyVector& a, const PolyVector& b) { return compare_eventually(a, b) < 0; });
  for (auto& v : points) {
    bool ok = true;
    for (const auto& row : rows) {
      RationalPolynomial slack = to_rational(row.b);
      for (std::size_t j = 0; j < n; ++j) slack -= to_rational(row.a[j]) * v[j];
      out.threshold = max_of(out.threshold, eventual_sign_threshold(slack));
      if (slack.leading_sign() < 0) ok = false;
    }
    out.candidates.push_back({std::move(v), ok});
  }
  return out;
}

std::vector<IntVector> ParametricVertexFamily::vertices_at(const Integer& t) const {
  if (t <= threshold) {
    throw OutOfRangeError("t = " + to_string(t) + " is not above the certified threshold " + to_string(threshold));
  }
  const std::size_t j = mod_floor(t, Integer(static_cast<unsigned long>(period))).get_ui();
  std::vector<IntVector> out;
  for (const auto& v : classes[j]) out.push_back(eval_integral(v, t));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntVector> lattice_hull_vertices(const Pilp& p, const Integer& t) {
  if (t < 1) throw PreconditionError("t must be a positive integer, got " + to_string(t));
  return lattice_hull_vertices(instantiate(p, t));
}

HullInference infer_hull_structure(const Pilp& p, const InferenceConfig& cfg) {
  cfg.check();
  if (!p.bounded) throw PreconditionError("infer_hull_structure requires the boundedness assertion");
  std::map<Integer, std::vector<IntVector>> cache;
  const auto vertices = [&](const Integer& t) -> const std::vector<IntVector>& {
    auto it = cache.find(t);
    if (it == cache.end()) it = cache.emplace(t, lattice_hull_vertices(p, t)).first;
    return it->second;
  };
  for (std::size_t d = 1; d <= cfg.d_max; ++d) {
    const Integer dd(static_cast<unsigned long>(d));
    for (Integer N = cfg.t_start;; N *= 2) {
      ParametricVertexFamily fam;
      fam.period = d;
      fam.threshold = N;
      fam.classes.resize(d);
      bool in_budget = true;
      bool fits = true;
      for (std::size_t j = 0; j < d && fits; ++j) {
        const Integer first = N + 1 + mod_floor(Integer(static_cast<unsigned long>(j)) - N - 1, dd);
        const std::size_t total = cfg.deg_max + 1 + cfg.validate_count;
        if (first + dd * static_cast<unsigned long>(total - 1) > cfg.t_cap) {
          in_budget = false;
          break;
        }
        std::vector<Integer> ts;
        for (std::size_t i = 0; i < total; ++i) ts.push_back(first + dd * static_cast<unsigned long>(i));
        const std::size_t count = vertices(ts[0]).size();
        for (const auto& t : ts) {
          fam.samples.push_back({t, Integer(static_cast<unsigned long>(vertices(t).size()))});
          if (vertices(t).size() != count) fits = false;
          if (!fits) break;
        }
        if (!fits) break;
        // Rank r of the sorted vertex list is matched across the fit samples.
        std::vector<PolyVector> family;
        const std::size_t dim = p.n;
        for (std::size_t r = 0; r < count; ++r) {
          PolyVector v;
          for (std::size_t c = 0; c < dim; ++c) {
            std::vector<std::pair<Integer, Rational>> pts;
            for (unsigned i = 0; i <= cfg.deg_max; ++i) pts.emplace_back(ts[i], Rational(vertices(ts[i])[r][c]));
            v.push_back(interpolate(pts));
          }
          family.push_back(std::move(v));
        }
        for (std::size_t i = cfg.deg_max + 1; i < total && fits; ++i) {
          std::vector<IntVector> predicted;
          for (const auto& v : family) {
            const auto x = eval(v, ts[i]);
            IntVector xi;
            for (const auto& q : x) {
              if (q.get_den() != 1) fits = false;
              xi.push_back(q.get_num());
            }
            predicted.push_back(std::move(xi));
          }
          std::sort(predicted.begin(), predicted.end());
          if (predicted != vertices(ts[i])) fits = false;
        }
        if (!fits) break;
        for (std::size_t a = 0; a < family.size() && fits; ++a) {
          for (std::size_t b = a + 1; b < family.size() && fits; ++b) fits = !(family[a] == family[b]);
        }
        if (!fits) break;
        // A coincidental non-vertex means the samples started too early.
        if (eventual_hull_vertices(family).vertices.size() != family.size()) {
          fits = false;
          break;
        }
        std::sort(family.begin(), family.end(),
                  [](const PolyVector& a, const PolyVector& b) { return compare_eventually(a, b) < 0; });
        fam.classes[j] = std::move(family);
      }
      if (!in_budget) break;
      if (fits) return fam;
    }
  }
  return NoFit{"no period d <= " + std::to_string(cfg.d_max) + " fitted the hull vertices up to t_cap = " +
                   to_string(cfg.t_cap),
               cache.size()};
}

}  // namespace pilp
