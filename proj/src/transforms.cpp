#include "pilp/transforms.hpp"

#include <algorithm>
#include <functional>

#include "pilp/error.hpp"

namespace pilp {

namespace {

IntPolynomial constant(const Integer& v) { return IntPolynomial::constant(v); }

IntPolynomial power_of_t(unsigned r) { return IntPolynomial::monomial(Integer(1), r); }

bool is_constant_row(const std::vector<IntPolynomial>& row) {
  return std::all_of(row.begin(), row.end(), [](const IntPolynomial& e) { return e.is_constant(); });
}

IntVector constant_row(const std::vector<IntPolynomial>& row) {
  IntVector out;
  out.reserve(row.size());
  for (const auto& e : row) out.push_back(e.coeff(0));
  return out;
}

bool is_zero_vector(std::span<const Integer> v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

std::vector<IntPolynomial> to_poly_row(std::span<const Integer> v) {
  std::vector<IntPolynomial> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(constant(x));
  return out;
}

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void append_row(Pilp& p, std::vector<IntPolynomial> a, IntPolynomial b) {
  p.a.push_back(std::move(a));
  p.b.push_back(std::move(b));
  ++p.m;
}

std::vector<IntPolynomial> negated(const std::vector<IntPolynomial>& row) {
  std::vector<IntPolynomial> out;
  out.reserve(row.size());
  for (const auto& e : row) out.push_back(-e);
  return out;
}

}  // namespace

AffineParamMap AffineParamMap::identity(std::size_t dim) {
  AffineParamMap m;
  m.target_dim = m.source_dim = dim;
  m.matrix.assign(dim, std::vector<IntPolynomial>(dim));
  for (std::size_t i = 0; i < dim; ++i) m.matrix[i][i] = constant(1);
  m.offset.assign(dim, RationalPolynomial{});
  return m;
}

IntVector AffineParamMap::apply(const Integer& t, std::span<const Integer> x) const {
  if (x.size() != source_dim) throw PreconditionError("affine map applied to a vector of the wrong length");
  IntVector out;
  out.reserve(target_dim);
  for (std::size_t i = 0; i < target_dim; ++i) {
    Rational v = offset[i].eval(t);
    for (std::size_t j = 0; j < source_dim; ++j) {
      if (!matrix[i][j].is_zero()) v += matrix[i][j].eval(t) * x[j];
    }
    if (v.get_den() != 1) {
      throw PreconditionError("affine map image is not integral at t = " + to_string(t));
    }
    out.push_back(v.get_num());
  }
  return out;
}

AffineParamMap compose(const AffineParamMap& outer, const AffineParamMap& inner) {
  if (outer.source_dim != inner.target_dim) throw PreconditionError("composed maps have mismatched dimensions");
  AffineParamMap out;
  out.target_dim = outer.target_dim;
  out.source_dim = inner.source_dim;
  out.matrix.assign(out.target_dim, std::vector<IntPolynomial>(out.source_dim));
  out.offset.assign(out.target_dim, RationalPolynomial{});
  for (std::size_t i = 0; i < out.target_dim; ++i) {
    out.offset[i] = outer.offset[i];
    for (std::size_t k = 0; k < outer.source_dim; ++k) {
      const IntPolynomial& o = outer.matrix[i][k];
      if (o.is_zero()) continue;
      for (std::size_t j = 0; j < out.source_dim; ++j) out.matrix[i][j] += o * inner.matrix[k][j];
      out.offset[i] += to_rational(o) * inner.offset[k];
    }
  }
  return out;
}

BezoutCertificate bezout_certificate(std::span<const Integer> a) {
  if (a.empty() || is_zero_vector(a)) throw PreconditionError("bezout_certificate needs a nonzero vector");
  BezoutCertificate out;
  out.beta.assign(a.size(), Integer(0));
  Integer g = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] == 0) continue;
    if (g == 0) {
      g = abs(a[j]);
      out.beta[j] = sgn(a[j]);
      continue;
    }
    Integer s, u, ng;
    mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), g.get_mpz_t(), a[j].get_mpz_t());
    for (auto& b : out.beta) b *= s;
    out.beta[j] = u;
    g = ng;
  }
  out.d = g;
  return out;
}

std::vector<IntVector> kernel_lattice_basis(std::span<const Integer> a) {
  if (a.empty() || is_zero_vector(a)) throw PreconditionError("kernel_lattice_basis needs a nonzero vector");
  const std::size_t n = a.size();
  // Unimodular column operations reduce a to (g, 0, ..., 0); the columns
  // turned into zeros span the kernel.
  IntVector u(n, Integer(0));
  u[0] = a[0] < 0 ? -1 : 1;
  Integer g = abs(a[0]);
  std::vector<IntVector> basis;
  for (std::size_t j = 1; j < n; ++j) {
    IntVector e(n, Integer(0));
    e[j] = 1;
    if (a[j] == 0) {
      basis.push_back(std::move(e));
      continue;
    }
    Integer s, w, ng;
    mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), w.get_mpz_t(), g.get_mpz_t(), a[j].get_mpz_t());
    const Integer p = -a[j] / ng;
    const Integer q = g / ng;
    IntVector kernel(n), next(n);
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = s * u[i] + w * e[i];
      kernel[i] = p * u[i] + q * e[i];
    }
    basis.push_back(std::move(kernel));
    u = std::move(next);
    g = ng;
  }
  for (auto& v : basis) {
    const auto first = std::find_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
    if (first != v.end() && *first < 0) {
      for (auto& x : v) x = -x;
    }
  }
  return basis;
}

Transformed canonical_to_standard_slack(const Pilp& p) {
  if (p.form != Form::kCanonical && p.form != Form::kReducedCanonical) {
    throw FormError("slack embedding needs a canonical-form program, got " + std::string(to_string(p.form)));
  }
  require_valid(p);
  Transformed out;
  Pilp& s = out.program;
  s.form = Form::kStandard;
  s.n = p.n + p.m;
  s.m = p.m;
  s.bounded = p.bounded;
  for (std::size_t i = 0; i < p.m; ++i) {
    std::vector<IntPolynomial> row = p.a[i];
    row.resize(s.n);
    row[p.n + i] = constant(1);
    s.a.push_back(std::move(row));
  }
  s.b = p.b;
  s.c = p.c;
  s.c.resize(s.n);

  AffineParamMap& map = out.map;
  map.source_dim = p.n;
  map.target_dim = s.n;
  map.matrix.assign(s.n, std::vector<IntPolynomial>(p.n));
  map.offset.assign(s.n, RationalPolynomial{});
  for (std::size_t j = 0; j < p.n; ++j) map.matrix[j][j] = constant(1);
  for (std::size_t i = 0; i < p.m; ++i) {
    for (std::size_t j = 0; j < p.n; ++j) map.matrix[p.n + i][j] = -p.a[i][j];
    map.offset[p.n + i] = to_rational(p.b[i]);
  }
  return out;
}

Transformed general_to_canonical_translate(const Pilp& p, unsigned r) {
  if (p.form != Form::kGeneral) {
    throw FormError("orthant translation needs a general-form program, got " + std::string(to_string(p.form)));
  }
  require_valid(p);
  const IntPolynomial shift = power_of_t(r);
  Transformed out;
  Pilp& q = out.program;
  q = p;
  q.form = Form::kCanonical;
  for (std::size_t i = 0; i < p.m; ++i) {
    IntPolynomial row_sum;
    for (const auto& e : p.a[i]) row_sum += e;
    q.b[i] = p.b[i] + row_sum * shift;
  }
  IntPolynomial c_sum;
  for (const auto& e : p.c) c_sum += e;
  out.objective_shift = c_sum * shift;
  out.map = AffineParamMap::identity(p.n);
  for (auto& o : out.map.offset) o = to_rational(shift);
  return out;
}

IntVector DigitDecomposition::forward(const Integer& t, std::span<const Integer> x) const {
  if (x.size() != source.n) throw PreconditionError("digit map applied to a vector of the wrong length");
  Integer limit;
  mpz_pow_ui(limit.get_mpz_t(), t.get_mpz_t(), r);
  IntVector y;
  y.reserve(source.n * r);
  for (const auto& xi : x) {
    if (xi < 0 || xi >= limit) {
      throw PreconditionError("coordinate " + to_string(xi) + " is outside [0, t^" + std::to_string(r) + ")");
    }
    Integer rest = xi;
    for (unsigned j = 0; j < r; ++j) {
      y.push_back(mod_floor(rest, t));
      rest = floor_div(rest, t);
    }
  }
  return y;
}

DigitDecomposition standard_to_reduced_digits(const Pilp& p, unsigned r) {
  if (p.form != Form::kStandard) {
    throw FormError("digit decomposition needs a standard-form program, got " + std::string(to_string(p.form)));
  }
  require_valid(p);
  if (r == 0) throw PreconditionError("digit count r must be positive");
  int deg_a = kZeroDegree;
  int deg_b = kZeroDegree;
  for (std::size_t k = 0; k < p.m; ++k) {
    if (p.b[k].is_zero()) throw PreconditionError("digit decomposition needs b_k not identically zero");
    if (p.b[k].leading_sign() < 0) throw PreconditionError("digit decomposition needs sign-normalized b");
    deg_b = std::max(deg_b, p.b[k].degree());
    for (const auto& e : p.a[k]) deg_a = std::max(deg_a, e.degree());
  }
  const std::size_t nv = p.n * r;
  const std::size_t levels = static_cast<std::size_t>(std::max(deg_a + static_cast<int>(r) - 1, deg_b));

  DigitDecomposition out;
  out.source = p;
  out.r = r;
  out.levels = levels;
  Integer threshold = 1;

  // level_coeffs[k][s][i*r+j] = coefficient of t^(s-j) in A_{k,i}
  std::vector<std::vector<IntVector>> level_coeffs(p.m, std::vector<IntVector>(levels + 1, IntVector(nv)));
  std::vector<std::vector<std::vector<Integer>>> per_row_carries(p.m);
  for (std::size_t k = 0; k < p.m; ++k) {
    IntVector weight(levels + 1), pos(levels + 1), neg(levels + 1);
    for (std::size_t s = 0; s <= levels; ++s) {
      for (std::size_t i = 0; i < p.n; ++i) {
        for (unsigned j = 0; j < r && j <= s; ++j) {
          const Integer v = p.a[k][i].coeff(s - j);
          level_coeffs[k][s][i * r + j] = v;
          weight[s] += abs(v);
          if (v > 0) pos[s] += v;
          if (v < 0) neg[s] += v;
        }
      }
    }
    // |carry_s| <= weight_s once t > |b_s| + weight_{s-1}.
    for (std::size_t s = 0; s < levels; ++s) {
      const Integer bound = abs(p.b[k].coeff(s)) + (s > 0 ? weight[s - 1] : Integer(0));
      if (bound > threshold) threshold = bound;
    }
    // A level is reachable iff neg (t-1) <= b_s - C_{s-1} + C_s t <= pos (t-1)
    // for large t; unreachable choices are pruned.
    std::vector<Integer> prefix;
    const std::function<void(std::size_t, const Integer&)> extend = [&](std::size_t s, const Integer& carry_in) {
      const Integer lo = s < levels ? Integer(-weight[s]) : Integer(0);
      const Integer hi = s < levels ? weight[s] : Integer(0);
      for (Integer c = lo; c <= hi; ++c) {
        const Integer b_s = p.b[k].coeff(s);
        const IntPolynomial lower{b_s - carry_in + neg[s], c - neg[s]};
        const IntPolynomial upper{-pos[s] - b_s + carry_in, pos[s] - c};
        bool feasible = true;
        for (const IntPolynomial* side : {&lower, &upper}) {
          if (side->leading_sign() < 0) {
            feasible = false;
            const Integer th = eventual_sign_threshold(*side);
            if (th > threshold) threshold = th;
          }
        }
        if (!feasible) continue;
        if (s == levels) {
          per_row_carries[k].push_back(prefix);
        } else {
          prefix.push_back(c);
          extend(s + 1, c);
          prefix.pop_back();
        }
      }
    };
    extend(0, Integer(0));
  }
  out.threshold = threshold;

  std::vector<IntPolynomial> objective(nv);
  for (std::size_t i = 0; i < p.n; ++i) {
    for (unsigned j = 0; j < r; ++j) objective[i * r + j] = p.c[i] * power_of_t(j);
  }

  // Cartesian product of the surviving per-row carry sequences, in
  // lexicographic order.
  std::vector<std::size_t> choice(p.m, 0);
  const bool any_empty = std::any_of(per_row_carries.begin(), per_row_carries.end(),
                                     [](const auto& v) { return v.empty(); });
  while (!any_empty) {
    DigitPart part;
    Pilp& q = part.program;
    q.form = Form::kReducedCanonical;
    q.n = nv;
    q.c = objective;
    q.bounded = true;
    for (std::size_t k = 0; k < p.m; ++k) {
      const auto& carries = per_row_carries[k][choice[k]];
      part.carries.emplace_back(carries.begin(), carries.end());
      for (std::size_t s = 0; s <= levels; ++s) {
        const Integer carry_in = s > 0 ? carries[s - 1] : Integer(0);
        const Integer carry_out = s < levels ? carries[s] : Integer(0);
        const IntPolynomial rhs{p.b[k].coeff(s) - carry_in, carry_out};
        const IntVector& coeffs = level_coeffs[k][s];
        if (is_zero_vector(coeffs) && rhs.is_zero()) continue;
        const auto row = to_poly_row(coeffs);
        append_row(q, row, rhs);
        append_row(q, negated(row), -rhs);
      }
    }
    for (std::size_t v = 0; v < nv; ++v) {
      IntVector unit(nv);
      unit[v] = 1;
      append_row(q, to_poly_row(unit), IntPolynomial{Integer(-1), Integer(1)});
    }
    out.parts.push_back(std::move(part));

    bool done = true;
    for (std::size_t k = p.m; k-- > 0;) {
      if (++choice[k] < per_row_carries[k].size()) {
        done = false;
        break;
      }
      choice[k] = 0;
    }
    if (done) break;
  }

  AffineParamMap& inv = out.inverse_map;
  inv.source_dim = nv;
  inv.target_dim = p.n;
  inv.matrix.assign(p.n, std::vector<IntPolynomial>(nv));
  inv.offset.assign(p.n, RationalPolynomial{});
  for (std::size_t i = 0; i < p.n; ++i) {
    for (unsigned j = 0; j < r; ++j) inv.matrix[i][i * r + j] = power_of_t(j);
  }
  return out;
}

Integer layer_count(std::span<const Integer> a, const Integer& ell0) {
  Integer norm2 = 0;
  for (const auto& v : a) norm2 += v * v;
  return ceil_sqrt(ell0 * ell0 * norm2);
}

LayerDecomposition hyperplane_layers(const Pilp& p, std::size_t ell0) {
  if (p.form != Form::kCanonical && p.form != Form::kReducedCanonical) {
    throw FormError("hyperplane layers need a canonical-form program, got " + std::string(to_string(p.form)));
  }
  require_valid(p);
  if (ell0 == 0) throw PreconditionError("ell0 must be positive");
  for (const auto& row : p.a) {
    if (!is_constant_row(row)) throw FormError("hyperplane layers need a constant constraint matrix");
  }
  LayerDecomposition out;
  out.source = p;
  out.ell0 = ell0;
  for (auto& row : general_form_rows(p)) {
    if (std::all_of(row.a.begin(), row.a.end(), [](const IntPolynomial& e) { return e.is_zero(); })) {
      out.zero_row_rhs.push_back(row.b);
    } else {
      out.rows.push_back(std::move(row));
    }
  }
  const Integer l0(static_cast<unsigned long>(ell0));
  for (const auto& row : out.rows) out.counts.push_back(layer_count(constant_row(row.a), l0));

  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    for (Integer k = 0; k < out.counts[i]; ++k) {
      Layer layer;
      layer.row = i;
      layer.k = k;
      Pilp q = p;
      const IntPolynomial level = out.rows[i].b - constant(k);
      append_row(q, out.rows[i].a, level);
      append_row(q, negated(out.rows[i].a), -level);
      for (std::size_t h = 0; h < i; ++h) append_row(q, out.rows[h].a, out.rows[h].b - constant(out.counts[h]));
      layer.program = std::move(q);
      out.layers.push_back(std::move(layer));
    }
  }
  return out;
}

RationalPolynomial Projection::recover(const RationalPolynomial& reduced_value) const {
  return (reduced_value + to_rational(Z)) * make_rational(1, z);
}

ExtendedRational Projection::recover(const Integer& t, const ExtendedInteger& reduced_value) const {
  if (!reduced_value) return std::nullopt;
  return make_rational(*reduced_value + Z.eval(t), z);
}

Projection project_to_hyperplane(const Pilp& q, std::span<const Integer> a, const IntPolynomial& b,
                                 const Integer& k) {
  if (q.form != Form::kCanonical && q.form != Form::kReducedCanonical) {
    throw FormError("projection needs a canonical-form layer program");
  }
  require_valid(q);
  if (!has_reduced_data(q)) throw FormError("projection needs constant A and degree <= 1 right-hand sides");
  if (a.size() != q.n) throw PreconditionError("hyperplane normal has the wrong length");
  if (b.degree() > 1) throw PreconditionError("hyperplane offset must have degree at most 1");
  const std::size_t n0 = q.n;
  const std::size_t n1 = n0 - 1;

  Projection out;
  out.bezout = bezout_certificate(a);
  const Integer& d = out.bezout.d;
  const Integer b0 = b.coeff(0);
  const Integer b1 = b.coeff(1);
  {
    // b1 t = k - b0 (mod d)
    Integer g1;
    mpz_gcd(g1.get_mpz_t(), b1.get_mpz_t(), d.get_mpz_t());
    const Integer rhs = k - b0;
    if (mod_floor(rhs, g1) == 0) {
      const Integer modulus = d / g1;
      Integer residue = 0;
      if (modulus > 1) {
        Integer inverse;
        const Integer unit = mod_floor(b1 / g1, modulus);
        mpz_invert(inverse.get_mpz_t(), unit.get_mpz_t(), modulus.get_mpz_t());
        residue = mod_floor((rhs / g1) * inverse, modulus);
      }
      out.residue = Residue{residue, modulus};
    }
  }
  out.g = (to_rational(b) - RationalPolynomial::constant(Rational(k))) * make_rational(1, d);
  out.kernel = n1 > 0 ? kernel_lattice_basis(a) : std::vector<IntVector>{};
  const auto& E = out.kernel;  // E[h] is the h-th basis vector, length n0
  const IntVector& beta = out.bezout.beta;

  // Rows of q in y-coordinates: (w E) y <= W - (w . beta) g.
  struct YRow {
    IntVector u;
    IntPolynomial rhs;
  };
  std::vector<YRow> rows;
  for (const auto& row : general_form_rows(q)) {
    const IntVector w = constant_row(row.a);
    YRow yr;
    for (std::size_t h = 0; h < n1; ++h) yr.u.push_back(dot(w, E[h]));
    const RationalPolynomial rhs = to_rational(row.b) - out.g * Rational(dot(w, beta));
    auto [scaled, den] = clear_denominators(rhs);
    for (auto& v : yr.u) v *= den;
    yr.rhs = std::move(scaled);
    if (is_zero_vector(yr.u) && yr.rhs.is_zero()) continue;
    rows.push_back(std::move(yr));
  }

  // K t + K strictly dominates the vertex bound n1! alpha^(n1-1) beta(t).
  out.K = 0;
  if (n1 > 0) {
    Integer alpha = 0;
    Integer beta0 = 0, beta1 = 0;
    for (const auto& yr : rows) {
      if (is_zero_vector(yr.u)) continue;
      for (const auto& v : yr.u) alpha = std::max(alpha, Integer(abs(v)));
      beta0 = std::max(beta0, Integer(abs(yr.rhs.coeff(0))));
      beta1 = std::max(beta1, Integer(abs(yr.rhs.coeff(1))));
    }
    Integer factor = 1;
    for (std::size_t j = 2; j <= n1; ++j) factor *= static_cast<unsigned long>(j);
    for (std::size_t j = 1; j < n1; ++j) factor *= alpha;
    out.K = std::max(factor * beta0, factor * beta1) + 1;
  }
  const IntPolynomial shift{out.K, out.K};

  Pilp& red = out.reduced;
  red.form = Form::kReducedCanonical;
  red.n = n1;
  red.bounded = true;
  for (const auto& yr : rows) {
    Integer sum = 0;
    for (const auto& v : yr.u) sum += v;
    append_row(red, to_poly_row(yr.u), yr.rhs + shift * sum);
  }
  if (red.m == 0) append_row(red, std::vector<IntPolynomial>(n1), IntPolynomial{});

  // c . x = (c E) y'' + [g (c . beta) - (K t + K) sum_h (c E)_h].
  std::vector<IntPolynomial> cE(n1);
  IntPolynomial c_beta;
  for (std::size_t j = 0; j < n0; ++j) c_beta += q.c[j] * beta[j];
  IntPolynomial cE_sum;
  for (std::size_t h = 0; h < n1; ++h) {
    for (std::size_t j = 0; j < n0; ++j) cE[h] += q.c[j] * E[h][j];
    cE_sum += cE[h];
  }
  const RationalPolynomial constant_part = out.g * to_rational(c_beta) - to_rational(shift * cE_sum);
  auto [Z, z] = clear_denominators(constant_part);
  out.z = z;
  out.Z = std::move(Z);
  for (auto& e : cE) e *= out.z;
  red.c = std::move(cE);

  AffineParamMap& map = out.map;
  map.source_dim = n1;
  map.target_dim = n0;
  map.matrix.assign(n0, std::vector<IntPolynomial>(n1));
  map.offset.assign(n0, RationalPolynomial{});
  for (std::size_t j = 0; j < n0; ++j) {
    Integer e_sum = 0;
    for (std::size_t h = 0; h < n1; ++h) {
      map.matrix[j][h] = constant(E[h][j]);
      e_sum += E[h][j];
    }
    map.offset[j] = out.g * Rational(beta[j]) - to_rational(shift) * Rational(e_sum);
  }
  return out;
}

}  // namespace pilp
