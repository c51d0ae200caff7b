#include "pilp/model.hpp"

#include <algorithm>

#include "pilp/error.hpp"

namespace pilp {

std::string_view to_string(Form form) {
  switch (form) {
    case Form::kGeneral:
      return "general";
    case Form::kStandard:
      return "standard";
    case Form::kCanonical:
      return "canonical";
    case Form::kReducedCanonical:
      return "reduced_canonical";
  }
  return "general";
}

Form parse_form(std::string_view name) {
  if (name == "general") return Form::kGeneral;
  if (name == "standard") return Form::kStandard;
  if (name == "canonical") return Form::kCanonical;
  if (name == "reduced_canonical") return Form::kReducedCanonical;
  throw ParseError("unknown form '" + std::string(name) + "'");
}

bool has_nonnegativity(Form form) { return form != Form::kGeneral; }

std::vector<Diagnostic> validate(const Pilp& p) {
  std::vector<Diagnostic> out;
  auto error = [&](std::string msg) { out.push_back({Diagnostic::Severity::kError, std::move(msg)}); };
  if (p.m == 0) error("m must be positive");
  if (p.a.size() != p.m) {
    error("A has " + std::to_string(p.a.size()) + " rows, expected m = " + std::to_string(p.m));
  }
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    if (p.a[i].size() != p.n) {
      error("A row " + std::to_string(i) + " has " + std::to_string(p.a[i].size()) +
            " entries, expected n = " + std::to_string(p.n));
    }
  }
  if (p.b.size() != p.m) {
    error("|b| = " + std::to_string(p.b.size()) + " but m = " + std::to_string(p.m));
  }
  if (p.c.size() != p.n) {
    error("|c| = " + std::to_string(p.c.size()) + " but n = " + std::to_string(p.n));
  }
  if (p.form == Form::kReducedCanonical) {
    for (std::size_t i = 0; i < p.a.size(); ++i) {
      for (std::size_t j = 0; j < p.a[i].size(); ++j) {
        if (p.a[i][j].degree() > 0) {
          error("A must be constant: entry (" + std::to_string(i) + "," + std::to_string(j) +
                ") = " + to_string(p.a[i][j]));
        }
      }
    }
    for (std::size_t i = 0; i < p.b.size(); ++i) {
      if (p.b[i].degree() > 1) {
        error("b must have degree at most 1: b[" + std::to_string(i) + "] = " + to_string(p.b[i]));
      }
    }
  }
  if (!p.bounded) {
    out.push_back({Diagnostic::Severity::kWarning, "boundedness of R(t) is not asserted"});
  }
  return out;
}

bool has_errors(std::span<const Diagnostic> diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::kError; });
}

void require_valid(const Pilp& p) {
  const auto diags = validate(p);
  if (!has_errors(diags)) return;
  std::string msg = "invalid program:";
  for (const auto& d : diags) {
    if (d.severity == Diagnostic::Severity::kError) msg += " " + d.message + ";";
  }
  throw FormError(msg);
}

bool has_reduced_data(const Pilp& p) {
  for (const auto& row : p.a) {
    for (const auto& e : row) {
      if (e.degree() > 0) return false;
    }
  }
  return std::all_of(p.b.begin(), p.b.end(), [](const IntPolynomial& q) { return q.degree() <= 1; });
}

std::vector<ParametricRow> general_form_rows(const Pilp& p) {
  std::vector<ParametricRow> rows;
  for (std::size_t i = 0; i < p.m; ++i) {
    rows.push_back({p.a[i], p.b[i]});
    if (p.form == Form::kStandard) {
      std::vector<IntPolynomial> neg;
      neg.reserve(p.n);
      for (const auto& e : p.a[i]) neg.push_back(-e);
      rows.push_back({std::move(neg), -p.b[i]});
    }
  }
  if (has_nonnegativity(p.form)) {
    for (std::size_t j = 0; j < p.n; ++j) {
      std::vector<IntPolynomial> row(p.n);
      row[j] = IntPolynomial::constant(-1);
      rows.push_back({std::move(row), IntPolynomial{}});
    }
  }
  return rows;
}

bool ConcreteIlp::contains(std::span<const Integer> x) const {
  if (x.size() != n) return false;
  if (has_nonnegativity(form)) {
    for (const auto& v : x) {
      if (v < 0) return false;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    Integer lhs = 0;
    for (std::size_t j = 0; j < n; ++j) lhs += a[i][j] * x[j];
    if (form == Form::kStandard ? lhs != b[i] : lhs > b[i]) return false;
  }
  return true;
}

Integer ConcreteIlp::objective(std::span<const Integer> x) const {
  Integer v = 0;
  for (std::size_t j = 0; j < n; ++j) v += c[j] * x[j];
  return v;
}

ConcreteIlp instantiate(const Pilp& p, const Integer& t) {
  require_valid(p);
  ConcreteIlp out;
  out.form = p.form;
  out.n = p.n;
  out.m = p.m;
  out.t = t;
  out.a.resize(p.m);
  for (std::size_t i = 0; i < p.m; ++i) {
    out.a[i].reserve(p.n);
    for (const auto& e : p.a[i]) out.a[i].push_back(e.eval(t));
    out.b.push_back(p.b[i].eval(t));
  }
  for (const auto& e : p.c) out.c.push_back(e.eval(t));
  return out;
}

bool contains_at(const Pilp& p, const Integer& t, std::span<const Integer> x) {
  if (x.size() != p.n) return false;
  for (const auto& row : general_form_rows(p)) {
    Integer lhs = 0;
    for (std::size_t j = 0; j < p.n; ++j) lhs += row.a[j].eval(t) * x[j];
    if (lhs > row.b.eval(t)) return false;
  }
  return true;
}

namespace {

IntPolynomial coefficientwise_max(const IntPolynomial& x, const IntPolynomial& y) {
  std::vector<Integer> cs(std::max(x.coeffs().size(), y.coeffs().size()));
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const Integer u = abs(x.coeff(i));
    const Integer v = abs(y.coeff(i));
    cs[i] = u > v ? u : v;
  }
  return IntPolynomial(std::move(cs));
}

}  // namespace

CoordinateBound coordinate_bound_exponent(const Pilp& p) {
  if (!p.bounded) throw PreconditionError("coordinate bound requires the boundedness assertion");
  require_valid(p);
  if (p.n == 0) return {1, 0, IntPolynomial{}};
  IntPolynomial alpha, beta;
  for (const auto& row : general_form_rows(p)) {
    for (const auto& e : row.a) alpha = coefficientwise_max(alpha, e);
    beta = coefficientwise_max(beta, row.b);
  }
  Integer factorial = 1;
  for (std::size_t k = 2; k < p.n; ++k) factorial *= static_cast<unsigned long>(k);
  IntPolynomial bound = IntPolynomial::constant(factorial * static_cast<unsigned long>(p.n)) * beta;
  for (std::size_t k = 1; k < p.n; ++k) bound = bound * alpha;
  CoordinateBound out;
  out.vertex_bound = bound;
  out.r = static_cast<unsigned>(std::max(1, bound.degree() + 1));
  const IntPolynomial gap = IntPolynomial::monomial(1, out.r) - bound;
  out.threshold = eventual_sign_threshold(gap);
  return out;
}

SignNormalization normalize_b_signs(const Pilp& p) {
  if (p.form != Form::kStandard) throw FormError("normalize_b_signs expects a standard-form program");
  require_valid(p);
  SignNormalization out{p, false};
  Pilp& q = out.program;
  std::size_t pivot = q.m;
  for (std::size_t i = 0; i < q.m; ++i) {
    if (q.b[i].is_zero()) continue;
    if (q.b[i].leading_sign() < 0) {
      q.b[i] = -q.b[i];
      for (auto& e : q.a[i]) e = -e;
    }
    if (pivot == q.m) pivot = i;
  }
  if (pivot == q.m) {
    out.degenerate = true;
    return out;
  }
  for (std::size_t i = 0; i < q.m; ++i) {
    if (!q.b[i].is_zero()) continue;
    for (std::size_t j = 0; j < q.n; ++j) q.a[i][j] += q.a[pivot][j];
    q.b[i] = q.b[pivot];
  }
  return out;
}

}  // namespace pilp
