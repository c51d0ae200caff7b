#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pilp/polynomial.hpp"

namespace pilp {

/// Constraint shape of a program.
///   kGeneral:          A(t) x <= b(t)
///   kStandard:         A(t) x  = b(t), x >= 0
///   kCanonical:        A(t) x <= b(t), x >= 0
///   kReducedCanonical: canonical with constant A and deg b <= 1
enum class Form { kGeneral, kStandard, kCanonical, kReducedCanonical };

std::string_view to_string(Form form);
/// Throws ParseError on unknown names.
Form parse_form(std::string_view name);

bool has_nonnegativity(Form form);

using PolyMatrix = std::vector<std::vector<IntPolynomial>>;

/// Parametric integer linear program in one integer parameter t.
struct Pilp {
  Form form = Form::kGeneral;
  std::size_t n = 0;  // indeterminates
  std::size_t m = 0;  // constraint rows
  PolyMatrix a;
  std::vector<IntPolynomial> b;
  std::vector<IntPolynomial> c;
  bool bounded = true;  // asserts R(t) bounded for every t

  friend bool operator==(const Pilp&, const Pilp&) = default;
};

struct Diagnostic {
  enum class Severity { kWarning, kError };
  Severity severity = Severity::kError;
  std::string message;
};

/// Dimension and form checks; never throws.
std::vector<Diagnostic> validate(const Pilp& p);
bool has_errors(std::span<const Diagnostic> diagnostics);
/// Throws FormError listing the error diagnostics, if any.
void require_valid(const Pilp& p);

/// True when every entry of A is constant and every entry of b has degree <= 1.
bool has_reduced_data(const Pilp& p);

/// One inequality a . x <= b of a program rewritten in general form.
struct ParametricRow {
  std::vector<IntPolynomial> a;
  IntPolynomial b;
};

/// All constraints as "<=" rows: equalities become two rows, x >= 0 becomes
/// -x_j <= 0 (appended after the program rows, in coordinate order).
std::vector<ParametricRow> general_form_rows(const Pilp& p);

/// The program at a fixed parameter value.
struct ConcreteIlp {
  Form form = Form::kGeneral;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<IntVector> a;
  IntVector b;
  IntVector c;
  Integer t;

  bool contains(std::span<const Integer> x) const;
  Integer objective(std::span<const Integer> x) const;
};

ConcreteIlp instantiate(const Pilp& p, const Integer& t);

/// Direct membership test against the parametric constraints.
bool contains_at(const Pilp& p, const Integer& t, std::span<const Integer> x);

/// Result of the vertex-magnitude bound: for t > threshold every coordinate
/// of every lattice point has magnitude < t^r.
struct CoordinateBound {
  unsigned r = 1;
  Integer threshold = 0;
  IntPolynomial vertex_bound;  // n (n-1)! alpha^(n-1) beta
};

/// Throws PreconditionError when p.bounded is false.
CoordinateBound coordinate_bound_exponent(const Pilp& p);

struct SignNormalization {
  Pilp program;
  /// b is identically zero; then L(t) = {0} for a bounded standard program.
  bool degenerate = false;
};

/// Scale rows of a standard program by +-1 (and add a nonzero row to each
/// zero row) so every b_i has positive leading coefficient.
SignNormalization normalize_b_signs(const Pilp& p);

}  // namespace pilp
