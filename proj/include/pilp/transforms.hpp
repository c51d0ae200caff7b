#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pilp/model.hpp"
#include "pilp/polynomial.hpp"

namespace pilp {

/// x -> matrix(t) x + offset(t).
struct AffineParamMap {
  std::size_t target_dim = 0;
  std::size_t source_dim = 0;
  PolyMatrix matrix;                        // target_dim x source_dim
  std::vector<RationalPolynomial> offset;   // target_dim entries

  static AffineParamMap identity(std::size_t dim);

  /// Throws PreconditionError when the image is not integral at t.
  IntVector apply(const Integer& t, std::span<const Integer> x) const;

  friend bool operator==(const AffineParamMap&, const AffineParamMap&) = default;
};

/// outer o inner.
AffineParamMap compose(const AffineParamMap& outer, const AffineParamMap& inner);

// ---- integer lattice utilities ----

struct BezoutCertificate {
  Integer d;      // gcd of the entries, positive
  IntVector beta; // sum beta_h a_h = d
};

/// Throws PreconditionError for the zero vector.
BezoutCertificate bezout_certificate(std::span<const Integer> a);

/// Lattice basis of {x in Z^n : a . x = 0}. Each vector has its first
/// nonzero entry positive. Throws PreconditionError for the zero vector.
std::vector<IntVector> kernel_lattice_basis(std::span<const Integer> a);

// ---- slack and translation ----

struct Transformed {
  Pilp program;
  AffineParamMap map;  // old lattice points -> new lattice points
  /// new objective value = old objective value + objective_shift(t)
  IntPolynomial objective_shift;
};

/// CANONICAL -> STANDARD with one slack per row. The map is x -> (x, b - A x).
Transformed canonical_to_standard_slack(const Pilp& p);

/// GENERAL -> CANONICAL by translating every coordinate by t^r.
Transformed general_to_canonical_translate(const Pilp& p, unsigned r);

// ---- base-t digits ----

struct DigitPart {
  /// carries[k][s] for row k and level s < levels.
  std::vector<IntVector> carries;
  Pilp program;  // REDUCED_CANONICAL in the digits y_{i,j}, index i * r + j
};

struct DigitDecomposition {
  Pilp source;
  unsigned r = 1;
  std::size_t levels = 0;  // carries per row
  std::vector<DigitPart> parts;
  AffineParamMap inverse_map;  // y -> x, x_i = sum_j t^j y_{i,j}
  /// For t > threshold the digit map is a bijection onto the disjoint union
  /// of the parts, provided the source coordinates lie in [0, t^r).
  Integer threshold = 0;

  /// Base-t digits of x. Throws PreconditionError when a coordinate is
  /// outside [0, t^r).
  IntVector forward(const Integer& t, std::span<const Integer> x) const;
};

/// Precondition: STANDARD form with sign-normalized, not identically zero b.
DigitDecomposition standard_to_reduced_digits(const Pilp& p, unsigned r);

// ---- hyperplane layers ----

struct Layer {
  std::size_t row = 0;  // index into LayerDecomposition::rows
  Integer k;            // the layer lies on rows[row].a . x = rows[row].b - k
  Pilp program;
};

struct LayerDecomposition {
  Pilp source;
  std::size_t ell0 = 1;
  /// Bounding rows after absorbing x >= 0 and dropping zero rows.
  std::vector<ParametricRow> rows;
  /// Zero rows dropped from the source; 0 <= b must hold for L(t) nonempty.
  std::vector<IntPolynomial> zero_row_rhs;
  IntVector counts;  // c_i
  std::vector<Layer> layers;  // ordered by (row, k)
};

/// Smallest c >= 0 with c^2 >= ell0^2 * sum a_j^2.
Integer layer_count(std::span<const Integer> a, const Integer& ell0);

/// Precondition: CANONICAL or REDUCED_CANONICAL with constant A.
LayerDecomposition hyperplane_layers(const Pilp& p, std::size_t ell0);

// ---- projection to a hyperplane ----

/// t = p (mod q) for the classes where the hyperplane carries lattice points.
struct Residue {
  Integer p;
  Integer q;
};

struct Projection {
  std::optional<Residue> residue;  // nullopt: never
  BezoutCertificate bezout;
  std::vector<IntVector> kernel;
  RationalPolynomial g;   // (b - k) / d
  Integer K;              // orthant shift K t + K
  Pilp reduced;           // REDUCED_CANONICAL, n - 1 indeterminates
  AffineParamMap map;     // reduced lattice point -> original lattice point
  Integer z = 1;
  IntPolynomial Z;
  /// For t in the residue class: original value = (reduced value + Z(t)) / z.
  RationalPolynomial recover(const RationalPolynomial& reduced_value) const;
  ExtendedRational recover(const Integer& t, const ExtendedInteger& reduced_value) const;
};

/// The layer program q must satisfy a . x = b(t) - k on its feasible set;
/// a is a constant integer row and b has degree at most 1. q needs constant
/// A and degree <= 1 right-hand sides.
Projection project_to_hyperplane(const Pilp& q, std::span<const Integer> a, const IntPolynomial& b,
                                 const Integer& k);

}  // namespace pilp
