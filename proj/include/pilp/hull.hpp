#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "pilp/eqp.hpp"
#include "pilp/model.hpp"
#include "pilp/rational_function.hpp"

namespace pilp {

using PolyVector = std::vector<RationalPolynomial>;

PolyVector to_poly_vector(std::span<const Integer> v);
IntVector eval_integral(const PolyVector& v, const Integer& t);
std::vector<Rational> eval(const PolyVector& v, const Integer& t);

/// Lexicographic comparison under compare_eventually, coordinate by coordinate.
std::strong_ordering compare_eventually(const PolyVector& a, const PolyVector& b);

struct IndependenceResult {
  bool independent = false;
  /// When independent: the witnessing minor is nonzero for t > threshold.
  Integer threshold = 0;
  std::vector<std::size_t> minor_rows;  // coordinates of the witnessing minor
};

/// Affine independence for t >> 0, decided by the minors of the difference
/// matrix against the first vector. Throws PreconditionError on an empty set.
IndependenceResult affinely_independent_eventually(std::span<const PolyVector> vs);

struct ConvexCombination {
  bool inside = false;
  /// Affine coefficients, one per vector of vs, summing to 1. Empty when w is
  /// eventually outside the affine hull of vs.
  std::vector<RationalFunction> coefficients;
  /// The verdict holds for every t > threshold.
  Integer threshold = 0;
};

/// Whether w(t) is a convex combination of vs(t) for t >> 0. Throws
/// PreconditionError unless vs is eventually affinely independent.
ConvexCombination convex_combination_eventually(const PolyVector& w, std::span<const PolyVector> vs);

struct EventualHull {
  std::vector<std::size_t> vertices;  // ascending indices
  /// For t > threshold, evaluating the vectors and taking hull vertices
  /// returns exactly `vertices`.
  Integer threshold = 0;
};

/// Throws PreconditionError on repeated vectors.
EventualHull eventual_hull_vertices(std::span<const PolyVector> vs);

struct Candidate {
  PolyVector point;  // v1 t + v2
  bool eventual_vertex = false;
};

struct CandidateVertices {
  std::vector<Candidate> candidates;  // eventual lexicographic order, no repeats
  Integer threshold = 0;  // flags hold for t > threshold
};

/// Basic solutions of every nonsingular n x n subsystem of a
/// REDUCED_CANONICAL program. Throws PreconditionError when there is none.
CandidateVertices candidate_vertices_reduced(const Pilp& p);

struct ParametricVertexFamily {
  std::size_t period = 1;
  Integer threshold = 0;
  /// classes[j]: vertices for t = j (mod period), eventual lexicographic order.
  std::vector<std::vector<PolyVector>> classes;
  std::vector<Sample> samples;  // t and vertex count used for the fit

  /// Vertex set evaluated at t, sorted lexicographically. Throws
  /// OutOfRangeError when t <= threshold.
  std::vector<IntVector> vertices_at(const Integer& t) const;
};

using HullInference = std::variant<ParametricVertexFamily, NoFit>;

/// Oracle vertex set M(t) of conv(L(t)), lexicographically sorted.
std::vector<IntVector> lattice_hull_vertices(const Pilp& p, const Integer& t);

HullInference infer_hull_structure(const Pilp& p, const InferenceConfig& cfg);

}  // namespace pilp
