#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pilp/arith.hpp"
#include "pilp/model.hpp"

namespace pilp {

/// Cap on the number of DFS cells visited by one enumeration.
struct EnumerationLimits {
  std::uint64_t max_cells = 10'000'000;

  /// Reads PILP_MAX_CELLS when set.
  static EnumerationLimits from_environment();
};

struct LatticePointSet {
  Integer t;
  std::vector<IntVector> points;  // lexicographic, no duplicates
  bool exhaustive = true;
};

/// Integer bounds [lo_j, hi_j] of every coordinate over R(t), from exact LP.
/// std::nullopt when R(t) is empty. Throws UnboundedError when R(t) is
/// unbounded.
std::optional<std::vector<std::pair<Integer, Integer>>> relaxation_box(const ConcreteIlp& ilp);

/// All of L(t) inside [-box_bound, box_bound]^n (or [0, box_bound]^n for
/// programs with x >= 0). Without box_bound the LP box alone is used.
LatticePointSet enumerate_lattice_points(const ConcreteIlp& ilp,
                                         const std::optional<Integer>& box_bound = std::nullopt,
                                         EnumerationLimits limits = EnumerationLimits::from_environment());

LatticePointSet enumerate_lattice_points(const Pilp& p, const Integer& t);

/// Descending objective values, padded with -inf to ell_max entries.
struct ValueList {
  std::vector<ExtendedInteger> values;
};

ValueList top_values(const ConcreteIlp& ilp, std::size_t ell_max, bool distinct,
                     EnumerationLimits limits = EnumerationLimits::from_environment());

/// f_1(t), ..., f_ell_max(t). Throws PreconditionError for t < 1 and
/// UnboundedError when R(t) is unbounded.
ValueList f_ell(const Pilp& p, const Integer& t, std::size_t ell_max, bool distinct = false);

Integer count_lattice_points(const ConcreteIlp& ilp,
                             EnumerationLimits limits = EnumerationLimits::from_environment());
Integer count_lattice_points(const Pilp& p, const Integer& t);

/// points[point] written as sum of coefficient * points[index].
struct ConvexWitness {
  std::size_t point = 0;
  std::vector<std::pair<std::size_t, Rational>> combination;
};

struct HullVertices {
  std::vector<std::size_t> vertices;  // ascending indices
  std::vector<ConvexWitness> witnesses;  // one per excluded point
};

/// Indices of the points that are not convex combinations of the others.
/// Precondition: the points are distinct and share one dimension.
HullVertices hull_vertices(std::span<const IntVector> points);

/// Vertex set of conv(L(t)), lexicographically sorted, without materializing
/// the interior of L(t).
std::vector<IntVector> lattice_hull_vertices(const ConcreteIlp& ilp,
                                             EnumerationLimits limits = EnumerationLimits::from_environment());

}  // namespace pilp
