#include "pilp/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <queue>
#include <set>

#include "pilp/error.hpp"
#include "pilp/lp.hpp"

namespace pilp {

EnumerationLimits EnumerationLimits::from_environment() {
  EnumerationLimits limits;
  if (const char* env = std::getenv("PILP_MAX_CELLS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) limits.max_cells = v;
  }
  return limits;
}

namespace {

// Inequality rows a . x <= b of a concrete program; x >= 0 is carried by the
// coordinate box instead.
struct ConcreteRow {
  IntVector a;
  Integer b;
};

std::vector<ConcreteRow> concrete_rows(const ConcreteIlp& ilp) {
  std::vector<ConcreteRow> rows;
  for (std::size_t i = 0; i < ilp.m; ++i) {
    rows.push_back({ilp.a[i], ilp.b[i]});
    if (ilp.form == Form::kStandard) {
      IntVector neg;
      for (const auto& v : ilp.a[i]) neg.push_back(-v);
      rows.push_back({std::move(neg), -ilp.b[i]});
    }
  }
  return rows;
}

LinearSystem relaxation(const ConcreteIlp& ilp) {
  LinearSystem sys;
  sys.num_vars = ilp.n;
  sys.nonnegative.assign(ilp.n, has_nonnegativity(ilp.form));
  for (std::size_t i = 0; i < ilp.m; ++i) {
    std::vector<Rational> coeffs(ilp.a[i].begin(), ilp.a[i].end());
    sys.add(std::move(coeffs), ilp.form == Form::kStandard ? Relation::kEqual : Relation::kLessEqual,
            Rational(ilp.b[i]));
  }
  return sys;
}

bool zero_dimensional_feasible(const ConcreteIlp& ilp) {
  for (std::size_t i = 0; i < ilp.m; ++i) {
    if (ilp.form == Form::kStandard ? ilp.b[i] != 0 : ilp.b[i] < 0) return false;
  }
  return true;
}

// Depth-first walk over the integer points of a box with per-row interval
// propagation. Every leaf reached satisfies all rows.
class LatticeWalker {
 public:
  using Visit = std::function<void(const IntVector&, const Integer& objective)>;
  using Keep = std::function<bool(const Integer& objective_upper_bound)>;
  /// x[0..n-2] fixed, x[n-1] ranging over [low, high].
  using IntervalVisit = std::function<void(const IntVector& x, const Integer& low, const Integer& high)>;

  LatticeWalker(std::vector<ConcreteRow> rows, IntVector lo, IntVector hi, IntVector objective,
                std::uint64_t max_cells)
      : rows_(std::move(rows)),
        lo_(std::move(lo)),
        hi_(std::move(hi)),
        c_(std::move(objective)),
        n_(lo_.size()),
        max_cells_(max_cells) {
    // tail_min_[r][k] = min over the box of sum_{j >= k} a_rj x_j.
    tail_min_.assign(rows_.size(), IntVector(n_ + 1));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (std::size_t k = n_; k-- > 0;) {
        const Integer u = rows_[r].a[k] * lo_[k];
        const Integer v = rows_[r].a[k] * hi_[k];
        tail_min_[r][k] = tail_min_[r][k + 1] + (u < v ? u : v);
      }
    }
    obj_tail_max_.assign(n_ + 1, Integer(0));
    for (std::size_t k = n_; k-- > 0;) {
      const Integer u = c_[k] * lo_[k];
      const Integer v = c_[k] * hi_[k];
      obj_tail_max_[k] = obj_tail_max_[k + 1] + (u > v ? u : v);
    }
  }

  /// Objective-guided order visits each coordinate in the direction that
  /// increases c_k x_k; `keep` is consulted with an upper bound on every
  /// completion and stops the scan at a coordinate once it returns false.
  void walk(const Visit& visit, const Keep* keep, bool objective_order) {
    visit_ = &visit;
    keep_ = keep;
    objective_order_ = objective_order;
    x_.assign(n_, Integer(0));
    partial_.assign(rows_.size(), Integer(0));
    interval_ = nullptr;
    cells_ = 0;
    descend(0, Integer(0));
  }

  /// Reports the runs of the last coordinate instead of single points.
  void walk_intervals(const IntervalVisit& visit) {
    interval_ = &visit;
    keep_ = nullptr;
    objective_order_ = false;
    x_.assign(n_, Integer(0));
    partial_.assign(rows_.size(), Integer(0));
    cells_ = 0;
    descend(0, Integer(0));
  }

 private:
  void descend(std::size_t k, const Integer& objective) {
    if (k == n_) {
      (*visit_)(x_, objective);
      return;
    }
    Integer low = lo_[k];
    Integer high = hi_[k];
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Integer residual = rows_[r].b - partial_[r] - tail_min_[r][k + 1];
      const Integer& coef = rows_[r].a[k];
      if (coef == 0) {
        if (residual < 0) return;
      } else if (coef > 0) {
        const Integer bound = floor_div(residual, coef);
        if (bound < high) high = bound;
      } else {
        const Integer bound = ceil_div(residual, coef);
        if (bound > low) low = bound;
      }
      if (low > high) return;
    }
    if (interval_ != nullptr && k + 1 == n_) {
      count_cell();
      (*interval_)(x_, low, high);
      return;
    }
    const bool descending = objective_order_ && c_[k] >= 0;
    Integer v = descending ? high : low;
    for (;;) {
      if (descending ? v < low : v > high) break;
      count_cell();
      const Integer next_objective = objective + c_[k] * v;
      if (keep_ != nullptr && !(*keep_)(next_objective + obj_tail_max_[k + 1])) break;
      x_[k] = v;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r].a[k] != 0) partial_[r] += rows_[r].a[k] * v;
      }
      descend(k + 1, next_objective);
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r].a[k] != 0) partial_[r] -= rows_[r].a[k] * v;
      }
      if (descending) {
        --v;
      } else {
        ++v;
      }
    }
  }

  void count_cell() {
    if (++cells_ > max_cells_) {
      throw LimitExceeded("lattice enumeration exceeded PILP_MAX_CELLS = " + std::to_string(max_cells_));
    }
  }

  std::vector<ConcreteRow> rows_;
  IntVector lo_, hi_, c_;
  std::size_t n_;
  std::uint64_t max_cells_;
  std::vector<IntVector> tail_min_;
  IntVector obj_tail_max_;
  const Visit* visit_ = nullptr;
  const Keep* keep_ = nullptr;
  const IntervalVisit* interval_ = nullptr;
  bool objective_order_ = false;
  IntVector x_;
  IntVector partial_;
  std::uint64_t cells_ = 0;
};

// Builds a walker over the LP box, or nullopt when L(t) is trivially empty.
std::optional<LatticeWalker> make_walker(const ConcreteIlp& ilp, const std::optional<Integer>& box_bound,
                                         EnumerationLimits limits) {
  auto box = relaxation_box(ilp);
  if (!box) return std::nullopt;
  IntVector lo, hi;
  for (std::size_t j = 0; j < ilp.n; ++j) {
    Integer l = (*box)[j].first;
    Integer h = (*box)[j].second;
    if (box_bound) {
      const Integer floor_bound = has_nonnegativity(ilp.form) ? Integer(0) : Integer(-*box_bound);
      if (l < floor_bound) l = floor_bound;
      if (h > *box_bound) h = *box_bound;
    }
    if (l > h) return std::nullopt;
    lo.push_back(l);
    hi.push_back(h);
  }
  return LatticeWalker(concrete_rows(ilp), std::move(lo), std::move(hi), ilp.c, limits.max_cells);
}

void require_positive_t(const Integer& t) {
  if (t < 1) throw PreconditionError("t must be a positive integer, got " + to_string(t));
}

// Exact LP membership test of each candidate against the other candidates.
// Sound whenever every vertex of the hull is among the candidates.
void lp_vertex_filter(std::span<const IntVector> points, const std::vector<std::size_t>& candidates,
                      HullVertices& out) {
  const std::size_t dim = points.empty() ? 0 : points.front().size();
  for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
    const std::size_t i = candidates[ci];
    std::vector<std::size_t> others;
    for (std::size_t cj = 0; cj < candidates.size(); ++cj) {
      if (cj != ci) others.push_back(candidates[cj]);
    }
    bool is_vertex = true;
    if (!others.empty()) {
      LinearSystem sys;
      sys.num_vars = others.size();
      sys.nonnegative.assign(others.size(), true);
      sys.add(std::vector<Rational>(others.size(), Rational(1)), Relation::kEqual, Rational(1));
      for (std::size_t k = 0; k < dim; ++k) {
        std::vector<Rational> row;
        row.reserve(others.size());
        for (std::size_t o : others) row.emplace_back(points[o][k]);
        sys.add(std::move(row), Relation::kEqual, Rational(points[i][k]));
      }
      const Feasibility f = lp_feasible_exact(sys);
      if (f.feasible) {
        is_vertex = false;
        ConvexWitness w{i, {}};
        for (std::size_t o = 0; o < others.size(); ++o) {
          if (f.witness[o] != 0) w.combination.emplace_back(others[o], f.witness[o]);
        }
        out.witnesses.push_back(std::move(w));
      }
    }
    if (is_vertex) out.vertices.push_back(i);
  }
}

Integer cross(const IntVector& o, const IntVector& a, const IntVector& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Strict hull vertices of distinct points in dimension 1 or 2 (monotone
// chain with exact integer cross products), lexicographically sorted.
std::vector<IntVector> planar_hull(std::vector<IntVector> points) {
  std::sort(points.begin(), points.end());
  if (points.size() <= 2 || points.front().size() == 1) {
    if (points.size() > 2) points.erase(points.begin() + 1, points.end() - 1);
    return points;
  }
  std::vector<IntVector> chain;
  const auto build = [&](auto first, auto last) {
    const std::size_t base = chain.size();
    for (auto it = first; it != last; ++it) {
      while (chain.size() >= base + 2 && cross(chain[chain.size() - 2], chain.back(), *it) <= 0) chain.pop_back();
      chain.push_back(*it);
    }
    chain.pop_back();
  };
  build(points.begin(), points.end());
  build(points.rbegin(), points.rend());
  std::sort(chain.begin(), chain.end());
  chain.erase(std::unique(chain.begin(), chain.end()), chain.end());
  return chain;
}

}  // namespace

std::optional<std::vector<std::pair<Integer, Integer>>> relaxation_box(const ConcreteIlp& ilp) {
  if (ilp.n == 0) {
    if (!zero_dimensional_feasible(ilp)) return std::nullopt;
    return std::vector<std::pair<Integer, Integer>>{};
  }
  const LinearSystem sys = relaxation(ilp);
  std::vector<std::pair<Integer, Integer>> box;
  for (std::size_t j = 0; j < ilp.n; ++j) {
    std::vector<Rational> dir(ilp.n);
    dir[j] = 1;
    const LpResult up = maximize(sys, dir);
    if (up.status == LpStatus::kInfeasible) return std::nullopt;
    if (up.status == LpStatus::kUnbounded) {
      throw UnboundedError("relaxation unbounded at t = " + to_string(ilp.t) + " (x" + std::to_string(j + 1) +
                           " -> +inf)");
    }
    dir[j] = -1;
    const LpResult down = maximize(sys, dir);
    if (down.status == LpStatus::kUnbounded) {
      throw UnboundedError("relaxation unbounded at t = " + to_string(ilp.t) + " (x" + std::to_string(j + 1) +
                           " -> -inf)");
    }
    box.emplace_back(ceil_of(-down.value), floor_of(up.value));
  }
  return box;
}

LatticePointSet enumerate_lattice_points(const ConcreteIlp& ilp, const std::optional<Integer>& box_bound,
                                         EnumerationLimits limits) {
  if (box_bound && *box_bound < 0) throw PreconditionError("box_bound must be nonnegative");
  LatticePointSet out{ilp.t, {}, true};
  if (ilp.n == 0) {
    if (zero_dimensional_feasible(ilp)) out.points.emplace_back();
    return out;
  }
  auto walker = make_walker(ilp, box_bound, limits);
  if (!walker) return out;
  const LatticeWalker::Visit visit = [&](const IntVector& x, const Integer&) { out.points.push_back(x); };
  walker->walk(visit, nullptr, false);
  return out;
}

LatticePointSet enumerate_lattice_points(const Pilp& p, const Integer& t) {
  require_positive_t(t);
  return enumerate_lattice_points(instantiate(p, t));
}

ValueList top_values(const ConcreteIlp& ilp, std::size_t ell_max, bool distinct, EnumerationLimits limits) {
  if (ell_max == 0) throw PreconditionError("ell_max must be positive");
  std::vector<Integer> found;
  if (ilp.n == 0) {
    if (zero_dimensional_feasible(ilp)) found.emplace_back(0);
  } else if (auto walker = make_walker(ilp, std::nullopt, limits)) {
    if (distinct) {
      std::set<Integer> best;
      const LatticeWalker::Visit visit = [&](const IntVector&, const Integer& v) {
        if (best.size() == ell_max && v <= *best.begin()) return;
        best.insert(v);
        if (best.size() > ell_max) best.erase(best.begin());
      };
      const LatticeWalker::Keep keep = [&](const Integer& bound) {
        return best.size() < ell_max || bound > *best.begin();
      };
      walker->walk(visit, &keep, true);
      found.assign(best.rbegin(), best.rend());
    } else {
      std::priority_queue<Integer, std::vector<Integer>, std::greater<>> best;
      const LatticeWalker::Visit visit = [&](const IntVector&, const Integer& v) {
        if (best.size() < ell_max) {
          best.push(v);
        } else if (v > best.top()) {
          best.pop();
          best.push(v);
        }
      };
      const LatticeWalker::Keep keep = [&](const Integer& bound) {
        return best.size() < ell_max || bound > best.top();
      };
      walker->walk(visit, &keep, true);
      while (!best.empty()) {
        found.push_back(best.top());
        best.pop();
      }
      std::reverse(found.begin(), found.end());
    }
  }
  ValueList out;
  for (std::size_t k = 0; k < ell_max; ++k) {
    out.values.push_back(k < found.size() ? ExtendedInteger(found[k]) : std::nullopt);
  }
  return out;
}

ValueList f_ell(const Pilp& p, const Integer& t, std::size_t ell_max, bool distinct) {
  require_positive_t(t);
  return top_values(instantiate(p, t), ell_max, distinct);
}

Integer count_lattice_points(const ConcreteIlp& ilp, EnumerationLimits limits) {
  if (ilp.n == 0) return zero_dimensional_feasible(ilp) ? 1 : 0;
  auto walker = make_walker(ilp, std::nullopt, limits);
  if (!walker) return 0;
  Integer count = 0;
  const LatticeWalker::IntervalVisit visit = [&](const IntVector&, const Integer& low, const Integer& high) {
    count += high - low + 1;
  };
  walker->walk_intervals(visit);
  return count;
}

Integer count_lattice_points(const Pilp& p, const Integer& t) {
  require_positive_t(t);
  return count_lattice_points(instantiate(p, t));
}

HullVertices hull_vertices(std::span<const IntVector> points) {
  HullVertices out;
  if (points.empty()) return out;
  const std::size_t dim = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dim) throw PreconditionError("hull_vertices: points of mixed dimension");
  }
  std::map<IntVector, std::size_t> index;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!index.emplace(points[i], i).second) throw PreconditionError("hull_vertices: duplicate point");
  }

  // A point flanked by lattice neighbours on both sides along an axis is
  // their midpoint; everything else gets an exact LP membership test.
  std::vector<bool> excluded(points.size(), false);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t k = 0; k < dim && !excluded[i]; ++k) {
      IntVector up = points[i];
      IntVector down = points[i];
      ++up[k];
      --down[k];
      const auto u = index.find(up);
      const auto d = index.find(down);
      if (u != index.end() && d != index.end()) {
        excluded[i] = true;
        out.witnesses.push_back({i, {{d->second, Rational(1, 2)}, {u->second, Rational(1, 2)}}});
      }
    }
  }
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!excluded[i]) candidates.push_back(i);
  }
  lp_vertex_filter(points, candidates, out);
  std::sort(out.witnesses.begin(), out.witnesses.end(),
            [](const ConvexWitness& a, const ConvexWitness& b) { return a.point < b.point; });
  return out;
}

std::vector<IntVector> lattice_hull_vertices(const ConcreteIlp& ilp, EnumerationLimits limits) {
  if (ilp.n == 0) {
    if (zero_dimensional_feasible(ilp)) return {IntVector{}};
    return {};
  }
  auto walker = make_walker(ilp, std::nullopt, limits);
  if (!walker) return {};
  // Only run endpoints along the last axis can be vertices; a candidate with
  // lattice neighbours on both sides along another axis is a midpoint.
  std::vector<IntVector> points;
  const LatticeWalker::IntervalVisit visit = [&](const IntVector& x, const Integer& low, const Integer& high) {
    for (const Integer* end : {&low, &high}) {
      if (end == &high && high == low) break;
      IntVector p = x;
      p[ilp.n - 1] = *end;
      bool flanked = false;
      for (std::size_t k = 0; k + 1 < ilp.n && !flanked; ++k) {
        IntVector up = p;
        IntVector down = p;
        ++up[k];
        --down[k];
        flanked = ilp.contains(up) && ilp.contains(down);
      }
      if (!flanked) points.push_back(std::move(p));
    }
  };
  walker->walk_intervals(visit);
  if (ilp.n <= 2) return planar_hull(std::move(points));
  std::vector<std::size_t> candidates(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) candidates[i] = i;
  HullVertices hv;
  lp_vertex_filter(points, candidates, hv);
  std::vector<IntVector> out;
  for (std::size_t i : hv.vertices) out.push_back(points[i]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pilp
