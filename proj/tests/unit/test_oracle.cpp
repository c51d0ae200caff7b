#include <gtest/gtest.h>

#include <cstdlib>
#include <random>
#include <set>

#include "pilp/error.hpp"
#include "pilp/lp.hpp"
#include "pilp/oracle.hpp"
#include "support.hpp"

namespace pilp {
namespace {

using testing::kT;
using testing::make_program;

Rational r(long n, long d = 1) { return make_rational(n, d); }

TEST(Enumerate, Examples) {
  const ConcreteIlp s = instantiate(testing::simplex_program(), Integer(2));
  EXPECT_EQ(enumerate_lattice_points(s).points,
            (std::vector<IntVector>{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}}));
  const ConcreteIlp f = instantiate(testing::floor_program(), Integer(7));
  EXPECT_EQ(enumerate_lattice_points(f).points, (std::vector<IntVector>{{0}, {1}, {2}, {3}}));
  const ConcreteIlp e = instantiate(testing::infeasible_program(), Integer(3));
  EXPECT_TRUE(enumerate_lattice_points(e).points.empty());
}

TEST(Enumerate, BoxBoundClips) {
  const ConcreteIlp s = instantiate(testing::simplex_program(), Integer(5));
  for (const auto& x : enumerate_lattice_points(s, Integer(2)).points) {
    EXPECT_LE(x[0], 2);
    EXPECT_LE(x[1], 2);
  }
  EXPECT_EQ(enumerate_lattice_points(s, Integer(2)).points.size(), 9u);
}

TEST(Enumerate, UnboundedRelaxationIsAnError) {
  const Pilp p = make_program(Form::kCanonical, {{IntPolynomial{1}, IntPolynomial{-1}}}, {kT}, {IntPolynomial{1}, IntPolynomial{}});
  EXPECT_THROW(enumerate_lattice_points(p, Integer(3)), UnboundedError);
  EXPECT_THROW(f_ell(p, Integer(3), 1), UnboundedError);
}

// Random small general, canonical and standard programs against the box scan.
TEST(Enumerate, AgreesWithBruteForce) {
  std::mt19937 gen(23);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::size_t checked = 0;
  for (int round = 0; round < 60; ++round) {
    const Form form = round % 3 == 0 ? Form::kGeneral : (round % 3 == 1 ? Form::kCanonical : Form::kStandard);
    std::vector<std::vector<IntPolynomial>> a;
    std::vector<IntPolynomial> b;
    if (form == Form::kGeneral) {
      // a bounding box plus one random cut
      a = {{IntPolynomial{1}, IntPolynomial{}}, {IntPolynomial{-1}, IntPolynomial{}}, {IntPolynomial{}, IntPolynomial{1}},
           {IntPolynomial{}, IntPolynomial{-1}}, {IntPolynomial{coef(gen)}, IntPolynomial{coef(gen)}}};
      b = {kT, kT, IntPolynomial{2}, IntPolynomial{2}, IntPolynomial{coef(gen), 1}};
    } else if (form == Form::kCanonical) {
      a = {{IntPolynomial{1}, IntPolynomial{1}}, {IntPolynomial{coef(gen)}, IntPolynomial{coef(gen)}}};
      b = {kT, IntPolynomial{coef(gen), coef(gen)}};
    } else {
      a = {{IntPolynomial{1 + std::abs(coef(gen))}, IntPolynomial{1}, IntPolynomial{1 + std::abs(coef(gen))}}};
      b = {IntPolynomial{coef(gen), 1}};
    }
    const auto c = form == Form::kStandard ? std::vector<IntPolynomial>{IntPolynomial{1}, IntPolynomial{-1}, IntPolynomial{2}}
                                           : std::vector<IntPolynomial>{IntPolynomial{1}, IntPolynomial{2}};
    const Pilp p = make_program(form, a, b, c);
    for (int t = 1; t <= 7; ++t) {
      const auto expected = testing::reference_points(p, t, -12, 12);
      EXPECT_EQ(enumerate_lattice_points(p, t).points, expected);
      EXPECT_EQ(count_lattice_points(p, t), expected.size());
      EXPECT_EQ(f_ell(p, t, 4).values, testing::reference_top(p, t, 4, -12, 12));
      EXPECT_EQ(f_ell(p, t, 4, true).values, testing::reference_top(p, t, 4, -12, 12, true));
      ++checked;
    }
  }
  EXPECT_EQ(checked, 420u);
}

TEST(FEll, Examples) {
  const auto v = f_ell(testing::simplex_program(), Integer(5), 3).values;
  EXPECT_EQ(v, (std::vector<ExtendedInteger>{Integer(5), Integer(4), Integer(4)}));
  EXPECT_EQ(f_ell(testing::floor_program(), Integer(7), 1).values[0], Integer(3));
  const auto e = f_ell(testing::infeasible_program(), Integer(4), 2).values;
  EXPECT_EQ(e, (std::vector<ExtendedInteger>{std::nullopt, std::nullopt}));
  EXPECT_THROW(f_ell(testing::simplex_program(), Integer(0), 1), PreconditionError);
}

TEST(FEll, DistinctCollapsesDuplicates) {
  const auto v = f_ell(testing::simplex_program(), Integer(3), 5, true).values;
  EXPECT_EQ(v, (std::vector<ExtendedInteger>{Integer(3), Integer(2), Integer(1), Integer(0), std::nullopt}));
}

TEST(FEll, MonotoneWithBottomSuffix) {
  for (int t = 1; t <= 20; ++t) {
    const auto v = f_ell(testing::triangle_program(), t, 40).values;
    bool bottom = false;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!v[k]) bottom = true;
      if (bottom) EXPECT_FALSE(v[k].has_value());
      if (k + 1 < v.size() && v[k + 1]) EXPECT_GE(*v[k], *v[k + 1]);
    }
  }
}

TEST(Count, Examples) {
  EXPECT_EQ(count_lattice_points(testing::square_program(), Integer(4)), 25);
  EXPECT_EQ(count_lattice_points(testing::simplex_program(), Integer(5)), 21);
  EXPECT_EQ(count_lattice_points(testing::infeasible_program(), Integer(5)), 0);
  for (int t = 1; t <= 40; ++t) {
    EXPECT_EQ(count_lattice_points(testing::simplex_program(), t), Integer((t + 1) * (t + 2) / 2));
  }
}

TEST(Count, ZeroDimensional) {
  Pilp p;
  p.form = Form::kCanonical;
  p.m = 1;
  p.a = {{}};
  p.b = {IntPolynomial{-3, 1}};  // 0 <= t - 3
  EXPECT_EQ(count_lattice_points(p, Integer(2)), 0);
  EXPECT_EQ(count_lattice_points(p, Integer(3)), 1);
  EXPECT_EQ(f_ell(p, Integer(5), 2).values, (std::vector<ExtendedInteger>{Integer(0), std::nullopt}));
}

TEST(Limits, CellCapIsEnforced) {
  EnumerationLimits tight;
  tight.max_cells = 10;
  EXPECT_THROW(enumerate_lattice_points(instantiate(testing::square_program(), Integer(50)), std::nullopt, tight),
               LimitExceeded);
}

TEST(LpFeasible, Examples) {
  LinearSystem mid;
  mid.num_vars = 2;
  mid.nonnegative = {true, true};
  mid.add({r(1), r(1)}, Relation::kEqual, r(1));
  mid.add({r(0), r(2)}, Relation::kEqual, r(1));
  const Feasibility f = lp_feasible_exact(mid);
  ASSERT_TRUE(f.feasible);
  EXPECT_EQ(f.witness, (std::vector<Rational>{r(1, 2), r(1, 2)}));

  LinearSystem bad;
  bad.num_vars = 1;
  bad.add({r(1)}, Relation::kEqual, r(1));
  bad.add({r(1)}, Relation::kLessEqual, r(0));
  EXPECT_FALSE(lp_feasible_exact(bad).feasible);

  LinearSystem empty;
  EXPECT_TRUE(lp_feasible_exact(empty).feasible);
}

TEST(LpFeasible, WitnessSatisfiesRandomSystems) {
  std::mt19937 gen(41);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int round = 0; round < 100; ++round) {
    LinearSystem s;
    s.num_vars = 3;
    s.nonnegative = {true, false, true};
    for (int i = 0; i < 4; ++i) {
      const Relation rel = i % 3 == 0 ? Relation::kEqual : (i % 3 == 1 ? Relation::kLessEqual : Relation::kGreaterEqual);
      s.add({r(coef(gen)), r(coef(gen)), r(coef(gen))}, rel, r(coef(gen)));
    }
    const Feasibility f = lp_feasible_exact(s);
    if (!f.feasible) continue;
    ASSERT_EQ(f.witness.size(), 3u);
    EXPECT_GE(f.witness[0], 0);
    EXPECT_GE(f.witness[2], 0);
    for (const auto& c : s.constraints) {
      Rational lhs = 0;
      for (int j = 0; j < 3; ++j) lhs += c.coeffs[j] * f.witness[j];
      if (c.relation == Relation::kEqual) EXPECT_EQ(lhs, c.rhs);
      if (c.relation == Relation::kLessEqual) EXPECT_LE(lhs, c.rhs);
      if (c.relation == Relation::kGreaterEqual) EXPECT_GE(lhs, c.rhs);
    }
  }
}

TEST(LpMaximize, SimplexValue) {
  LinearSystem s;
  s.num_vars = 2;
  s.nonnegative = {true, true};
  s.add({r(1), r(2)}, Relation::kLessEqual, r(7));
  s.add({r(3), r(1)}, Relation::kLessEqual, r(9));
  const std::vector<Rational> obj{r(1), r(1)};
  const LpResult res = maximize(s, obj);
  ASSERT_EQ(res.status, LpStatus::kOptimal);
  EXPECT_EQ(res.value, r(23, 5));
  LinearSystem open;
  open.num_vars = 1;
  open.nonnegative = {true};
  const std::vector<Rational> up{r(1)};
  EXPECT_EQ(maximize(open, up).status, LpStatus::kUnbounded);
}

TEST(HullVertices, Examples) {
  const std::vector<IntVector> a{{0, 0}, {2, 0}, {0, 2}, {1, 1}};
  EXPECT_EQ(hull_vertices(a).vertices, (std::vector<std::size_t>{0, 1, 2}));
  const std::vector<IntVector> b{{0, 0}, {1, 0}, {2, 0}};
  EXPECT_EQ(hull_vertices(b).vertices, (std::vector<std::size_t>{0, 2}));
  const std::vector<IntVector> c{{3, 4}};
  EXPECT_EQ(hull_vertices(c).vertices, (std::vector<std::size_t>{0}));
}

TEST(HullVertices, WitnessesReproduceExcludedPoints) {
  std::mt19937 gen(29);
  std::uniform_int_distribution<int> coord(0, 6);
  for (int round = 0; round < 30; ++round) {
    std::set<IntVector> uniq;
    while (uniq.size() < 12) uniq.insert(IntVector{coord(gen), coord(gen)});
    const std::vector<IntVector> pts(uniq.begin(), uniq.end());
    const HullVertices hv = hull_vertices(pts);
    std::vector<IntVector> got;
    for (auto i : hv.vertices) got.push_back(pts[i]);
    EXPECT_EQ(got, testing::reference_hull_2d(pts));
    EXPECT_EQ(hv.witnesses.size() + hv.vertices.size(), pts.size());
    for (const auto& w : hv.witnesses) {
      Rational total = 0;
      std::vector<Rational> sum(2, Rational(0));
      for (const auto& [idx, coef] : w.combination) {
        EXPECT_NE(idx, w.point);
        EXPECT_GE(coef, 0);
        total += coef;
        for (int k = 0; k < 2; ++k) sum[k] += coef * pts[idx][k];
      }
      EXPECT_EQ(total, 1);
      for (int k = 0; k < 2; ++k) EXPECT_EQ(sum[k], pts[w.point][k]);
    }
  }
}

TEST(HullVertices, ThreeDimensionalCube) {
  std::vector<IntVector> pts;
  for (int x = 0; x <= 2; ++x) {
    for (int y = 0; y <= 2; ++y) {
      for (int z = 0; z <= 2; ++z) pts.push_back({x, y, z});
    }
  }
  EXPECT_EQ(hull_vertices(pts).vertices.size(), 8u);
}

TEST(LatticeHull, MatchesPointHull) {
  for (const Pilp& p : {testing::triangle_program(), testing::simplex_program(), testing::square_program()}) {
    for (int t = 1; t <= 11; ++t) {
      const auto pts = enumerate_lattice_points(p, t).points;
      EXPECT_EQ(lattice_hull_vertices(instantiate(p, t)), testing::reference_hull_2d(pts)) << "t=" << t;
    }
  }
  // a 3-variable program goes through the LP filter
  const Pilp tetra = make_program(Form::kCanonical, {{IntPolynomial{1}, IntPolynomial{1}, IntPolynomial{2}}}, {kT},
                                  {IntPolynomial{1}, IntPolynomial{}, IntPolynomial{}});
  for (int t = 1; t <= 7; ++t) {
    const auto pts = enumerate_lattice_points(tetra, t).points;
    const HullVertices hv = hull_vertices(pts);
    std::vector<IntVector> expected;
    for (auto i : hv.vertices) expected.push_back(pts[i]);
    EXPECT_EQ(lattice_hull_vertices(instantiate(tetra, t)), expected) << "t=" << t;
  }
}

// Points near a bounding hyperplane carry the top ell values.
TEST(HyperplaneRestriction, TopValuesLiveNearTheBoundary) {
  const Pilp p = testing::simplex_program();
  for (std::size_t ell = 1; ell <= 3; ++ell) {
    for (int t = 5; t <= 25; t += 5) {
      // bounding rows: x1 + x2 <= t, -x1 <= 0, -x2 <= 0
      const std::vector<std::pair<IntVector, Integer>> rows{{{1, 1}, t}, {{-1, 0}, 0}, {{0, -1}, 0}};
      std::vector<Integer> near;
      for (const auto& x : enumerate_lattice_points(p, t).points) {
        for (const auto& [a, b] : rows) {
          const Integer gap = b - (a[0] * x[0] + a[1] * x[1]);
          const Integer norm2 = a[0] * a[0] + a[1] * a[1];
          if (gap * gap < Integer(ell * ell) * norm2) {
            near.push_back(x[0]);
            break;
          }
        }
      }
      std::sort(near.begin(), near.end(), std::greater<>());
      ASSERT_GE(near.size(), ell);
      EXPECT_EQ(ExtendedInteger(near[ell - 1]), f_ell(p, t, ell).values.back());
    }
  }
}

}  // namespace
}  // namespace pilp
