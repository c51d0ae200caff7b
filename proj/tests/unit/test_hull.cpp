#include <gtest/gtest.h>

#include <set>

#include "pilp/error.hpp"
#include "pilp/hull.hpp"
#include "pilp/lp.hpp"
#include "pilp/oracle.hpp"
#include "pilp/transforms.hpp"
#include "support.hpp"

namespace pilp {
namespace {

using testing::kT;
using testing::make_program;
using Q = RationalPolynomial;

Rational r(long n, long d = 1) { return make_rational(n, d); }
const Q kTq{0, 1};

PolyVector vec(std::initializer_list<Q> cs) { return PolyVector(cs); }

struct EventuallyLess {
  bool operator()(const PolyVector& a, const PolyVector& b) const { return compare_eventually(a, b) < 0; }
};
using PolySet = std::set<PolyVector, EventuallyLess>;

TEST(AffineIndependence, Examples) {
  const std::vector<PolyVector> tri{vec({Q{}, Q{}}), vec({kTq, Q{}}), vec({Q{}, kTq})};
  EXPECT_TRUE(affinely_independent_eventually(tri).independent);
  const std::vector<PolyVector> col{vec({Q{}, Q{}}), vec({kTq, Q{}}), vec({Q{0, 2}, Q{}})};
  EXPECT_FALSE(affinely_independent_eventually(col).independent);
  const std::vector<PolyVector> one{vec({kTq})};
  EXPECT_TRUE(affinely_independent_eventually(one).independent);
  EXPECT_THROW(affinely_independent_eventually(std::vector<PolyVector>{}), PreconditionError);
}

TEST(AffineIndependence, ThresholdIsSound) {
  // (0,0), (t,1), (7,1): the determinant t - 7 vanishes at t = 7
  const std::vector<PolyVector> vs{vec({Q{}, Q{}}), vec({kTq, Q{1}}), vec({Q{7}, Q{1}})};
  const IndependenceResult res = affinely_independent_eventually(vs);
  ASSERT_TRUE(res.independent);
  EXPECT_GE(res.threshold, 7);
}

TEST(ConvexCombination, Examples) {
  const std::vector<PolyVector> vs{vec({Q{}, Q{}}), vec({Q{0, 2}, Q{}}), vec({Q{}, Q{0, 2}})};
  const ConvexCombination a = convex_combination_eventually(vec({kTq, kTq}), vs);
  EXPECT_TRUE(a.inside);
  ASSERT_EQ(a.coefficients.size(), 3u);
  EXPECT_EQ(a.coefficients[0], RationalFunction(Q{}));
  EXPECT_EQ(a.coefficients[1], RationalFunction(Q{r(1, 2)}));
  EXPECT_EQ(a.coefficients[2], RationalFunction(Q{r(1, 2)}));

  const ConvexCombination b = convex_combination_eventually(vec({Q{0, 3}, Q{}}), vs);
  EXPECT_FALSE(b.inside);
  ASSERT_EQ(b.coefficients.size(), 3u);
  EXPECT_EQ(b.coefficients[1], RationalFunction(Q{r(3, 2)}));

  const std::vector<PolyVector> seg{vec({Q{}, Q{}}), vec({Q{1, 1}, Q{}})};
  const ConvexCombination c = convex_combination_eventually(vec({kTq, Q{}}), seg);
  EXPECT_TRUE(c.inside);
  EXPECT_EQ(c.coefficients[0], RationalFunction(IntPolynomial{1}, IntPolynomial{1, 1}));
  EXPECT_EQ(c.coefficients[1], RationalFunction(IntPolynomial{0, 1}, IntPolynomial{1, 1}));
  for (int t : {10, 100}) {
    EXPECT_EQ(c.coefficients[0].eval(t), r(1, t + 1));
    EXPECT_EQ(c.coefficients[1].eval(t), r(t, t + 1));
  }
}

TEST(ConvexCombination, OutsideAffineHullAndPrecondition) {
  const std::vector<PolyVector> seg{vec({Q{}, Q{}}), vec({kTq, Q{}})};
  const ConvexCombination off = convex_combination_eventually(vec({Q{}, Q{1}}), seg);
  EXPECT_FALSE(off.inside);
  EXPECT_TRUE(off.coefficients.empty());
  const std::vector<PolyVector> dep{vec({Q{}, Q{}}), vec({kTq, Q{}}), vec({Q{0, 2}, Q{}})};
  EXPECT_THROW(convex_combination_eventually(vec({kTq, Q{}}), dep), PreconditionError);
}

// Sum of coefficients is 1 as a rational function and the combination
// reproduces w at large t.
TEST(ConvexCombination, CoefficientIdentities) {
  const std::vector<PolyVector> vs{vec({Q{}, Q{1}}), vec({Q{2, 3}, Q{}}), vec({Q{1}, Q{0, 0, 1}})};
  const std::vector<PolyVector> ws{vec({Q{1}, Q{1}}), vec({Q{0, 1}, Q{0, 1}}), vec({Q{5, 0, 1}, Q{-1}})};
  for (const auto& w : ws) {
    const ConvexCombination cc = convex_combination_eventually(w, vs);
    ASSERT_EQ(cc.coefficients.size(), vs.size());
    RationalFunction total(Q{});
    for (const auto& c : cc.coefficients) total = total + c;
    EXPECT_EQ(total, RationalFunction(Q{1}));
    for (const Integer& t : {Integer(100), Integer(1000), Integer(cc.threshold + 1)}) {
      for (std::size_t k = 0; k < 2; ++k) {
        Rational s = 0;
        for (std::size_t h = 0; h < vs.size(); ++h) s += cc.coefficients[h].eval(t) * vs[h][k].eval(t);
        EXPECT_EQ(s, w[k].eval(t));
      }
      if (t > cc.threshold) {
        bool in01 = true;
        for (const auto& c : cc.coefficients) in01 = in01 && c.eval(t) >= 0 && c.eval(t) <= 1;
        EXPECT_EQ(in01, cc.inside) << to_string(t);
      }
    }
  }
}

TEST(EventualHull, Examples) {
  const std::vector<PolyVector> a{vec({Q{}, Q{}}), vec({Q{0, 2}, Q{}}), vec({Q{}, Q{0, 2}}), vec({kTq, kTq})};
  EXPECT_EQ(eventual_hull_vertices(a).vertices, (std::vector<std::size_t>{0, 1, 2}));
  const std::vector<PolyVector> b{vec({Q{}, Q{}}), vec({kTq, Q{}}), vec({Q{}, kTq})};
  EXPECT_EQ(eventual_hull_vertices(b).vertices, (std::vector<std::size_t>{0, 1, 2}));
  const std::vector<PolyVector> c{vec({Q{}, Q{}}), vec({kTq, Q{}}), vec({Q{0, 2}, Q{}})};
  EXPECT_EQ(eventual_hull_vertices(c).vertices, (std::vector<std::size_t>{0, 2}));
  const std::vector<PolyVector> dup{vec({kTq}), vec({kTq})};
  EXPECT_THROW(eventual_hull_vertices(dup), PreconditionError);
}

TEST(EventualHull, ConsistentWithConcreteHull) {
  const std::vector<std::vector<PolyVector>> sets{
      {vec({Q{}, Q{}}), vec({Q{0, 2}, Q{}}), vec({Q{}, Q{0, 2}}), vec({kTq, kTq}), vec({Q{1}, Q{1}})},
      {vec({Q{}, Q{}}), vec({Q{10}, Q{}}), vec({kTq, Q{1}}), vec({Q{}, Q{3}}), vec({Q{5}, Q{2}})},
      {vec({Q{}, Q{}}), vec({Q{0, 0, 1}, Q{}}), vec({kTq, kTq}), vec({Q{0, 3}, Q{0, 2}})},
  };
  for (const auto& vs : sets) {
    const EventualHull eh = eventual_hull_vertices(vs);
    for (Integer t = eh.threshold + 1; t <= eh.threshold + 20; ++t) {
      std::vector<IntVector> pts;
      for (const auto& v : vs) pts.push_back(eval_integral(v, t));
      EXPECT_EQ(hull_vertices(pts).vertices, eh.vertices);
    }
  }
}

TEST(CandidateVertices, Examples) {
  const Pilp box = make_program(Form::kReducedCanonical, {{IntPolynomial{1}, IntPolynomial{}}, {IntPolynomial{}, IntPolynomial{1}}},
                                {kT, kT}, {IntPolynomial{1}, IntPolynomial{}});
  const CandidateVertices cb = candidate_vertices_reduced(box);
  PolySet got;
  for (const auto& c : cb.candidates) {
    EXPECT_TRUE(c.eventual_vertex);
    got.insert(c.point);
  }
  const PolySet expected{vec({Q{}, Q{}}), vec({kTq, Q{}}), vec({Q{}, kTq}), vec({kTq, kTq})};
  EXPECT_EQ(got, expected);

  const Pilp line = make_program(Form::kReducedCanonical, {{IntPolynomial{1}}, {IntPolynomial{1}}}, {kT, IntPolynomial{0, 2}},
                                 {IntPolynomial{1}});
  const CandidateVertices cl = candidate_vertices_reduced(line);
  ASSERT_EQ(cl.candidates.size(), 3u);
  EXPECT_EQ(cl.candidates[0].point, vec({Q{}}));
  EXPECT_TRUE(cl.candidates[0].eventual_vertex);
  EXPECT_EQ(cl.candidates[1].point, vec({kTq}));
  EXPECT_TRUE(cl.candidates[1].eventual_vertex);
  EXPECT_EQ(cl.candidates[2].point, vec({Q{0, 2}}));
  EXPECT_FALSE(cl.candidates[2].eventual_vertex);

  Pilp simplex = testing::simplex_program();
  simplex.form = Form::kReducedCanonical;
  PolySet sv;
  for (const auto& c : candidate_vertices_reduced(simplex).candidates) {
    if (c.eventual_vertex) sv.insert(c.point);
  }
  EXPECT_EQ(sv, (PolySet{vec({Q{}, Q{}}), vec({kTq, Q{}}), vec({Q{}, kTq})}));
  EXPECT_THROW(candidate_vertices_reduced(testing::simplex_program()), FormError);
}

// Flagged candidates are exactly the vertices of the relaxation R(t): a
// feasible point is a vertex iff n linearly independent constraints are tight.
TEST(CandidateVertices, MatchRelaxationVertices) {
  const Pilp p = make_program(Form::kReducedCanonical,
                              {{IntPolynomial{1}, IntPolynomial{2}}, {IntPolynomial{3}, IntPolynomial{1}}, {IntPolynomial{1}, IntPolynomial{}}},
                              {IntPolynomial{1, 2}, IntPolynomial{0, 3}, IntPolynomial{4, 1}}, {IntPolynomial{1}, IntPolynomial{1}});
  const CandidateVertices cv = candidate_vertices_reduced(p);
  for (Integer t = cv.threshold + 1; t <= cv.threshold + 15; ++t) {
    std::set<std::vector<Rational>> flagged;
    for (const auto& c : cv.candidates) {
      if (!c.eventual_vertex) continue;
      flagged.insert(eval(c.point, t));
    }
    // brute force: all pairs of tight rows among the 5 (3 rows + x >= 0)
    const std::vector<std::vector<Rational>> rows{{1, 2}, {3, 1}, {1, 0}, {-1, 0}, {0, -1}};
    const std::vector<Rational> rhs{Rational(1 + 2 * t), Rational(3 * t), Rational(4 + t), 0, 0};
    std::set<std::vector<Rational>> verts;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = i + 1; j < rows.size(); ++j) {
        const Rational det = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0];
        if (det == 0) continue;
        const std::vector<Rational> x{(rhs[i] * rows[j][1] - rows[i][1] * rhs[j]) / det,
                                      (rows[i][0] * rhs[j] - rhs[i] * rows[j][0]) / det};
        bool feasible = true;
        for (std::size_t k = 0; k < rows.size(); ++k) feasible = feasible && rows[k][0] * x[0] + rows[k][1] * x[1] <= rhs[k];
        if (feasible) verts.insert(x);
      }
    }
    EXPECT_EQ(flagged, verts) << to_string(t);
  }
}

TEST(InferHull, BoxAndTriangle) {
  const InferenceConfig cfg;
  const HullInference box = infer_hull_structure(testing::square_program(), cfg);
  ASSERT_TRUE(std::holds_alternative<ParametricVertexFamily>(box));
  const auto& fb = std::get<ParametricVertexFamily>(box);
  EXPECT_EQ(fb.period, 1u);
  EXPECT_EQ(fb.classes[0], (std::vector<PolyVector>{vec({Q{}, Q{}}), vec({Q{}, kTq}), vec({kTq, Q{}}), vec({kTq, kTq})}));

  const HullInference tri = infer_hull_structure(testing::triangle_program(), cfg);
  ASSERT_TRUE(std::holds_alternative<ParametricVertexFamily>(tri));
  const auto& ft = std::get<ParametricVertexFamily>(tri);
  ASSERT_EQ(ft.period, 2u);
  const Q half{0, r(1, 2)};
  const Q half_odd{r(-1, 2), r(1, 2)};
  EXPECT_EQ(ft.classes[0], (std::vector<PolyVector>{vec({Q{}, Q{}}), vec({Q{}, half}), vec({kTq, Q{}})}));
  EXPECT_EQ(ft.classes[1],
            (std::vector<PolyVector>{vec({Q{}, Q{}}), vec({Q{}, half_odd}), vec({Q{1}, half_odd}), vec({kTq, Q{}})}));
  for (Integer t = ft.threshold + 1; t <= ft.threshold + 12; ++t) {
    EXPECT_EQ(ft.vertices_at(t), testing::reference_hull_2d(testing::reference_points(testing::triangle_program(), t, 0, t)));
  }
  EXPECT_THROW(ft.vertices_at(ft.threshold), OutOfRangeError);
}

TEST(InferHull, EmptyProgram) {
  const HullInference res = infer_hull_structure(testing::infeasible_program(), {});
  ASSERT_TRUE(std::holds_alternative<ParametricVertexFamily>(res));
  const auto& f = std::get<ParametricVertexFamily>(res);
  EXPECT_EQ(f.period, 1u);
  EXPECT_TRUE(f.classes[0].empty());
}

// With the digit decomposition of a standard program, the digit images of
// M(t) land in the parts' vertex sets, and the hull of the pulled-back part
// vertices has vertex set M(t).
TEST(HullDigits, VertexImagesAndPullback) {
  const Pilp p = canonical_to_standard_slack(testing::triangle_program()).program;
  const DigitDecomposition dd = standard_to_reduced_digits(p, 2);
  for (Integer t = dd.threshold + 1; t <= dd.threshold + 4; ++t) {
    const std::vector<IntVector> m = lattice_hull_vertices(p, t);
    std::set<IntVector> part_vertices;
    std::set<IntVector> pulled;
    for (const auto& part : dd.parts) {
      for (const auto& y : lattice_hull_vertices(part.program, t)) {
        part_vertices.insert(y);
        pulled.insert(dd.inverse_map.apply(t, y));
      }
    }
    for (const auto& x : m) EXPECT_TRUE(part_vertices.count(dd.forward(t, x)));
    const std::vector<IntVector> pts(pulled.begin(), pulled.end());
    std::vector<IntVector> hull;
    for (auto i : hull_vertices(pts).vertices) hull.push_back(pts[i]);
    EXPECT_EQ(hull, m);
  }
}

}  // namespace
}  // namespace pilp
