#include <gtest/gtest.h>

#include "support.hpp"

using namespace supersplines;

namespace {

Polynomial2 poly2(std::initializer_list<std::tuple<int, int, Rational>> terms) {
  Polynomial2 p;
  for (const auto& [i, j, c] : terms) p.add_term(i, j, c);
  return p;
}

HomogeneousPolynomial hpoly(int d, std::initializer_list<std::pair<Monomial3, Rational>> terms) {
  HomogeneousPolynomial p(d);
  for (const auto& [m, c] : terms) p.add_term(m, c);
  return p;
}

Polynomial2 random_poly2(std::mt19937& rng, int deg) {
  Polynomial2 p;
  for (int i = 0; i <= deg; ++i)
    for (int j = 0; i + j <= deg; ++j)
      if (rng() % 2) p.add_term(i, j, Rational(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 3) + 1));
  return p;
}

}  // namespace

TEST(Homogenize, Examples) {
  EXPECT_EQ(homogenize(poly2({{1, 0, 1}, {0, 0, 1}}), 2), hpoly(2, {{{1, 0, 1}, 1}, {{0, 0, 2}, 1}}));
  EXPECT_EQ(homogenize(poly2({{0, 0, 1}}), 3), hpoly(3, {{{0, 0, 3}, 1}}));
  EXPECT_EQ(homogenize(poly2({{2, 0, 1}, {0, 1, 1}}), 2), hpoly(2, {{{2, 0, 0}, 1}, {{0, 1, 1}, 1}}));
}

TEST(Homogenize, DegreeTooLowThrows) {
  EXPECT_THROW(homogenize(poly2({{2, 1, 1}}), 2), InvalidArgument);
}

TEST(Homogenize, RoundTripAndProducts) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    int dp = static_cast<int>(rng() % 4), dq = static_cast<int>(rng() % 4);
    auto p = random_poly2(rng, dp), q = random_poly2(rng, dq);
    EXPECT_EQ(dehomogenize(homogenize(p, dp + 1)), p);
    EXPECT_EQ(homogenize(p * q, dp + dq), homogenize(p, dp) * homogenize(q, dq));
  }
}

TEST(EdgeLinearForm, Examples) {
  EXPECT_EQ(edge_linear_form({0, 0}, {1, 0}), LinearForm3(0, 1, 0));
  EXPECT_EQ(edge_linear_form({0, 0}, {0, 1}), LinearForm3(1, 0, 0));
  EXPECT_EQ(edge_linear_form({1, 0}, {0, 1}), LinearForm3(1, 1, -1));
  EXPECT_THROW(edge_linear_form({2, 3}, {2, 3}), InvalidArgument);
}

TEST(EdgeLinearForm, NormalizedAndSymmetric) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    Point p{Rational(static_cast<long>(rng() % 13) - 6, static_cast<long>(rng() % 3) + 1), Rational(static_cast<long>(rng() % 13) - 6)};
    Point q{Rational(static_cast<long>(rng() % 13) - 6), Rational(static_cast<long>(rng() % 13) - 6, static_cast<long>(rng() % 5) + 1)};
    if (p == q) continue;
    auto l = edge_linear_form(p, q);
    EXPECT_EQ(l, edge_linear_form(q, p));
    EXPECT_TRUE(l.vanishes_at(p));
    EXPECT_TRUE(l.vanishes_at(q));
    Integer g = 0;
    for (const auto& c : l.coefficients()) {
      EXPECT_EQ(c.get_den(), 1);
      g = gcd(g, c.get_num());
    }
    EXPECT_EQ(g, 1);
    const Rational& lead = sgn(l.a()) != 0 ? l.a() : (sgn(l.b()) != 0 ? l.b() : l.c());
    EXPECT_GT(sgn(lead), 0);
  }
}

TEST(LinearForm, ZeroRejected) { EXPECT_THROW(LinearForm3(0, 0, 0), InvalidArgument); }

TEST(VertexComplementForm, Examples) {
  EXPECT_EQ(vertex_complement_form(LinearForm3(0, 1, 0), {0, 0}), LinearForm3(1, 0, 0));
  EXPECT_EQ(vertex_complement_form(LinearForm3(1, 0, 0), {0, 0}), LinearForm3(0, 1, 0));
  EXPECT_EQ(vertex_complement_form(LinearForm3(1, 1, -1), {1, 0}), LinearForm3(1, 0, -1));
  EXPECT_THROW(vertex_complement_form(LinearForm3(1, 1, -1), {0, 0}), InvalidArgument);
}

TEST(VertexComplementForm, IndependentOfEdgeForm) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    Point v{Rational(static_cast<long>(rng() % 9) - 4), Rational(static_cast<long>(rng() % 9) - 4, 2)};
    Point w{v.x + static_cast<long>(rng() % 5) - 2, v.y + static_cast<long>(rng() % 5) - 2};
    if (v == w) continue;
    auto l = edge_linear_form(v, w);
    auto c = vertex_complement_form(l, v);
    EXPECT_TRUE(c.vanishes_at(v));
    // rank 2 coefficient matrix: some 2x2 minor is nonzero
    const auto &p = l.coefficients(), &q = c.coefficients();
    bool independent = sgn(p[0] * q[1] - p[1] * q[0]) != 0 || sgn(p[0] * q[2] - p[2] * q[0]) != 0 ||
                       sgn(p[1] * q[2] - p[2] * q[1]) != 0;
    EXPECT_TRUE(independent);
  }
}

TEST(MonomialBasis, SizesAndOrder) {
  EXPECT_EQ(graded_monomial_basis(0).size(), 1u);
  auto b1 = graded_monomial_basis(1);
  ASSERT_EQ(b1.size(), 3u);
  EXPECT_EQ(b1[0], (Monomial3{1, 0, 0}));
  EXPECT_EQ(b1[1], (Monomial3{0, 1, 0}));
  EXPECT_EQ(b1[2], (Monomial3{0, 0, 1}));
  EXPECT_EQ(graded_monomial_basis(5).size(), 21u);
  for (int d = 0; d <= 9; ++d) {
    auto b = graded_monomial_basis(d);
    EXPECT_EQ(b.size(), static_cast<std::size_t>(binom(d + 2, 2)));
    for (std::size_t k = 0; k < b.size(); ++k) {
      EXPECT_EQ(b[k].degree(), d);
      EXPECT_EQ(monomial_index(b[k]), k);
      if (k) {
        EXPECT_TRUE(MonomialOrder{}(b[k - 1], b[k]));
      }
    }
  }
}

TEST(HomogeneousPolynomial, ArithmeticAndEvaluation) {
  auto l = LinearForm3(1, 2, -3).polynomial();
  auto sq = l.pow(2);
  EXPECT_EQ(sq.degree(), 2);
  EXPECT_EQ(sq.coefficient({1, 1, 0}), 4);
  EXPECT_EQ(sq.coefficient({0, 0, 2}), 9);
  EXPECT_EQ(sq.evaluate(1, 1, 1), 0);
  EXPECT_TRUE((sq - l * l).is_zero());
  EXPECT_THROW(hpoly(2, {{{1, 0, 0}, 1}}), InvalidArgument);
}

TEST(HomogeneousPolynomial, CoefficientVectorRoundTrip) {
  auto p = hpoly(3, {{{3, 0, 0}, Rational(1, 2)}, {{0, 1, 2}, -7}});
  auto v = p.coefficient_vector();
  ASSERT_EQ(v.size(), 10u);
  EXPECT_EQ(v[0], Rational(1, 2));
  EXPECT_EQ(HomogeneousPolynomial::from_coefficients(3, v), p);
}

TEST(HomogeneousPolynomial, JsonRoundTripKeepsLayout) {
  std::mt19937 rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = homogenize(random_poly2(rng, 4), 4);
    auto j = to_json(p);
    auto back = polynomial_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(back, p);
    EXPECT_EQ(to_json(back).dump(), j.dump());
  }
  auto j = to_json(hpoly(2, {{{0, 0, 2}, Rational(-3, 4)}, {{2, 0, 0}, 1}}));
  EXPECT_EQ(j.dump(), R"({"degree":2,"terms":[{"coef":"1","exp":[2,0,0]},{"coef":"-3/4","exp":[0,0,2]}]})");
}

TEST(Polynomial2, Derivative) {
  auto p = poly2({{3, 1, 2}, {0, 2, 1}});
  EXPECT_EQ(p.derivative(1, 0), poly2({{2, 1, 6}}));
  EXPECT_EQ(p.derivative(0, 2), poly2({{0, 0, 2}}));
  EXPECT_EQ(p.evaluate(1, 2), 8);
}

TEST(HomogeneousPolynomial, UnreducedCoefficientsAreCanonicalized) {
  HomogeneousPolynomial p(1);
  p.add_term({1, 0, 0}, Rational(4, 2));
  p.add_term({0, 1, 0}, Rational(3, 6));
  EXPECT_EQ(to_json(p).dump(), R"({"degree":1,"terms":[{"coef":"2","exp":[1,0,0]},{"coef":"1/2","exp":[0,1,0]}]})");
  Polynomial2 q;
  q.add_term(1, 0, Rational(4, 2));
  EXPECT_EQ(to_string(q.coefficient(1, 0)), "2");
}
