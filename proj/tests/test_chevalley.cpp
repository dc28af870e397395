#include <gtest/gtest.h>

#include "chev/chevalley.hpp"

using namespace chev;

namespace {

using P = Poly<Rational>;

P X() { return P::variable(2, 0); }
P Y() { return P::variable(2, 1); }
P C(Rational v, std::size_t n = 2) { return P::constant(n, v); }

template <Field F>
ChevalleyMap<F> cmap(const char* s, InvariantOptions opt = {}) {
  return basic_invariants<F>(CoxeterTypeSpec::parse(s), opt);
}

}  // namespace

TEST(BasicInvariants, B2) {
  auto c = cmap<Rational>("B2");
  ASSERT_EQ(c.n(), 2u);
  EXPECT_EQ(c.p[0], X() * X() + Y() * Y());
  EXPECT_EQ(c.p[1], X().pow(4) + Y().pow(4));
  EXPECT_EQ(c.k, (std::vector<int>{2, 4}));
  EXPECT_EQ(c.d, 4);
  EXPECT_EQ(c.s_j, (std::vector<int>{3, 1}));
  EXPECT_EQ(c.s, 1);
  EXPECT_EQ(c.h, 4);
}

TEST(BasicInvariants, A1) {
  auto c = cmap<Rational>("A1");
  P x = P::variable(1, 0);
  EXPECT_EQ(c.p[0], x * x);
  EXPECT_EQ(c.k, std::vector<int>{2});
  EXPECT_EQ(c.d, 1);
  EXPECT_EQ(c.h, 2);
}

TEST(BasicInvariants, H3) {
  auto c = cmap<Sqrt5Field>("H3");
  EXPECT_EQ(c.k, (std::vector<int>{2, 6, 10}));
  EXPECT_EQ(c.d, 15);
  EXPECT_EQ(c.s, 6);
  EXPECT_EQ(c.h, 10);
}

TEST(BasicInvariants, DegreeBookkeepingAllFamilies) {
  auto check = [](const auto& c) {
    SCOPED_TRACE(c.group->spec().str());
    EXPECT_EQ(c.k, c.group->spec().degrees());
    int sum = 0;
    for (int k : c.k) sum += k - 1;
    EXPECT_EQ(c.d, sum);
    EXPECT_EQ(c.h, c.k.back());
    EXPECT_EQ(c.k.front(), 2);
    for (std::size_t i = 0; i < c.n(); ++i) EXPECT_TRUE(c.p[i].is_homogeneous());
  };
  for (const char* g : {"A2", "A3", "A4", "B3", "B4", "D4", "D5", "I2(4)"}) check(cmap<Rational>(g));
  check(cmap<Sqrt3Field>("I2(6)"));
  check(cmap<Sqrt3Field>("I2(3)"));
  check(cmap<Sqrt3Field>("I2(6)", {.power_sum_top = true}));
  check(cmap<Rational>("I2(4)", {.power_sum_top = true}));
  check(cmap<double>("I2(5)"));
  check(cmap<double>("I2(8)", {.power_sum_top = true}));
}

TEST(BasicInvariants, DihedralTopIsIntegral) {
  auto c = cmap<Rational>("I2(4)");
  // Re((x+iy)^4) = x^4 - 6x^2y^2 + y^4
  EXPECT_EQ(c.p[1], X().pow(4) - C(6) * X() * X() * Y() * Y() + Y().pow(4));
}

TEST(Reynolds, Examples) {
  auto a1 = build_group<Rational>(CoxeterTypeSpec::parse("A1"));
  P x = P::variable(1, 0);
  EXPECT_TRUE(reynolds(*a1, x).is_zero());
  EXPECT_EQ(reynolds(*a1, x * x), x * x);
  auto b2 = build_group<Rational>(CoxeterTypeSpec::parse("B2"));
  EXPECT_EQ(reynolds(*b2, X().pow(4)), (X().pow(4) + Y().pow(4)) * Rational(1, 2));
}

TEST(Reynolds, LinearPowerShortcutMatchesGeneralAverage) {
  auto g = build_group<Rational>(CoxeterTypeSpec::parse("A2"));
  Vec<Rational> a{Rational(1), Rational(-2)};
  P l = P::linear(std::span<const Rational>(a));
  EXPECT_EQ(reynolds_linear_power(*g, a, 5), reynolds(*g, l.pow(5)));
  auto h = build_group<Sqrt5Field>(CoxeterTypeSpec::parse("H3"));
  Vec<Sqrt5Field> b{Sqrt5Field(1), Sqrt5Field(0), Sqrt5Field(2)};
  auto lb = Poly<Sqrt5Field>::linear(std::span<const Sqrt5Field>(b));
  EXPECT_EQ(reynolds_linear_power(*h, b, 4), reynolds(*h, lb.pow(4)));
}

TEST(Jacobian, B2) {
  auto c = cmap<Rational>("B2");
  auto jf = exact_factorization(c);
  EXPECT_EQ(jf.jacobian, C(8) * X() * Y().pow(3) - C(8) * X().pow(3) * Y());
  EXPECT_EQ(jf.c, Rational(-8));
  ASSERT_EQ(jf.factors.size(), 4u);
  std::vector<Vec<Rational>> want{{1, 0}, {0, 1}, {1, -1}, {1, 1}};
  for (const auto& w : want) EXPECT_NE(std::find(jf.factors.begin(), jf.factors.end(), w), jf.factors.end());
}

TEST(Jacobian, A1) {
  auto jf = exact_factorization(cmap<Rational>("A1"));
  EXPECT_EQ(jf.c, Rational(2));
  ASSERT_EQ(jf.factors.size(), 1u);
  EXPECT_EQ(jf.factors[0], Vec<Rational>{Rational(1)});
}

TEST(Jacobian, H3) {
  auto c = cmap<Sqrt5Field>("H3");
  auto jf = exact_factorization(c);
  EXPECT_EQ(jf.factors.size(), 15u);
  EXPECT_FALSE(jf.c.is_zero());
  EXPECT_EQ(jf.jacobian, product_of_forms(*c.group) * jf.c);
}

TEST(Jacobian, NumericDihedral) {
  for (const char* g : {"I2(5)", "I2(7)"}) {
    auto rep = std::get<PointwiseJacobianReport>(jacobian_factorization(cmap<double>(g)));
    EXPECT_TRUE(rep.passed) << g << " max error " << rep.max_abs_error;
    EXPECT_EQ(rep.points, 100u);
  }
}

TEST(Jacobian, WrongInvariantsFail) {
  auto c = cmap<Rational>("B2");
  c.p[1] = X().pow(4) + C(3) * Y().pow(4);  // not invariant; J loses the diagonal mirrors
  EXPECT_THROW(exact_factorization(c), FactorizationFailure);
}

TEST(Discriminant, A1) {
  auto c = cmap<Rational>("A1");
  P u = P::variable(1, 0);
  EXPECT_EQ(discriminant(c), u * Rational(4));
}

TEST(Discriminant, B2HandExpansion) {
  auto c = cmap<Rational>("B2");
  P u1 = X(), u2 = Y();  // same variables, read as u
  // J^2 = 64 x^2 y^2 (x^2 - y^2)^2, x^2 y^2 = (u1^2 - u2)/2, (x^2 - y^2)^2 = 2 u2 - u1^2
  P expected = C(32) * (u1 * u1 - u2) * (C(2) * u2 - u1 * u1);
  P delta = discriminant(c);
  EXPECT_EQ(delta, expected);
  auto j = jacobian_determinant(c);
  EXPECT_EQ(compose(delta, c.p), j * j);
  // on the mirror x = y
  std::vector<Rational> pt{Rational(3, 7), Rational(3, 7)};
  std::vector<Rational> pv{evaluate(c.p[0], pt), evaluate(c.p[1], pt)};
  EXPECT_TRUE(evaluate(delta, pv).is_zero());
}

TEST(Rewrite, Examples) {
  auto c = cmap<Rational>("B2");
  P u1 = X(), u2 = Y();
  EXPECT_EQ(rewrite_invariant(c, X().pow(4) + Y().pow(4)).F_poly, u2);
  auto r = rewrite_invariant(c, X() * X() * Y() * Y());
  EXPECT_EQ(r.F_poly, (u1 * u1 - u2) * Rational(1, 2));
  EXPECT_EQ(r.weighted_degree, 4);
  auto a1 = cmap<Rational>("A1");
  P x = P::variable(1, 0);
  auto r6 = rewrite_invariant(a1, x.pow(6));
  EXPECT_EQ(r6.F_poly, x.pow(3));
  EXPECT_EQ(r6.F_poly.degree_in(0), Degree(3));
  EXPECT_THROW(rewrite_invariant(c, X().pow(4)), NotInvariant);
}

TEST(Rewrite, InconsistentBasisDetected) {
  auto c = cmap<Rational>("B2");
  c.p[1] = (X() * X() + Y() * Y()).pow(2);  // dependent on p_1
  EXPECT_THROW(rewrite_invariant(c, X().pow(4) + Y().pow(4), false), RewriteInconsistent);
}

TEST(Gradient, Examples) {
  auto a1 = cmap<Rational>("A1");
  P x = P::variable(1, 0);
  auto g1 = gradient_system(a1, x.pow(4));
  EXPECT_EQ(g1[0], x * x * Rational(2));

  auto c = cmap<Rational>("B2");
  auto g = gradient_system(c, X().pow(4) + Y().pow(4));
  EXPECT_TRUE(g[0].is_zero());
  EXPECT_EQ(g[1], C(1));
  auto h = gradient_system(c, X() * X() * Y() * Y());
  EXPECT_EQ(h[0], X() * X() + Y() * Y());
  EXPECT_EQ(h[1], C(Rational(-1, 2)));
}

TEST(Gradient, MinorDegreesAndConvention) {
  auto c = cmap<Rational>("B2");
  CramerSystem<Rational> cs(c);
  // M_{i,j}: p_j row and z_i column removed from [[2x, 2y], [4x^3, 4y^3]]
  EXPECT_EQ(cs.minor_ij(0, 0), C(4) * Y().pow(3));
  EXPECT_EQ(cs.minor_ij(1, 0), C(4) * X().pow(3));
  EXPECT_EQ(cs.minor_ij(0, 1), C(2) * Y());
  EXPECT_EQ(cs.minor_ij(1, 1), C(2) * X());
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(cs.minor_ij(i, j).degree(), Degree(c.s_j[j]));
}

TEST(OrbitSeparation, Examples) {
  auto c = cmap<Rational>("B2");
  Vec<Rational> x{Rational(1), Rational(2)};
  auto r = orbit_separation_check(c, x, {Rational(-2), Rational(1)});
  EXPECT_TRUE(r.same_p_value && r.same_orbit);
  r = orbit_separation_check(c, x, {Rational(1), Rational(3)});
  EXPECT_FALSE(r.same_p_value || r.same_orbit);
  r = orbit_separation_check(c, x, x);
  EXPECT_TRUE(r.same_p_value && r.same_orbit);
}

TEST(WeightedOrders, Examples) {
  auto c = cmap<Rational>("B2");
  EXPECT_EQ(weighted_derivative_orders(c, {1, 0}), 2);
  EXPECT_EQ(weighted_derivative_orders(c, {0, 1}), 4);
  EXPECT_EQ(weighted_derivative_orders(cmap<Sqrt5Field>("H3"), {1, 1, 1}), 18);
}

// Randomised round trip, gradient consistency and chain rule on small groups.
template <Field F>
void round_trip_suite(const char* name, int cases, int max_degree) {
  SCOPED_TRACE(name);
  auto c = cmap<F>(name);
  CramerSystem<F> cs(c);
  for (int t = 0; t < cases; ++t) {
    Rng rng = case_rng(11, static_cast<std::uint64_t>(t));
    Poly<F> f = random_invariant(*c.group, rng, max_degree);
    ASSERT_TRUE(is_invariant(c, f));
    auto rw = rewrite_invariant(c, f);
    EXPECT_EQ(compose(rw.F_poly, c.p), f);
    EXPECT_LE(rw.weighted_degree, f.degree().value());
    for (const auto& [m, coef] : rw.F_poly.terms()) {
      int w = 0;
      for (std::size_t i = 0; i < c.n(); ++i) w += m[i] * c.k[i];
      EXPECT_LE(w, f.degree().value());
    }
    if (!rw.F_poly.is_zero()) {
      EXPECT_LE(rw.F_poly.degree_in(c.n() - 1).value(), f.degree().value() / c.h);
    }
    auto g = cs.solve(f);
    for (std::size_t j = 0; j < c.n(); ++j) {
      EXPECT_EQ(g[j], compose(differentiate(rw.F_poly, j), c.p));
      EXPECT_TRUE(is_invariant(c, g[j]));
    }
    for (std::size_t i = 0; i < c.n(); ++i) {
      Poly<F> acc(c.n());
      for (std::size_t j = 0; j < c.n(); ++j) acc += differentiate(c.p[j], i) * g[j];
      EXPECT_EQ(acc, differentiate(f, i));
    }
  }
}

TEST(Properties, RoundTripAndGradient) {
  round_trip_suite<Rational>("A1", 10, 20);
  round_trip_suite<Rational>("A2", 8, 10);
  round_trip_suite<Rational>("B2", 8, 10);
  round_trip_suite<Rational>("B3", 5, 8);
  round_trip_suite<Sqrt3Field>("I2(6)", 5, 12);
  round_trip_suite<Sqrt5Field>("H3", 3, 10);
}

TEST(Properties, OrbitSeparationRandom) {
  auto c = cmap<Rational>("A3");
  for (int t = 0; t < 40; ++t) {
    Rng rng = case_rng(5, static_cast<std::uint64_t>(t));
    auto x = random_point<Rational>(rng, 3);
    Vec<Rational> y;
    if (t % 2 == 0) {
      const auto& el = c.group->elements();
      y = el[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(el.size()) - 1))].apply(x);
    } else {
      y = random_point<Rational>(rng, 3);
    }
    auto r = orbit_separation_check(c, x, y);
    EXPECT_EQ(r.same_p_value, r.same_orbit);
  }
}
