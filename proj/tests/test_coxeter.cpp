#include <gtest/gtest.h>

#include "chev/coxeter_graph.hpp"
#include "chev/io.hpp"
#include "chev/random.hpp"

using namespace chev;

namespace {

template <Field F>
GroupPtr<F> grp(const char* s) {
  return build_group<F>(CoxeterTypeSpec::parse(s));
}

std::vector<std::size_t> all_ids(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

TEST(Spec, Parse) {
  EXPECT_EQ(CoxeterTypeSpec::parse("a3").str(), "A3");
  EXPECT_EQ(CoxeterTypeSpec::parse("I2(7)").dihedral_order, 7);
  EXPECT_EQ(CoxeterTypeSpec::parse("h3").family, Family::H3);
  EXPECT_THROW(CoxeterTypeSpec::parse("D2"), UnsupportedRank);
  EXPECT_THROW(CoxeterTypeSpec::parse("D1"), UnsupportedRank);
  EXPECT_THROW(CoxeterTypeSpec::parse("H4"), UnsupportedRank);
  EXPECT_THROW(CoxeterTypeSpec::parse("I2(2)"), UnsupportedRank);
  EXPECT_THROW(CoxeterTypeSpec::parse("E6"), UnsupportedFamily);
  EXPECT_THROW(CoxeterTypeSpec::parse("Q3"), ParseError);
  EXPECT_THROW(CoxeterTypeSpec::parse("A"), ParseError);
  EXPECT_THROW(CoxeterTypeSpec::parse("I2(x)"), ParseError);
}

TEST(Spec, Degrees) {
  EXPECT_EQ(CoxeterTypeSpec::parse("D4").degrees(), (std::vector<int>{2, 4, 4, 6}));
  EXPECT_EQ(CoxeterTypeSpec::parse("H3").order(), 120);
  EXPECT_EQ(CoxeterTypeSpec::parse("B4").order(), 384);
  EXPECT_EQ(CoxeterTypeSpec::parse("A5").order(), 720);
}

TEST(Build, B2Hyperplanes) {
  auto g = grp<Rational>("B2");
  ASSERT_EQ(g->reflection_count(), 4u);
  std::vector<Vec<Rational>> want{{1, 0}, {0, 1}, {1, -1}, {1, 1}};
  for (const auto& f : want) EXPECT_TRUE(g->find_hyperplane(f).has_value()) << f[0] << "," << f[1];
}

TEST(Build, A1) {
  auto g = grp<Rational>("A1");
  ASSERT_EQ(g->reflection_count(), 1u);
  EXPECT_EQ(g->order(), 2u);
  EXPECT_EQ(g->reflections()[0].matrix(0, 0), Rational(-1));
}

TEST(Build, H3) {
  auto g = grp<Sqrt5Field>("H3");
  EXPECT_EQ(g->reflection_count(), 15u);
  EXPECT_EQ(g->order(), 120u);
  EXPECT_EQ(g->reflections_among_elements(), 15u);
  EXPECT_THROW(grp<Rational>("H3"), UnsupportedFieldExact);
}

TEST(Build, ExactDihedralSupport) {
  EXPECT_THROW(grp<Rational>("I2(5)"), UnsupportedFieldExact);
  EXPECT_THROW(grp<Sqrt3Field>("I2(5)"), UnsupportedFieldExact);
  EXPECT_EQ(grp<Sqrt3Field>("I2(6)")->order(), 12u);
  EXPECT_EQ(grp<Sqrt3Field>("I2(3)")->order(), 6u);
  EXPECT_EQ(grp<Rational>("I2(4)")->order(), 8u);
  EXPECT_EQ(grp<double>("I2(5)")->order(), 10u);
  EXPECT_EQ(grp<double>("I2(7)")->order(), 14u);
}

TEST(Enumerate, Counts) {
  EXPECT_EQ(grp<Rational>("A2")->order(), 6u);
  EXPECT_EQ(grp<Rational>("B3")->order(), 48u);
  EXPECT_EQ(grp<Rational>("D4")->order(), 192u);
  EXPECT_EQ(grp<Rational>("B4")->order(), 384u);
  EXPECT_EQ(grp<Rational>("A5")->order(), 720u);
}

TEST(Enumerate, Cap) {
  auto g = build_group<Rational>(CoxeterTypeSpec::parse("B4"), 100);
  EXPECT_THROW(g->elements(), GroupTooLarge);
}

TEST(Involutions, Counts) {
  EXPECT_EQ(grp<Rational>("A1")->involutions().size(), 2u);
  EXPECT_EQ(grp<Rational>("A2")->involutions().size(), 4u);
  // oracle: the eight signed 2x2 permutation matrices, squared by hand
  std::size_t b2_oracle = 0;
  for (int perm = 0; perm < 2; ++perm)
    for (int s0 : {1, -1})
      for (int s1 : {1, -1}) {
        Matrix<Rational> m(2, 2);
        m(0, perm) = Rational(s0);
        m(1, 1 - perm) = Rational(s1);
        if ((m * m).is_identity()) ++b2_oracle;
      }
  EXPECT_EQ(b2_oracle, 6u);
  EXPECT_EQ(grp<Rational>("B2")->involutions().size(), b2_oracle);
  for (const auto& w : grp<Rational>("B3")->involutions()) EXPECT_TRUE((w * w).is_identity());
}

TEST(Orbit, Examples) {
  auto a1 = grp<Rational>("A1");
  EXPECT_EQ(a1->orbit({Rational(3)}).size(), 2u);
  auto b2 = grp<Rational>("B2");
  auto o = b2->orbit({Rational(1), Rational(2)});
  EXPECT_EQ(o.size(), 8u);
  for (const auto& p : o) {
    EXPECT_EQ(p[0] * p[0] + p[1] * p[1], Rational(5));
  }
  EXPECT_EQ(b2->orbit({Rational(1), Rational(1)}).size(), 4u);
  EXPECT_EQ(b2->stabilizer_order({Rational(1), Rational(1)}), 2u);
}

// Per-group structural properties.
template <Field F>
void check_group_properties(const char* name) {
  SCOPED_TRACE(name);
  auto g = grp<F>(name);
  const auto& spec = g->spec();
  EXPECT_EQ(static_cast<long>(g->order()), spec.order());
  EXPECT_EQ(static_cast<int>(g->reflection_count()), spec.reflection_count());
  EXPECT_EQ(g->reflections_among_elements(), g->reflection_count());
  for (const auto& w : g->elements()) EXPECT_TRUE(g->is_orthogonal(w));
  for (const auto& r : g->reflections()) {
    EXPECT_TRUE((r.matrix * r.matrix).is_identity());
    EXPECT_TRUE(field_traits<F>::near(r.form[std::find_if(r.form.begin(), r.form.end(), [](const F& x) {
                                                return !field_traits<F>::is_zero(x);
                                              }) - r.form.begin()],
                                      field_traits<F>::one()));
  }
  auto ids = all_ids(g->reflection_count());
  auto types = classify(coxeter_graph(*g, ids));
  EXPECT_TRUE(same_types(types, {spec})) << types_str(types);

  Rng rng = case_rng(1, 0);
  for (int t = 0; t < 5; ++t) {
    auto x = random_point<F>(rng, g->dim());
    EXPECT_EQ(g->orbit(x).size() * g->stabilizer_order(x), g->order());
  }
}

TEST(Properties, AllGroups) {
  for (const char* n : {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "D5", "I2(4)"}) check_group_properties<Rational>(n);
  check_group_properties<Sqrt3Field>("I2(3)");
  check_group_properties<Sqrt3Field>("I2(6)");
  check_group_properties<Sqrt5Field>("H3");
  for (const char* n : {"I2(5)", "I2(7)", "I2(8)", "B3", "A3"}) check_group_properties<double>(n);
}

TEST(Graph, Examples) {
  auto b2 = grp<Rational>("B2");
  auto x0 = *b2->find_hyperplane({Rational(1), Rational(0)});
  auto y0 = *b2->find_hyperplane({Rational(0), Rational(1)});
  std::vector<std::size_t> axes{x0, y0};
  auto g = coxeter_graph(*b2, axes);
  EXPECT_EQ(g.size(), 2u);
  EXPECT_EQ(g.labels[0][1], 2);
  EXPECT_EQ(types_str(classify(g)), "A1xA1");

  auto full = coxeter_graph(*b2, all_ids(4));
  ASSERT_EQ(full.size(), 2u);
  EXPECT_EQ(full.labels[0][1], 4);
  EXPECT_EQ(types_str(classify(full)), "B2");

  std::vector<std::size_t> one{x0};
  EXPECT_EQ(types_str(classify(coxeter_graph(*b2, one))), "A1");
}

TEST(Graph, SaturationOfTwoDiagonalMirrorsInB2) {
  auto b2 = grp<Rational>("B2");
  auto d1 = *b2->find_hyperplane({Rational(1), Rational(-1)});
  auto d2 = *b2->find_hyperplane({Rational(1), Rational(1)});
  std::vector<std::size_t> diag{d1, d2};
  EXPECT_EQ(saturate(*b2, diag).size(), 2u);
  auto x0 = *b2->find_hyperplane({Rational(1), Rational(0)});
  std::vector<std::size_t> mixed{x0, d1};
  EXPECT_EQ(saturate(*b2, mixed).size(), 4u);
}

TEST(Graph, H3Parabolic) {
  auto h3 = grp<Sqrt5Field>("H3");
  // mirrors through a five-fold axis generate I2(5)
  Vec<Sqrt5Field> axis = icosahedral_axes<Sqrt5Field>()[0];
  std::vector<std::size_t> ids;
  for (const auto& r : h3->reflections())
    if (dot(r.form, axis).is_zero()) ids.push_back(r.hyperplane_id);
  EXPECT_EQ(ids.size(), 5u);
  EXPECT_EQ(types_str(classify(coxeter_graph(*h3, ids))), "I2(5)");
}

TEST(Json, GroupSerialization) {
  auto g = grp<Sqrt5Field>("H3");
  auto j = group_to_json(*g);
  EXPECT_EQ(j["spec"], "H3");
  EXPECT_EQ(j["reflections"].size(), 15u);
  EXPECT_EQ(j["reflections"][0]["lambda"][0]["d"], 5);
}
