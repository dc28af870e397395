#include <gtest/gtest.h>

#include <set>

#include "chev/strata.hpp"

using namespace chev;

namespace {

template <Field F>
LatticeReport<F> lattice(const char* s) {
  return intersection_lattice(build_group<F>(CoxeterTypeSpec::parse(s)));
}

template <Field F>
const StratumData<F>& find_stratum(const LatticeReport<F>& l, const std::vector<Vec<F>>& forms) {
  std::vector<std::size_t> ids;
  for (const auto& f : forms) ids.push_back(*l.group->find_hyperplane(f));
  auto flat = Flat<F>::from_forms(forms, l.group->dim());
  for (const auto& st : l.strata)
    if (st.codim == flat.codim()) {
      bool all = true;
      for (auto id : ids) all = all && std::binary_search(st.hyperplanes.begin(), st.hyperplanes.end(), id);
      if (all) return st;
    }
  throw std::runtime_error("stratum not found");
}

// Oracle: every subset of mirrors, keyed by the set of mirrors vanishing on
// the common zero set (rank test: adding the form does not raise the rank).
template <Field F>
std::size_t brute_force_flat_count(const ReflectionGroup<F>& g) {
  std::size_t m = g.reflection_count();
  std::set<std::vector<std::size_t>> keys;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<Vec<F>> forms;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) forms.push_back(g.reflections()[i].form);
    std::size_t r = rank_of_vectors(forms, g.dim());
    std::vector<std::size_t> key;
    for (std::size_t i = 0; i < m; ++i) {
      auto more = forms;
      more.push_back(g.reflections()[i].form);
      if (rank_of_vectors(more, g.dim()) == r) key.push_back(i);
    }
    keys.insert(key);
  }
  return keys.size();
}

}  // namespace

TEST(Lattice, Counts) {
  EXPECT_EQ(lattice<Rational>("A1").strata.size(), 2u);
  EXPECT_EQ(lattice<Rational>("B2").strata.size(), 6u);
  EXPECT_EQ(lattice<Rational>("A2").strata.size(), 5u);
  // braid arrangement flats are set partitions: Bell(4) = 15
  EXPECT_EQ(lattice<Rational>("A3").strata.size(), 15u);
  auto b3 = build_group<Rational>(CoxeterTypeSpec::parse("B3"));
  EXPECT_EQ(intersection_lattice(b3).strata.size(), brute_force_flat_count(*b3));
  auto d4 = build_group<Rational>(CoxeterTypeSpec::parse("D4"));
  EXPECT_EQ(intersection_lattice(d4).strata.size(), brute_force_flat_count(*d4));
}

TEST(Lattice, A3Types) {
  auto l = lattice<Rational>("A3");
  std::map<std::size_t, std::multiset<std::string>> by_codim;
  for (const auto& st : l.strata) by_codim[st.codim].insert(types_str(st.isotropy));
  EXPECT_EQ(by_codim[0], (std::multiset<std::string>{"1"}));
  EXPECT_EQ(by_codim[1].size(), 6u);
  EXPECT_EQ(by_codim[1].count("A1"), 6u);
  EXPECT_EQ(by_codim[2].count("A2"), 4u);
  EXPECT_EQ(by_codim[2].count("A1xA1"), 3u);
  EXPECT_EQ(by_codim[3], (std::multiset<std::string>{"A3"}));
}

TEST(Lattice, EndsAreWholeSpaceAndOrigin) {
  auto l = lattice<Sqrt5Field>("H3");
  EXPECT_EQ(l.strata.front().codim, 0u);
  EXPECT_EQ(l.strata.back().codim, 3u);
  EXPECT_EQ(l.strata.back().hyperplanes.size(), 15u);
  EXPECT_EQ(l.strata.back().d_z, 15);
  EXPECT_EQ(l.strata.back().s_z, 6);
  EXPECT_EQ(l.strata.back().h_z, 10);
}

TEST(Lattice, TooLarge) {
  auto b6 = build_group<Rational>(CoxeterTypeSpec::parse("B6"));
  EXPECT_THROW(intersection_lattice(b6), LatticeTooLarge);
}

TEST(Isotropy, B2Examples) {
  auto l = lattice<Rational>("B2");
  const auto& diag = find_stratum(l, {{Rational(1), Rational(-1)}});
  EXPECT_EQ(types_str(diag.isotropy), "A1");
  EXPECT_EQ(diag.d_z, 1);
  EXPECT_EQ(diag.s_z, 0);
  EXPECT_EQ(diag.h_z, 2);
  const auto& origin = l.strata.back();
  EXPECT_EQ(types_str(origin.isotropy), "B2");
  EXPECT_EQ(origin.d_z, 4);
  EXPECT_EQ(origin.s_z, 1);
  EXPECT_EQ(origin.h_z, 4);
  const auto& whole = l.strata.front();
  EXPECT_TRUE(whole.isotropy.empty());
  EXPECT_EQ(whole.d_z, 0);
  EXPECT_EQ(whole.s_z, 0);
  EXPECT_EQ(whole.h_z, 1);
}

TEST(Isotropy, SaturationAndOriginMatchesChevalley) {
  for (const char* name : {"A3", "B3", "D4", "B4"}) {
    SCOPED_TRACE(name);
    auto g = build_group<Rational>(CoxeterTypeSpec::parse(name));
    auto l = intersection_lattice(g);
    for (const auto& st : l.strata) {
      EXPECT_EQ(saturate(*g, st.hyperplanes), st.hyperplanes);
      EXPECT_EQ(st.flat.dim(), g->dim() - st.codim);
      EXPECT_EQ(st.h_z, 1 + st.d_z - st.s_z);
    }
    auto c = basic_invariants(g);
    const auto& origin = l.strata.back();
    EXPECT_EQ(origin.d_z, c.d);
    EXPECT_EQ(origin.s_z, c.s);
    EXPECT_EQ(origin.h_z, c.h);
  }
}

TEST(Flatness, B2) {
  auto c = basic_invariants<Rational>(CoxeterTypeSpec::parse("B2"));
  auto l = intersection_lattice(c.group);
  auto rep = minor_flatness_check(c, l);
  EXPECT_TRUE(rep.violations.empty());
  std::size_t origin = l.strata.size() - 1;
  std::multiset<long> orders;
  for (const auto& e : rep.entries)
    if (e.stratum == origin) orders.insert(e.order.value());
  EXPECT_EQ(orders, (std::multiset<long>{1, 1, 3, 3}));
}

TEST(Flatness, A3CodimTwoA2) {
  auto c = basic_invariants<Rational>(CoxeterTypeSpec::parse("A3"));
  auto l = intersection_lattice(c.group);
  auto rep = minor_flatness_check(c, l);
  EXPECT_TRUE(rep.violations.empty());
  bool seen = false;
  for (std::size_t t = 0; t < l.strata.size(); ++t) {
    if (types_str(l.strata[t].isotropy) != "A2") continue;
    seen = true;
    EXPECT_EQ(l.strata[t].s_z, 1);
    for (const auto& e : rep.entries) {
      if (e.stratum != t) continue;
      EXPECT_GE(e.order, Order(1));
    }
  }
  EXPECT_TRUE(seen);
}

TEST(Flatness, ViolationsAreReported) {
  auto c = basic_invariants<Rational>(CoxeterTypeSpec::parse("B2"));
  auto l = intersection_lattice(c.group);
  l.strata.back().s_z = 2;  // demand more than the minors 2x, 2y provide
  auto rep = minor_flatness_check(c, l);
  EXPECT_EQ(rep.violations.size(), 2u);
  EXPECT_THROW(minor_flatness_check(c, l, true), FlatnessViolation);
}

TEST(Monotonicity, Groups) {
  for (const char* name : {"B2", "A3", "B3", "D4"}) {
    auto l = lattice<Rational>(name);
    auto rep = monotonicity_check(l);
    EXPECT_TRUE(rep.violations.empty()) << name;
    EXPECT_GT(rep.pairs_checked, 0u);
  }
  auto l = lattice<Rational>("B2");
  // whole space precedes everything
  std::size_t from_whole = 0;
  for (auto [a, b] : l.closure) from_whole += (a == 0);
  EXPECT_EQ(from_whole, l.strata.size() - 1);
}
