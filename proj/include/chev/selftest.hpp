#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chev/any_group.hpp"
#include "chev/io.hpp"
#include "chev/strata.hpp"
#include "chev/whitney.hpp"

namespace chev {

struct SelftestCheck {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestReport {
  std::uint64_t seed = 0;
  std::vector<SelftestCheck> checks;

  void add(const std::string& suite, const std::string& name, bool ok, const std::string& detail = "") {
    checks.push_back({suite, name, ok, detail});
  }
  std::vector<std::string> violations() const {
    std::vector<std::string> v;
    for (const auto& c : checks)
      if (!c.passed) v.push_back(c.suite + "/" + c.name + (c.detail.empty() ? "" : ": " + c.detail));
    return v;
  }
  json to_json() const {
    json arr = json::array();
    for (const auto& c : checks) arr.push_back(json{{"suite", c.suite}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return arr;
  }
};

// One seeded instance of the product lemma on a stratum of the group: Q is a
// Cramer minor (flat of order s_z there), A a random polynomial carried as an
// r-jet. Bases are sampled on the flat, rays are small integer vectors.
template <Field F>
Lemma1Report lemma1_seeded_instance(const LatticeReport<F>& lattice, const CramerSystem<F>& cs, Rng& rng) {
  const auto& g = *lattice.group;
  const std::size_t n = g.dim();
  std::vector<std::size_t> candidates;
  for (std::size_t t = 0; t < lattice.strata.size(); ++t)
    if (lattice.strata[t].codim > 0) candidates.push_back(t);
  const auto& st = lattice.strata[candidates[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(candidates.size()) - 1))]];
  std::size_t i = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(n) - 1));
  std::size_t j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(n) - 1));
  const Poly<F>& Q = cs.minor_ij(i, j);
  Poly<F> A = random_poly<F>(rng, n, 4, 5);
  int r = static_cast<int>(uniform_int(rng, 0, 2));
  std::vector<Vec<F>> bases{Vec<F>(n, field_traits<F>::zero())};
  for (int b = 0; b < 2; ++b) {
    Vec<F> z(n, field_traits<F>::zero());
    for (const auto& d : st.flat.directions()) {
      F c = from_int<F>(uniform_int(rng, -3, 3));
      for (std::size_t a = 0; a < n; ++a) z[a] = z[a] + c * d[a];
    }
    bases.push_back(z);
  }
  std::vector<Vec<F>> rays;
  for (int v = 0; v < 3; ++v) {
    Vec<F> dir(n);
    for (auto& x : dir) x = from_int<F>(uniform_int(rng, -3, 3));
    dir[static_cast<std::size_t>(v) % n] = dir[static_cast<std::size_t>(v) % n] + from_int<F>(7);
    rays.push_back(dir);
  }
  return lemma1_product_check(Q, A, st.flat, r, st.s_z, bases, rays);
}

namespace detail {

inline void selftest_algebra(SelftestReport& rep) {
  int failures = 0;
  std::string first;
  auto note = [&](bool ok, const std::string& what) {
    if (!ok && failures++ == 0) first = what;
  };
  for (int c = 0; c < 25; ++c) {
    auto rng = case_rng(rep.seed, 100 + c);
    std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    auto f = random_poly<Rational>(rng, n, 4, 5);
    auto g = random_poly<Rational>(rng, n, 3, 4);
    auto h = random_poly<Rational>(rng, n, 3, 4);
    std::string tag = "case " + std::to_string(c);
    note(f + g == g + f, tag + " addition commutes");
    note(f * g == g * f, tag + " multiplication commutes");
    note((f * g) * h == f * (g * h), tag + " multiplication associates");
    note(f * (g + h) == f * g + f * h, tag + " distributivity");
    if (!g.is_zero()) note(divide_exact(f * g, g) == f, tag + " exact division");
    note(differentiate(f * g, 0) == differentiate(f, 0) * g + f * differentiate(g, 0), tag + " product rule");
    std::vector<Poly<Rational>> vars;
    for (std::size_t i = 0; i < n; ++i) vars.push_back(Poly<Rational>::variable(n, i));
    note(compose(f, vars) == f, tag + " identity substitution");
    note(poly_from_json<Rational>(poly_to_json(f)) == f, tag + " JSON round trip");
  }
  for (int c = 0; c < 10; ++c) {
    auto rng = case_rng(rep.seed, 200 + c);
    auto f = random_poly<Sqrt5Field>(rng, 2, 3, 4) * Sqrt5Field(Rational(1), Rational(1, 2));
    auto g = random_poly<Sqrt5Field>(rng, 2, 3, 4);
    note((f + g) * (f - g) == f * f - g * g, "sqrt5 case " + std::to_string(c) + " difference of squares");
    if (!g.is_zero()) note(divide_exact(f * g, g) == f, "sqrt5 case " + std::to_string(c) + " exact division");
  }
  rep.add("algebra", "ring axioms and division", failures == 0, first);
}

inline void selftest_groups(SelftestReport& rep) {
  for (const char* name : {"A1", "A2", "A3", "B2", "B3", "D4", "I2(4)", "I2(6)", "H3", "I2(5)"}) {
    auto spec = CoxeterTypeSpec::parse(name);
    bool numeric = !field_supports<Rational>(spec) && !field_supports<Sqrt3Field>(spec) && !field_supports<Sqrt5Field>(spec);
    AnyMap any = make_map(spec, numeric ? Backend::Numeric : Backend::Exact);
    std::visit(
        [&](const auto& c) {
          const auto& g = *c.group;
          long prod = 1;
          for (int k : c.k) prod *= k;
          rep.add("groups", std::string(name) + " order equals product of degrees", static_cast<long>(g.order()) == prod,
                  std::to_string(g.order()) + " vs " + std::to_string(prod));
          int sum = 0;
          for (int k : c.k) sum += k - 1;
          rep.add("groups", std::string(name) + " reflections equal sum (k_i - 1)", c.d == sum,
                  std::to_string(c.d) + " vs " + std::to_string(sum));
          std::vector<std::size_t> all(g.reflection_count());
          for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
          auto types = classify(coxeter_graph(g, all, true));
          rep.add("groups", std::string(name) + " classifies as itself", same_types(types, {spec}), types_str(types));
          bool orth = true;
          for (const auto& w : g.elements()) orth = orth && g.is_orthogonal(w);
          rep.add("groups", std::string(name) + " elements preserve the invariant form", orth);
        },
        any);
  }
  auto b2 = build_group<Rational>(CoxeterTypeSpec::parse("B2"));
  rep.add("groups", "B2 involutions including identity", b2->involutions().size() == 6,
          std::to_string(b2->involutions().size()));
  auto c = basic_invariants(b2);
  bool ok = true;
  for (int t = 0; t < 20; ++t) {
    auto rng = case_rng(rep.seed, 300 + t);
    auto x = random_point<Rational>(rng, 2);
    Vec<Rational> y = t % 2 ? b2->elements()[static_cast<std::size_t>(uniform_int(rng, 0, 7))].apply(x) : random_point<Rational>(rng, 2);
    auto s = orbit_separation_check(c, x, y);
    ok = ok && s.same_p_value == s.same_orbit;
  }
  rep.add("groups", "B2 invariants separate orbits", ok);
}

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

inline void selftest_strata(SelftestReport& rep) {
  for (const char* name : {"B2", "A3"}) {
    auto c = basic_invariants<Rational>(CoxeterTypeSpec::parse(name));
    auto lat = intersection_lattice(c.group);
    std::size_t brute = brute_force_flat_count(*c.group);
    rep.add("strata", std::string(name) + " lattice size matches brute force", lat.strata.size() == brute,
            std::to_string(lat.strata.size()) + " vs " + std::to_string(brute));
    auto fl = minor_flatness_check(c, lat);
    rep.add("strata", std::string(name) + " minors are flat to order s_z", fl.violations.empty(),
            fl.violations.empty() ? "" : fl.violations.front());
    auto mono = monotonicity_check(lat);
    rep.add("strata", std::string(name) + " h_z nondecreasing along closures", mono.violations.empty(),
            mono.violations.empty() ? "" : mono.violations.front());
    if (std::string(name) == "A3") {
      std::map<std::string, int> types;
      for (const auto& st : lat.strata) ++types[types_str(st.isotropy)];
      bool ok = lat.strata.size() == 15 && types["1"] == 1 && types["A1"] == 6 && types["A2"] == 4 &&
                types["A1xA1"] == 3 && types["A3"] == 1;
      rep.add("strata", "A3 isotropy types 1, 6 A1, 4 A2, 3 A1xA1, A3", ok);
    } else {
      rep.add("strata", "B2 has 6 strata", lat.strata.size() == 6, std::to_string(lat.strata.size()));
    }
  }
}

inline void selftest_whitney(SelftestReport& rep) {
  bool exact = true;
  for (int c = 0; c < 10; ++c) {
    auto rng = case_rng(rep.seed, 400 + c);
    std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    int m = static_cast<int>(uniform_int(rng, 0, 3));
    auto f = random_poly<Rational>(rng, n, m, 5);
    std::vector<Vec<Rational>> pts;
    for (int i = 0; i < 3; ++i) pts.push_back(random_point<Rational>(rng, n));
    auto A = taylor_field(f, pts, m);
    for (std::size_t x = 0; x < pts.size(); ++x)
      for (std::size_t y = 0; y < pts.size(); ++y)
        for (const auto& q : A.indices()) exact = exact && remainder(A, x, y, q).is_zero();
  }
  rep.add("whitney", "Taylor fields have zero remainders", exact);

  auto x2 = Poly<Rational>::term(1, Monomial{2}, Rational(1));
  auto A = taylor_field(x2, {Vec<Rational>{Rational(-1)}, Vec<Rational>{Rational(0)}, Vec<Rational>{Rational(1)}}, 1);
  double sn = seminorm(A, 1);
  rep.add("whitney", "seminorm of Taylor_1 x^2 on {-1, 0, 1} is 6", sn == 6.0, std::to_string(sn));

  std::vector<Vec<double>> pts{{0.0}};
  for (double t : log_grid(1e-3, 1e-1, 25)) pts.push_back({t});
  auto B = taylor_field(to_numeric(x2), pts, 1);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 1; i < pts.size(); ++i) pairs.emplace_back(0, i);
  double slope = regularity_exponent(B, pairs, Monomial{0}).slope;
  rep.add("whitney", "remainder of Taylor_1 x^2 scales as t^2", std::abs(slope - 2.0) < 0.02, std::to_string(slope));

  auto a1 = counterexample_probe(basic_invariants<Rational>(CoxeterTypeSpec::parse("A1")), 1, 0.2);
  rep.add("whitney", "A1 probe verdict", a1.verdict == "C2 not C3" && a1.slope_law, a1.verdict);
  auto b2 = counterexample_probe(basic_invariants<Rational>(CoxeterTypeSpec::parse("B2")), 1, 0.2);
  rep.add("whitney", "B2 probe verdict", b2.verdict == "C4 not C5" && b2.slope_law, b2.verdict);

  auto c = basic_invariants<Rational>(CoxeterTypeSpec::parse("B2"));
  auto lat = intersection_lattice(c.group);
  CramerSystem<Rational> cs(c);
  bool ok = true;
  std::string detail;
  for (int t = 0; t < 5; ++t) {
    auto rng = case_rng(rep.seed, 500 + t);
    auto r = lemma1_seeded_instance(lat, cs, rng);
    if (!r.passed() && ok) detail = r.violations.front();
    ok = ok && r.passed();
  }
  rep.add("whitney", "product lemma orders on B2 strata", ok, detail);
}

}  // namespace detail

// suite is one of algebra, groups, strata, whitney, all.
inline SelftestReport run_selftest(const std::string& suite, std::uint64_t seed) {
  SelftestReport rep;
  rep.seed = seed;
  bool all = suite == "all";
  if (!all && suite != "algebra" && suite != "groups" && suite != "strata" && suite != "whitney")
    throw InvalidArgument("unknown selftest suite '" + suite + "'");
  auto guarded = [&](const std::string& name, auto&& fn) {
    try {
      fn(rep);
    } catch (const std::exception& e) {
      rep.add(name, "suite raised", false, e.what());
    }
  };
  if (all || suite == "algebra") guarded("algebra", detail::selftest_algebra);
  if (all || suite == "groups") guarded("groups", detail::selftest_groups);
  if (all || suite == "strata") guarded("strata", detail::selftest_strata);
  if (all || suite == "whitney") guarded("whitney", detail::selftest_whitney);
  return rep;
}

}  // namespace chev
