// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "chev/chev.hpp"

using namespace chev;

namespace {

constexpr std::uint64_t kSeed = 20240611;

const std::vector<std::string> kGroups{"A2", "A3", "B2", "B3", "B4", "D4", "I2(4)", "I2(6)", "H3"};

struct Criterion {
  bool ok = true;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    ok = false;
    if (notes.size() < 8) notes.push_back(why);
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

// Runs f over the exact map of spec.
template <class Fn>
void with_exact_map(const std::string& spec, Fn&& f) {
  AnyMap any = make_map(CoxeterTypeSpec::parse(spec), Backend::Exact);
  std::visit(
      [&](const auto& c) {
        using F = typename std::decay_t<decltype(c)>::Coef;
        if constexpr (is_exact_v<F>) f(c);
      },
      any);
}

Criterion degree_bookkeeping() {
  Criterion cr;
  for (const auto& name : kGroups)
    with_exact_map(name, [&](const auto& c) {
      int sum = 0;
      for (int k : c.k) sum += k - 1;
      cr.expect(c.d == sum, name + ": d = " + std::to_string(c.d) + ", sum (k_i - 1) = " + std::to_string(sum));
      cr.expect(c.h == 1 + c.d - c.s, name + ": h != 1 + d - s");
      cr.expect(c.h == c.group->spec().coxeter_number(), name + ": h differs from the Coxeter number");
      if (name == "H3")
        cr.expect(c.d == 15 && c.s == 6 && c.h == 10,
                  "H3: (d, s, h) = (" + std::to_string(c.d) + ", " + std::to_string(c.s) + ", " + std::to_string(c.h) + ")");
    });
  return cr;
}

Criterion jacobian_factorization_check() {
  Criterion cr;
  for (const auto& name : kGroups)
    with_exact_map(name, [&](const auto& c) {
      using F = typename std::decay_t<decltype(c)>::Coef;
      try {
        auto fac = exact_factorization(c);
        cr.expect(!field_traits<F>::is_zero(fac.c), name + ": zero constant");
        cr.expect(fac.factors.size() == c.group->reflection_count(), name + ": factor count");
        if (name == "B2") {
          cr.expect(fac.c == from_int<F>(-8), "B2: c = " + field_traits<F>::str(fac.c));
          std::vector<std::string> got;
          for (const auto& f : fac.factors) got.push_back(Poly<F>::linear(std::span<const F>(f)).to_string(std::vector<std::string>{"x", "y"}));
          std::sort(got.begin(), got.end());
          std::vector<std::string> want{"x", "x + y", "x - y", "y"};
          cr.expect(got == want, "B2: unexpected factors");
        }
      } catch (const Error& e) {
        cr.fail(name + ": " + e.what());
      }
    });
  for (const char* name : {"I2(5)", "I2(7)"}) {
    auto c = basic_invariants(build_group<double>(CoxeterTypeSpec::parse(name)));
    auto rep = std::get<PointwiseJacobianReport>(jacobian_factorization(c, kSeed, 100));
    cr.expect(rep.points == 100 && rep.max_abs_error <= 1e-9 && std::abs(rep.c) > kNumericZero,
              std::string(name) + ": max error " + std::to_string(rep.max_abs_error));
  }
  return cr;
}

std::vector<std::string> suite_groups() {
  std::vector<std::string> g{"A1"};
  g.insert(g.end(), kGroups.begin(), kGroups.end());
  return g;
}

// Criteria 3 and 4 share the seeded invariants.
void rewrite_and_gradient(Criterion& rewrite, Criterion& gradient) {
  std::uint64_t gi = 0;
  for (const auto& name : suite_groups()) {
    ++gi;
    with_exact_map(name, [&](const auto& c) {
      using F = typename std::decay_t<decltype(c)>::Coef;
      const std::size_t n = c.n();
      CramerSystem<F> cs(c);
      const int max_degree = name == "A1" ? 20 : 12;
      for (std::uint64_t t = 0; t < 50; ++t) {
        Rng rng = case_rng(kSeed, gi * 1000 + t);
        Poly<F> f = random_invariant(*c.group, rng, max_degree);
        std::string tag = name + " case " + std::to_string(t);
        RewriteResult<F> res;
        try {
          res = rewrite_invariant(c, f);
        } catch (const Error& e) {
          rewrite.fail(tag + ": " + e.what());
          gradient.fail(tag + ": no rewrite");
          continue;
        }
        rewrite.expect(compose(res.F_poly, c.p) == f, tag + ": F(p) != f");
        long bound = f.degree().value() / c.h;
        rewrite.expect(!(res.F_poly.degree_in(n - 1) > Degree(bound)), tag + ": deg in u_n above floor(deg f / h)");

        auto rhs = cs.rhs(f);
        for (std::size_t j = 0; j < n; ++j)
          for (const auto& r : c.group->reflections()) {
            Poly<F> l = Poly<F>::linear(std::span<const F>(r.form));
            try {
              divide_exact(rhs[j], l);
            } catch (const NotDivisibleError&) {
              gradient.fail(tag + ": RHS_" + std::to_string(j + 1) + " not divisible by " + l.to_string());
            }
          }
        try {
          auto g = cs.solve(f);
          for (std::size_t j = 0; j < n; ++j)
            gradient.expect(g[j] == compose(differentiate(res.F_poly, j), c.p),
                            tag + ": g_" + std::to_string(j + 1) + " != dF/du_" + std::to_string(j + 1) + " o p");
        } catch (const Error& e) {
          gradient.fail(tag + ": " + e.what());
        }
      }
    });
  }
}

Criterion stratification() {
  Criterion cr;
  for (const char* name : {"B2", "A3", "B3", "D4"})
    with_exact_map(name, [&](const auto& c) {
      auto lat = intersection_lattice(c.group);
      auto flat = minor_flatness_check(c, lat);
      auto mono = monotonicity_check(lat);
      cr.expect(!flat.entries.empty(), std::string(name) + ": no flatness entries checked");
      for (const auto& v : flat.violations) cr.fail(std::string(name) + ": " + v);
      for (const auto& v : mono.violations) cr.fail(std::string(name) + ": " + v);
    });
  return cr;
}

Criterion counterexample() {
  Criterion cr;
  auto a1 = counterexample_probe(basic_invariants<Rational>(CoxeterTypeSpec::parse("A1")), 1, 0.2);
  for (const auto& o : a1.orders)
    if (o.k <= 3)
      cr.expect(std::abs(o.slope - (2.4 - o.k)) <= 0.05, "A1 k=" + std::to_string(o.k) + " slope " + std::to_string(o.slope));
  cr.expect(a1.orders.size() >= 4, "A1: fewer than 4 orders probed");
  cr.expect(a1.verdict == "C2 not C3", "A1 verdict " + a1.verdict);
  auto b2 = counterexample_probe(basic_invariants<Rational>(CoxeterTypeSpec::parse("B2")), 1, 0.2);
  bool seen = false;
  for (const auto& o : b2.orders)
    if (o.k == 5) {
      seen = true;
      cr.expect(std::abs(o.slope + 0.2) <= 0.05, "B2 k=5 slope " + std::to_string(o.slope));
    }
  cr.expect(seen, "B2: order 5 not probed");
  cr.expect(b2.verdict == "C4 not C5", "B2 verdict " + b2.verdict);
  return cr;
}

Criterion whitney_machinery() {
  Criterion cr;
  // Taylor fields of polynomials of degree <= m are exact.
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng = case_rng(kSeed, 50000 + t);
    std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    int m = static_cast<int>(uniform_int(rng, 1, 4));
    Poly<Rational> f = random_poly<Rational>(rng, n, m, 6);
    std::vector<Vec<Rational>> pts;
    for (int i = 0; i < 5; ++i) pts.push_back(random_point<Rational>(rng, n));
    auto A = taylor_field(f, pts, m);
    for (std::size_t x = 0; x < pts.size(); ++x)
      for (std::size_t y = 0; y < pts.size(); ++y)
        for (const auto& q : A.indices())
          cr.expect(remainder(A, x, y, q) == 0, "Taylor case " + std::to_string(t) + " has a nonzero remainder");
  }
  // t^gamma fields: remainder exponent gamma - |q|.
  for (double gamma : {1.5, 2.5, 3.3, 4.7}) {
    int m = static_cast<int>(std::floor(gamma));
    std::vector<Vec<double>> pts{{0.0}};
    for (double t : log_grid(1e-3, 1e-1, 25)) pts.push_back({t});
    auto A = jet_from_derivatives<double>(1, m, pts, [&](const Vec<double>& x, const Monomial& k) {
      double a = std::abs(x[0]);
      return a == 0 ? 0.0 : falling(gamma, k[0]) * std::pow(a, gamma - k[0]);
    });
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 1; i < pts.size(); ++i) pairs.emplace_back(0, i);
    for (int q = 0; q <= m; ++q) {
      auto fit = regularity_exponent(A, pairs, Monomial{q});
      std::ostringstream msg;
      msg << "gamma " << gamma << " q " << q << ": slope " << fit.slope;
      cr.expect(std::abs(fit.slope - (gamma - q)) <= 0.02, msg.str());
    }
  }
  // Product lemma on seeded strata instances.
  std::uint64_t gi = 0;
  for (const auto& name : suite_groups()) {
    ++gi;
    with_exact_map(name, [&](const auto& c) {
      using F = typename std::decay_t<decltype(c)>::Coef;
      auto lat = intersection_lattice(c.group);
      CramerSystem<F> cs(c);
      for (std::uint64_t t = 0; t < 20; ++t) {
        Rng rng = case_rng(kSeed, 60000 + gi * 100 + t);
        std::string tag = name + " lemma case " + std::to_string(t);
        try {
          auto rep = lemma1_seeded_instance(lat, cs, rng);
          cr.expect(!rep.entries.empty(), tag + ": nothing checked");
          cr.expect(rep.passed(), tag + ": " + (rep.violations.empty() ? std::string("failed") : rep.violations.front()));
        } catch (const Error& e) {
          cr.fail(tag + ": " + e.what());
        }
      }
    });
  }
  return cr;
}

Criterion orbit_separation() {
  Criterion cr;
  std::uint64_t gi = 0;
  for (const auto& name : suite_groups()) {
    ++gi;
    with_exact_map(name, [&](const auto& c) {
      using F = typename std::decay_t<decltype(c)>::Coef;
      const auto& elems = c.group->elements();
      for (std::uint64_t t = 0; t < 200; ++t) {
        Rng rng = case_rng(kSeed, 70000 + gi * 1000 + t);
        Vec<F> x = random_point<F>(rng, c.n());
        Vec<F> y = t % 2 == 0 ? elems[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(elems.size()) - 1))].apply(x)
                              : random_point<F>(rng, c.n());
        auto r = orbit_separation_check(c, x, y);
        cr.expect(r.same_p_value == r.same_orbit, name + " pair " + std::to_string(t) + ": P equality and orbit equality disagree");
        if (t % 2 == 0) cr.expect(r.same_orbit, name + " pair " + std::to_string(t) + ": mapped pair not in one orbit");
      }
    });
  }
  return cr;
}

struct Timed {
  Criterion cr;
  double seconds = 0;
};

Timed timed(const std::function<Criterion()>& f) {
  auto start = std::chrono::steady_clock::now();
  Timed t;
  try {
    t.cr = f();
  } catch (const std::exception& e) {
    t.cr.fail(std::string("exception: ") + e.what());
  }
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return t;
}

}  // namespace

int main() {
  struct Row {
    int id;
    std::string title;
    double limit;  // seconds, 0 for none
    Timed result;
  };
  std::vector<Row> rows;
  rows.push_back({1, "degree bookkeeping", 10, timed(degree_bookkeeping)});
  rows.push_back({2, "Jacobian factorization", 60, timed(jacobian_factorization_check)});
  {
    Criterion rw, gr;
    auto start = std::chrono::steady_clock::now();
    try {
      rewrite_and_gradient(rw, gr);
    } catch (const std::exception& e) {
      rw.fail(std::string("exception: ") + e.what());
      gr.fail(std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rows.push_back({3, "rewrite round trip", 120, {rw, s}});
    rows.push_back({4, "gradient system consistency", 0, {gr, s}});
  }
  rows.push_back({5, "stratification", 0, timed(stratification)});
  rows.push_back({6, "counterexample exponents", 30, timed(counterexample)});
  rows.push_back({7, "Whitney machinery", 0, timed(whitney_machinery)});
  rows.push_back({8, "orbit separation", 0, timed(orbit_separation)});

  bool all = true;
  for (auto& r : rows) {
    if (r.limit > 0 && r.result.seconds > r.limit)
      r.result.cr.fail("runtime " + std::to_string(r.result.seconds) + " s over the " + std::to_string(r.limit) + " s limit");
    all = all && r.result.cr.ok;
    std::printf("%s criterion %d: %s (%.2f s)\n", r.result.cr.ok ? "PASS" : "FAIL", r.id, r.title.c_str(), r.result.seconds);
    for (const auto& n : r.result.cr.notes) std::printf("    %s\n", n.c_str());
  }
  return all ? 0 : 1;
}
