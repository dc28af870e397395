#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <variant>
#include <vector>

#include "chev/coxeter_graph.hpp"
#include "chev/poly_matrix.hpp"
#include "chev/random.hpp"

namespace chev {

struct InvariantOptions {
  // Make the top invariant a power sum sum_j L_j^h over an invariant set of
  // forms whose kernels meet only at 0. Changes I2(k) (polygon vertex forms
  // instead of Re((x+iy)^k)); D_n already uses sum x_i^{2(n-1)} on top.
  bool power_sum_top = false;
};

// Integrity basis p_1..p_n, sorted by degree, with its degree bookkeeping.
template <Field F>
struct ChevalleyMap {
  using Coef = F;
  GroupPtr<F> group;
  std::vector<Poly<F>> p;
  std::vector<int> k;    // degrees k_1 <= ... <= k_n
  int d = 0;             // number of reflections
  std::vector<int> s_j;  // s_j = sum_{u != j} (k_u - 1)
  int s = 0;             // min_j s_j
  int h = 0;             // 1 + d - s
  std::vector<Matrix<F>> generators;  // simple reflections of the group

  std::size_t n() const { return p.size(); }
};

namespace detail {

// Expansion of (a . x)^d.
template <Field F>
Poly<F> linear_power(const Vec<F>& a, int d) {
  std::size_t n = a.size();
  Poly<F> out(n);
  std::vector<std::vector<F>> pw(n);
  for (std::size_t i = 0; i < n; ++i) {
    pw[i].push_back(field_traits<F>::one());
    for (int e = 1; e <= d; ++e) pw[i].push_back(pw[i].back() * a[i]);
  }
  std::vector<mpz_class> fact(static_cast<std::size_t>(d) + 1, 1);
  for (int i = 1; i <= d; ++i) fact[i] = fact[i - 1] * i;
  Monomial m;
  auto rec = [&](auto&& self, std::size_t var, int left) -> void {
    if (var + 1 == n) {
      m.e[var] = static_cast<std::uint8_t>(left);
      mpz_class denom = 1;
      F c = field_traits<F>::one();
      bool zero = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (m[i] > 0 && field_traits<F>::is_zero(a[i])) {
          zero = true;
          break;
        }
        denom *= fact[m[i]];
        c *= pw[i][m[i]];
      }
      if (!zero) out.add_term(m, c * from_rational<F>(Rational(mpq_class(fact[d], denom))));
      return;
    }
    for (int e = 0; e <= left; ++e) {
      m.e[var] = static_cast<std::uint8_t>(e);
      self(self, var + 1, left - e);
    }
    m.e[var] = 0;
  };
  if (n > 0) rec(rec, 0, d);
  return out;
}

template <Field F>
Poly<F> power_sum(const std::vector<Vec<F>>& forms, int degree) {
  Poly<F> out(forms.at(0).size());
  for (const auto& l : forms) out += linear_power(l, degree);
  return out;
}

// Re((x + i y)^k) = sum over even j of C(k, j) (-1)^{j/2} x^{k-j} y^j.
template <Field F>
Poly<F> dihedral_top(int k) {
  Poly<F> out(2);
  mpz_class binom = 1;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) binom = binom * (k - j + 1) / j;
    if (j % 2 == 0) {
      mpz_class c = (j / 2) % 2 ? mpz_class(-binom) : binom;
      out.add_term(Monomial{k - j, j}, from_rational<F>(Rational(mpq_class(c))));
    }
  }
  return out;
}

template <Field F>
Poly<F> scale_leading_to_unit(Poly<F> f) {
  F lead = f.leading_coefficient();
  if (field_traits<F>::sign(lead) < 0) lead = -lead;
  return f / lead;
}

template <Field F>
bool is_invariant_under(const Poly<F>& f, const std::vector<Matrix<F>>& gens) {
  for (const auto& w : gens)
    if (!(substitute_linear(f, w.to_rows()) == f)) return false;
  return true;
}

}  // namespace detail

// Simple reflections of the whole group.
template <Field F>
std::vector<Matrix<F>> simple_generators(const ReflectionGroup<F>& g) {
  std::vector<std::size_t> ids(g.reflection_count());
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  std::vector<Matrix<F>> gens;
  for (auto id : coxeter_graph(g, ids).nodes) gens.push_back(g.reflections()[id].matrix);
  return gens;
}

// Canonical integrity basis per family:
//   A_n   power sums of the n+1 restricted coordinates, degrees 2..n+1
//   B_n   sum_j x_j^{2i}
//   D_n   sum_j x_j^{2i} for i < n, and x_1 ... x_n
//   I2(k) x^2 + y^2 and Re((x + i y)^k)
//   H3    power sums of degree 2, 6, 10 over the six five-fold axes
template <Field F>
ChevalleyMap<F> basic_invariants(GroupPtr<F> g, InvariantOptions opt = {}) {
  const auto& spec = g->spec();
  const int n = spec.rank;
  ChevalleyMap<F> c;
  c.group = g;
  std::vector<Vec<F>> coords;
  for (int i = 0; i < n; ++i) {
    Vec<F> e(n, from_int<F>(0));
    e[i] = from_int<F>(1);
    coords.push_back(e);
  }
  switch (spec.family) {
    case Family::A: {
      std::vector<Vec<F>> xs;
      for (const auto& v : a_series_coordinate_forms(n)) {
        Vec<F> f;
        for (const auto& r : v) f.push_back(from_rational<F>(r));
        xs.push_back(f);
      }
      for (int i = 2; i <= n + 1; ++i) c.p.push_back(detail::scale_leading_to_unit(detail::power_sum(xs, i)));
      break;
    }
    case Family::B:
      for (int i = 1; i <= n; ++i) c.p.push_back(detail::power_sum(coords, 2 * i));
      break;
    case Family::D: {
      for (int i = 1; i < n; ++i) c.p.push_back(detail::power_sum(coords, 2 * i));
      Monomial all;
      for (int i = 0; i < n; ++i) all.e[i] = 1;
      c.p.push_back(Poly<F>::term(n, all, from_int<F>(1)));
      break;
    }
    case Family::I2: {
      int k = spec.dihedral_order;
      c.p.push_back(detail::power_sum(coords, 2));
      if (opt.power_sum_top)
        c.p.push_back(detail::power_sum(polygon_vertices<F>(k), k));
      else
        c.p.push_back(detail::dihedral_top<F>(k));
      break;
    }
    case Family::H3: {
      auto axes = icosahedral_axes<F>();
      for (int k : {2, 6, 10}) c.p.push_back(detail::power_sum(axes, k));
      break;
    }
  }
  std::stable_sort(c.p.begin(), c.p.end(),
                   [](const Poly<F>& a, const Poly<F>& b) { return a.degree() < b.degree(); });
  for (const auto& pi : c.p) c.k.push_back(static_cast<int>(pi.degree().value()));
  c.d = static_cast<int>(g->reflection_count());
  int total = 0;
  for (int ki : c.k) total += ki - 1;
  for (int ki : c.k) c.s_j.push_back(total - (ki - 1));
  c.s = *std::min_element(c.s_j.begin(), c.s_j.end());
  c.h = 1 + c.d - c.s;
  c.generators = simple_generators(*g);
  for (std::size_t i = 0; i < c.p.size(); ++i)
    if (!detail::is_invariant_under(c.p[i], c.generators))
      throw NotInvariant("basic invariant p_" + std::to_string(i + 1) + " of " + spec.str() + " is not invariant");
  return c;
}

template <Field F>
ChevalleyMap<F> basic_invariants(const CoxeterTypeSpec& spec, InvariantOptions opt = {}) {
  return basic_invariants(build_group<F>(spec), opt);
}

// (1/|W|) sum_w f o w.
template <Field F>
Poly<F> reynolds(const ReflectionGroup<F>& g, const Poly<F>& f) {
  if (f.nvars() != g.dim()) throw ArityMismatch("polynomial and group dimension differ");
  const auto& elems = g.elements();
  Poly<F> acc(f.nvars());
  for (const auto& w : elems) acc += substitute_linear(f, w.to_rows());
  return acc / from_int<F>(static_cast<long>(elems.size()));
}

// Reynolds average of c * (a . x)^deg, using that (a . x) o w = (w^T a) . x;
// only the orbit of a is expanded.
template <Field F>
Poly<F> reynolds_linear_power(const ReflectionGroup<F>& g, const Vec<F>& a, int deg) {
  std::vector<Vec<F>> orbit;
  std::vector<long> mult;
  for (const auto& w : g.elements()) {
    Vec<F> b = w.transpose().apply(a);
    bool found = false;
    for (std::size_t i = 0; i < orbit.size() && !found; ++i)
      if (detail::vec_near(orbit[i], b)) {
        ++mult[i];
        found = true;
      }
    if (!found) {
      orbit.push_back(std::move(b));
      mult.push_back(1);
    }
  }
  Poly<F> acc(a.size());
  for (std::size_t i = 0; i < orbit.size(); ++i) acc += detail::linear_power(orbit[i], deg) * from_int<F>(mult[i]);
  return acc / from_int<F>(static_cast<long>(g.elements().size()));
}

// Whether every element permutes coordinates up to scaling.
template <Field F>
bool is_monomial_group(const ReflectionGroup<F>& g) {
  for (const auto& w : g.elements())
    for (std::size_t i = 0; i < w.rows(); ++i) {
      int nz = 0;
      for (std::size_t j = 0; j < w.cols(); ++j) nz += !field_traits<F>::is_zero(w(i, j));
      if (nz != 1) return false;
    }
  return true;
}

// Random nonzero invariant of degree <= max_degree. Monomial groups average a
// sparse random polynomial; other groups average a random sum of powers of
// linear forms, which keeps the averaging cheap for dense matrices.
template <Field F>
Poly<F> random_invariant(const ReflectionGroup<F>& g, Rng& rng, int max_degree) {
  const std::size_t n = g.dim();
  const bool monomial = is_monomial_group(g);
  for (;;) {
    int terms = static_cast<int>(uniform_int(rng, 1, 4));
    Poly<F> f(n);
    if (monomial) {
      f = reynolds(g, random_poly<F>(rng, n, max_degree, terms));
    } else {
      for (int t = 0; t < terms; ++t) {
        Vec<F> a(n);
        bool nonzero = false;
        while (!nonzero) {
          for (auto& x : a) {
            long v = uniform_int(rng, -2, 2);
            x = from_int<F>(v);
            nonzero = nonzero || v != 0;
          }
        }
        int deg = static_cast<int>(uniform_int(rng, 0, max_degree));
        f += reynolds_linear_power(g, a, deg) * from_rational<F>(random_rational(rng, 4, 3));
      }
    }
    if (!f.is_zero()) return f;
  }
}

template <Field F>
struct JacobianFactorization {
  Poly<F> jacobian;
  F c;
  std::vector<Vec<F>> factors;  // one normalised form per hyperplane
};

// Numeric backend: J is compared with c * prod(lambda) at random points.
struct PointwiseJacobianReport {
  double c = 0;
  std::size_t points = 0;
  double max_abs_error = 0;
  double tolerance = kNumericTol;
  bool passed = false;
};

template <Field F>
Poly<F> jacobian_determinant(const ChevalleyMap<F>& c) {
  return determinant(jacobian_matrix(c.p));
}

template <Field F>
Poly<F> product_of_forms(const ReflectionGroup<F>& g) {
  Poly<F> acc = Poly<F>::constant(g.dim(), field_traits<F>::one());
  for (const auto& r : g.reflections()) acc = acc * Poly<F>::linear(std::span<const F>(r.form));
  return acc;
}

// Exact: J is divided by each hyperplane form once and the quotient must be
// a nonzero constant. Numeric: c is fitted at a regular point and the
// identity J = c prod(lambda) is checked at `points` random unit vectors.
template <Field F>
std::variant<JacobianFactorization<F>, PointwiseJacobianReport> jacobian_factorization(const ChevalleyMap<F>& c,
                                                                                        std::uint64_t seed = 0,
                                                                                        std::size_t points = 100) {
  const auto& g = *c.group;
  Poly<F> j = jacobian_determinant(c);
  if constexpr (is_exact_v<F>) {
    JacobianFactorization<F> out;
    out.jacobian = j;
    Poly<F> q = j;
    for (const auto& r : g.reflections()) {
      Poly<F> l = Poly<F>::linear(std::span<const F>(r.form));
      try {
        q = divide_exact(q, l);
      } catch (const NotDivisibleError& e) {
        throw FactorizationFailure("Jacobian is not divisible by " + l.to_string() + " (hyperplane " +
                                   std::to_string(r.hyperplane_id) + ")");
      }
      out.factors.push_back(r.form);
    }
    if (q.is_zero() || !q.is_constant())
      throw FactorizationFailure("quotient " + q.to_string() + " is not a nonzero constant");
    out.c = q.constant_term();
    return out;
  } else {
    PointwiseJacobianReport rep;
    Poly<F> prod = product_of_forms(g);
    std::vector<std::size_t> ids(g.reflection_count());
    std::iota(ids.begin(), ids.end(), std::size_t{0});
    Vec<F> x0 = detail::generic_point(g, ids);
    double scale = 0;
    for (double v : x0) scale = std::max(scale, std::abs(v));
    for (double& v : x0) v /= scale;
    rep.c = evaluate(j, x0) / evaluate(prod, x0);
    Rng rng = case_rng(seed, 0);
    for (std::size_t t = 0; t < points; ++t) {
      Vec<F> x = random_point<F>(rng, g.dim());
      double norm = 0;
      for (double v : x) norm += v * v;
      if (norm == 0) continue;
      for (double& v : x) v /= std::sqrt(norm);
      double err = std::abs(evaluate(j, x) - rep.c * evaluate(prod, x));
      rep.max_abs_error = std::max(rep.max_abs_error, err);
    }
    rep.points = points;
    rep.passed = rep.max_abs_error <= rep.tolerance && std::abs(rep.c) > kNumericZero;
    return rep;
  }
}

template <Field F>
JacobianFactorization<F> exact_factorization(const ChevalleyMap<F>& c) {
  return std::get<JacobianFactorization<F>>(jacobian_factorization(c));
}

template <Field F>
struct RewriteResult {
  Poly<F> F_poly;  // polynomial in u_1..u_n
  int weighted_degree = 0;  // max over terms of sum m_i k_i; 0 for F = 0
};

namespace detail {

// Exponent vectors m with sum m_i k_i = r.
inline std::vector<std::vector<int>> weighted_exponents(const std::vector<int>& k, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> m(k.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == k.size()) {
      if (left == 0) out.push_back(m);
      return;
    }
    for (int e = 0; e * k[i] <= left; ++e) {
      m[i] = e;
      self(self, i + 1, left - e * k[i]);
    }
    m[i] = 0;
  };
  rec(rec, 0, r);
  return out;
}

template <Field F>
class InvariantPowers {
 public:
  explicit InvariantPowers(const std::vector<Poly<F>>& p) {
    for (const auto& pi : p) cache_.emplace_back(pi);
  }
  Poly<F> product(const std::vector<int>& m) {
    Poly<F> t = cache_[0].get(0);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) t = t * cache_[i].get(static_cast<unsigned>(m[i]));
    return t;
  }

 private:
  std::vector<PowerCache<F>> cache_;
};

}  // namespace detail

template <Field F>
bool is_invariant(const ChevalleyMap<F>& c, const Poly<F>& f) {
  return detail::is_invariant_under(f, c.generators);
}

// Solves f = F(p_1, ..., p_n) degree by degree.
template <Field F>
RewriteResult<F> rewrite_invariant(const ChevalleyMap<F>& c, const Poly<F>& f, bool check_invariance = true) {
  const std::size_t n = c.n();
  if (f.nvars() != n) throw ArityMismatch("polynomial arity differs from the group rank");
  if (check_invariance && !is_invariant(c, f)) throw NotInvariant("polynomial is not invariant under the group");
  RewriteResult<F> out{Poly<F>(n), 0};
  if (f.is_zero()) return out;
  detail::InvariantPowers<F> powers(c.p);
  const int top = static_cast<int>(f.degree().value());
  for (int r = 0; r <= top; ++r) {
    Poly<F> fr = f.homogeneous_part(r);
    if (fr.is_zero()) continue;
    auto exps = detail::weighted_exponents(c.k, r);
    if (exps.empty()) throw RewriteInconsistent("no invariant monomial of weighted degree " + std::to_string(r));
    std::vector<Poly<F>> basis;
    for (const auto& m : exps) basis.push_back(powers.product(m));
    // rows indexed by the monomials that occur anywhere
    std::map<Monomial, std::size_t, GrlexGreater> row_of;
    auto index_terms = [&](const Poly<F>& q) {
      for (const auto& [mon, coef] : q.terms()) row_of.emplace(mon, 0);
    };
    for (const auto& b : basis) index_terms(b);
    index_terms(fr);
    std::size_t rows = 0;
    for (auto& [mon, idx] : row_of) idx = rows++;
    const std::size_t cols = basis.size();
    Matrix<F> a(rows, cols + 1);
    for (std::size_t j = 0; j < cols; ++j)
      for (const auto& [mon, coef] : basis[j].terms()) a(row_of[mon], j) = coef;
    for (const auto& [mon, coef] : fr.terms()) a(row_of[mon], cols) = coef;
    auto piv = rref(a);
    if (!piv.empty() && piv.back() == cols)
      throw RewriteInconsistent("degree " + std::to_string(r) + " part is not in the span of the invariant products");
    if (piv.size() != cols)
      throw RewriteInconsistent("invariant products of degree " + std::to_string(r) + " are linearly dependent");
    for (std::size_t j = 0; j < cols; ++j) {
      const F& coef = a(j, cols);
      if (field_traits<F>::is_zero(coef)) continue;
      Monomial um{std::span<const int>(exps[j])};
      out.F_poly.add_term(um, coef);
      out.weighted_degree = std::max(out.weighted_degree, r);
    }
  }
  if (!(compose(out.F_poly, c.p) == f)) throw RewriteInconsistent("composition does not reproduce the input");
  return out;
}

template <Field F>
Poly<F> discriminant(const ChevalleyMap<F>& c) {
  Poly<F> j = jacobian_determinant(c);
  return rewrite_invariant(c, j * j, false).F_poly;
}

// Cramer solution of grad f = Jac(P)^T g. Minors, the factorisation constant
// and the hyperplane forms are computed once per map.
template <Field F>
class CramerSystem {
 public:
  explicit CramerSystem(const ChevalleyMap<F>& c) : map_(&c) {
    static_assert(is_exact_v<F>, "the Cramer system needs an exact field");
    jac_ = jacobian_matrix(c.p);
    const std::size_t n = c.n();
    minors_.assign(n, std::vector<Poly<F>>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) minors_[i][j] = minor(jac_, j, i);
    c_ = exact_factorization(c).c;
    for (const auto& r : c.group->reflections()) forms_.push_back(Poly<F>::linear(std::span<const F>(r.form)));
  }

  // M_{i,j}: Jacobian determinant with the p_j row and the z_i column deleted.
  const Poly<F>& minor_ij(std::size_t i, std::size_t j) const { return minors_[i][j]; }
  const PolyMatrix<F>& jacobian() const { return jac_; }
  const F& constant() const { return c_; }

  // RHS_j = sum_i (-1)^{i+j} M_{i,j} df/dz_i
  std::vector<Poly<F>> rhs(const Poly<F>& f) const {
    const std::size_t n = map_->n();
    std::vector<Poly<F>> grad;
    for (std::size_t i = 0; i < n; ++i) grad.push_back(differentiate(f, i));
    std::vector<Poly<F>> out;
    for (std::size_t j = 0; j < n; ++j) {
      Poly<F> acc(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (grad[i].is_zero() || minors_[i][j].is_zero()) continue;
        Poly<F> t = minors_[i][j] * grad[i];
        if ((i + j) % 2 == 0)
          acc += t;
        else
          acc -= t;
      }
      out.push_back(std::move(acc));
    }
    return out;
  }

  // g_j = RHS_j / (c prod lambda), each division exact.
  std::vector<Poly<F>> solve(const Poly<F>& f) const {
    auto r = rhs(f);
    for (std::size_t j = 0; j < r.size(); ++j) {
      for (std::size_t t = 0; t < forms_.size(); ++t) {
        try {
          r[j] = divide_exact(r[j], forms_[t]);
        } catch (const NotDivisibleError&) {
          throw DivisibilityFailure("RHS_" + std::to_string(j + 1) + " is not divisible by " + forms_[t].to_string() +
                                    " (hyperplane " + std::to_string(t) + ")");
        }
      }
      r[j] = r[j] / c_;
    }
    return r;
  }

 private:
  const ChevalleyMap<F>* map_;
  PolyMatrix<F> jac_;
  std::vector<std::vector<Poly<F>>> minors_;
  F c_;
  std::vector<Poly<F>> forms_;
};

template <Field F>
std::vector<Poly<F>> gradient_system(const ChevalleyMap<F>& c, const Poly<F>& f) {
  if (!is_invariant(c, f)) throw NotInvariant("polynomial is not invariant under the group");
  return CramerSystem<F>(c).solve(f);
}

struct OrbitSeparation {
  bool same_p_value = false;
  bool same_orbit = false;
};

template <Field F>
OrbitSeparation orbit_separation_check(const ChevalleyMap<F>& c, const Vec<F>& x, const Vec<F>& y) {
  OrbitSeparation r;
  r.same_p_value = true;
  for (const auto& pi : c.p)
    if (!field_traits<F>::near(evaluate(pi, x), evaluate(pi, y))) r.same_p_value = false;
  for (const auto& w : c.group->elements())
    if (detail::vec_near(w.apply(x), y)) {
      r.same_orbit = true;
      break;
    }
  return r;
}

template <Field F>
int weighted_derivative_orders(const ChevalleyMap<F>& c, const std::vector<int>& m) {
  if (m.size() != c.n()) throw ArityMismatch("multi-index length differs from the number of invariants");
  int w = 0;
  for (std::size_t i = 0; i < m.size(); ++i) w += m[i] * c.k[i];
  return w;
}

}  // namespace chev
