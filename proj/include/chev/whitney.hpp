#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chev/chevalley.hpp"
#include "chev/flat.hpp"

namespace chev {

// Jet of order m on a finite set E: a value a_k(x) for every x in E and every
// multi-index |k| <= m. The polynomial at x is sum_k a_k(x) / k! (X - x)^k.
template <Field F>
class JetField {
 public:
  JetField() = default;
  JetField(std::size_t nvars, int order, std::vector<Vec<F>> points)
      : n_(nvars), m_(order), points_(std::move(points)), indices_(multi_indices(nvars, order)) {
    if (order < 0) throw InvalidArgument("jet order must be nonnegative");
    for (const auto& x : points_)
      if (x.size() != n_) throw ArityMismatch("sample point has wrong dimension");
    for (std::size_t i = 0; i < indices_.size(); ++i) slot_.emplace(indices_[i], i);
    coeffs_.assign(points_.size(), std::vector<F>(indices_.size(), field_traits<F>::zero()));
  }

  std::size_t nvars() const { return n_; }
  int order() const { return m_; }
  const std::vector<Vec<F>>& points() const { return points_; }
  const std::vector<Monomial>& indices() const { return indices_; }
  const std::vector<F>& coefficients(std::size_t point) const { return coeffs_.at(point); }

  F& at(std::size_t point, const Monomial& k) { return coeffs_.at(point).at(slot(k)); }
  const F& at(std::size_t point, const Monomial& k) const { return coeffs_.at(point).at(slot(k)); }

  std::size_t point_index(const Vec<F>& x) const {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      bool same = x.size() == n_;
      for (std::size_t j = 0; same && j < n_; ++j) same = field_traits<F>::near(points_[i][j], x[j]);
      if (same) return i;
    }
    throw PointNotInField("point is not in the sample set of the jet");
  }

 private:
  std::size_t slot(const Monomial& k) const {
    auto it = slot_.find(k);
    if (it == slot_.end()) throw InvalidArgument("multi-index exceeds the order of the jet");
    return it->second;
  }

  std::size_t n_ = 0;
  int m_ = 0;
  std::vector<Vec<F>> points_;
  std::vector<Monomial> indices_;
  std::map<Monomial, std::size_t, GrlexGreater> slot_;
  std::vector<std::vector<F>> coeffs_;
};

namespace detail {

inline Rational factorial(int k) {
  mpz_class f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return Rational(mpq_class(f));
}

inline Rational factorial(const Monomial& k) {
  mpz_class f = 1;
  for (std::size_t v = 0; v < kMaxVars; ++v)
    for (int i = 2; i <= k[v]; ++i) f *= i;
  return Rational(mpq_class(f));
}

inline bool index_leq(const Monomial& q, const Monomial& k) { return q.divides(k); }

template <Field F>
F monomial_value(const Monomial& k, const Vec<F>& y) {
  F v = field_traits<F>::one();
  for (std::size_t i = 0; i < y.size(); ++i) v = v * field_pow(y[i], static_cast<unsigned>(k[i]));
  return v;
}

template <Field F>
double distance(const Vec<F>& a, const Vec<F>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = field_traits<F>::to_double(a[i] - b[i]);
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace detail

// a_k(x) = D^k f(x) for x in E.
template <Field F>
JetField<F> taylor_field(const Poly<F>& f, const std::vector<Vec<F>>& points, int m) {
  JetField<F> A(f.nvars(), m, points);
  for (const auto& k : A.indices()) {
    Poly<F> dk = differentiate(f, k);
    for (std::size_t i = 0; i < points.size(); ++i) A.at(i, k) = evaluate(dk, points[i]);
  }
  return A;
}

// Jet from a callback returning the k-th derivative at a point; used for
// fields that are not polynomial.
template <Field F, class Fn>
JetField<F> jet_from_derivatives(std::size_t nvars, int m, const std::vector<Vec<F>>& points, Fn&& deriv) {
  JetField<F> A(nvars, m, points);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (const auto& k : A.indices()) A.at(i, k) = deriv(points[i], k);
  return A;
}

// (D^q A)_x(x') = sum_{k >= q, |k| <= m} a_k(x) / (k - q)! (x' - x)^{k - q}.
template <Field F>
F derived_polynomial_value(const JetField<F>& A, std::size_t x, const Vec<F>& xp, const Monomial& q) {
  Vec<F> y(A.nvars());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = xp[i] - A.points()[x][i];
  F v = field_traits<F>::zero();
  for (const auto& k : A.indices()) {
    if (!detail::index_leq(q, k)) continue;
    Monomial e = k / q;
    v = v + A.at(x, k) * detail::monomial_value(e, y) / from_rational<F>(detail::factorial(e));
  }
  return v;
}

// (R_x A)^q(x') = a_q(x') - (D^q A)_x(x').
template <Field F>
F remainder(const JetField<F>& A, std::size_t x, std::size_t xp, const Monomial& q) {
  if (q.degree() > A.order()) throw InvalidArgument("|q| exceeds the order of the jet");
  return A.at(xp, q) - derived_polynomial_value(A, x, A.points().at(xp), q);
}

template <Field F>
F remainder(const JetField<F>& A, const Vec<F>& x, const Vec<F>& xp, const Monomial& q) {
  return remainder(A, A.point_index(x), A.point_index(xp), q);
}

// sup_{x in K, |k| <= m} |a_k(x) / k!| + sup_{x != x' in K, |k| <= r} |(R_x A)^k(x')| / |x - x'|^{r - |k|}.
template <Field F>
double seminorm(const JetField<F>& A, const std::vector<std::size_t>& K, int r) {
  if (K.empty()) throw EmptyCompact("seminorm over an empty set");
  if (r < 0 || r > A.order()) throw InvalidArgument("seminorm needs 0 <= r <= m");
  double coef = 0;
  for (auto x : K)
    for (const auto& k : A.indices())
      coef = std::max(coef, std::abs(field_traits<F>::to_double(A.at(x, k) / from_rational<F>(detail::factorial(k)))));
  double rem = 0;
  for (auto x : K)
    for (auto xp : K) {
      if (x == xp) continue;
      double sep = detail::distance(A.points()[x], A.points()[xp]);
      for (const auto& k : A.indices()) {
        if (k.degree() > r) continue;
        double v = std::abs(field_traits<F>::to_double(remainder(A, x, xp, k)));
        rem = std::max(rem, v / std::pow(sep, r - k.degree()));
      }
    }
  return coef + rem;
}

template <Field F>
double seminorm(const JetField<F>& A, int r) {
  std::vector<std::size_t> all(A.points().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return seminorm(A, all, r);
}

// Slope and residual of a least-squares line through (log x, log y).
struct LogLogFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // root mean square of the fit residuals
  std::size_t used = 0;
  bool infinite = false;  // every sample was zero
};

inline LogLogFit loglog_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(std::abs(ys[i]) > 0) || !(xs[i] > 0)) continue;
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(std::abs(ys[i])));
  }
  LogLogFit fit;
  fit.used = lx.size();
  if (lx.empty()) {
    fit.infinite = true;
    fit.slope = std::numeric_limits<double>::infinity();
    return fit;
  }
  if (lx.size() == 1) throw InvalidArgument("a fit needs at least two nonzero samples");
  double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0) throw InvalidArgument("all separations are equal");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

// `samples` log-spaced values between tmin and tmax inclusive.
inline std::vector<double> log_grid(double tmin, double tmax, int samples) {
  if (!(tmin > 0) || !(tmax > tmin) || samples < 2) throw InvalidArgument("log grid needs 0 < tmin < tmax and 2+ samples");
  std::vector<double> t;
  double a = std::log(tmin), b = std::log(tmax);
  for (int i = 0; i < samples; ++i) t.push_back(std::exp(a + (b - a) * i / (samples - 1)));
  return t;
}

// Fitted exponent of |(R_x A)^q(x')| against |x - x'| over the given pairs.
template <Field F>
LogLogFit regularity_exponent(const JetField<F>& A, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                              const Monomial& q) {
  if (pairs.size() < 10) throw InvalidArgument("regularity fit needs at least 10 pairs");
  std::vector<double> sep, val;
  for (auto [x, xp] : pairs) {
    sep.push_back(detail::distance(A.points().at(x), A.points().at(xp)));
    val.push_back(field_traits<F>::to_double(remainder(A, x, xp, q)));
  }
  auto [lo, hi] = std::minmax_element(sep.begin(), sep.end());
  if (!(*lo > 0) || *hi / *lo < 100 * (1 - 1e-9)) throw InvalidArgument("pair separations must span two decades");
  return loglog_fit(sep, val);
}

// Falling factorial beta (beta - 1) ... (beta - p + 1).
inline double falling(double beta, int p) {
  double v = 1;
  for (int i = 0; i < p; ++i) v *= beta - i;
  return v;
}

namespace detail {

inline bool is_integer(double beta) { return std::floor(beta) == beta; }

// D^p y^beta at y = base.
inline double outer_power(double base, double beta, int p) {
  double ff = falling(beta, p);
  if (ff == 0) return 0;
  if (base <= 0 && !is_integer(beta)) throw NonpositiveBase("p(x) <= 0 with a non-integer exponent");
  if (base == 0) return beta - p == 0 ? ff : (beta - p > 0 ? 0.0 : std::numeric_limits<double>::infinity());
  return ff * std::pow(base, beta - p);
}

// Coefficients of tau^j in f(x + tau v), j = 0..deg f. Plain vectors rather
// than Poly so that tiny numeric coefficients are not dropped.
template <Field F>
std::vector<F> ray_coefficients(const Poly<F>& f, const Vec<F>& x, const Vec<F>& v) {
  if (x.size() != f.nvars() || v.size() != f.nvars()) throw ArityMismatch("point or ray has wrong dimension");
  std::size_t deg = f.is_zero() ? 0 : static_cast<std::size_t>(f.degree().value());
  std::vector<F> out(deg + 1, field_traits<F>::zero());
  for (const auto& [m, a] : f.terms()) {
    std::vector<F> acc{a};
    for (std::size_t i = 0; i < x.size(); ++i)
      for (int e = 0; e < m[i]; ++e) {
        std::vector<F> next(acc.size() + 1, field_traits<F>::zero());
        for (std::size_t j = 0; j < acc.size(); ++j) {
          next[j] = next[j] + acc[j] * x[i];
          next[j + 1] = next[j + 1] + acc[j] * v[i];
        }
        acc = std::move(next);
      }
    for (std::size_t j = 0; j < acc.size(); ++j) out[j] = out[j] + acc[j];
  }
  return out;
}

}  // namespace detail

// d^k/dtau^k p(x + tau v)^beta at tau = 0 by the univariate Faa di Bruno sum
// over (mu_1..mu_q) with 1 mu_1 + ... + q mu_q = k.
template <Field F>
double faa_di_bruno_ray(const Poly<F>& p, double beta, int k, const Vec<F>& x, const Vec<F>& v) {
  if (k < 0) throw InvalidArgument("derivative order must be nonnegative");
  auto c = detail::ray_coefficients(p, x, v);
  std::vector<double> g;  // g[j] = D^j g(0) / j!
  for (const auto& a : c) g.push_back(field_traits<F>::to_double(a));
  double g0 = g[0];
  if (g0 <= 0 && !detail::is_integer(beta)) throw NonpositiveBase("p(x) <= 0 with a non-integer exponent");
  if (k == 0) return detail::outer_power(g0, beta, 0);
  int top = std::min<int>(k, static_cast<int>(g.size()) - 1);
  std::vector<double> logfact(k + 1, 0.0);
  for (int i = 1; i <= k; ++i) logfact[i] = logfact[i - 1] + std::log(double(i));
  double total = 0;
  std::vector<int> mu(top + 1, 0);
  // multinomial k! / prod mu_j! times prod (g_j)^{mu_j}
  auto rec = [&](auto&& self, int j, int left, int parts) -> void {
    if (left == 0) {
      double term = std::exp(logfact[k]);
      for (int i = 1; i <= top; ++i) {
        if (mu[i] == 0) continue;
        term *= std::pow(g[i], mu[i]) / std::exp(logfact[mu[i]]);
      }
      if (term != 0) total += term * detail::outer_power(g0, beta, parts);
      return;
    }
    if (j > top) return;
    for (int m = 0; m * j <= left; ++m) {
      mu[j] = m;
      self(self, j + 1, left - m * j, parts + m);
    }
    mu[j] = 0;
  };
  rec(rec, 1, k, 0);
  return total;
}

// D^k (p^beta) = sum_j (beta)_j p^{beta - j} c_j with c_0 = 1 and, per
// derivative in x_i, c_j <- d_i c_j + c_{j-1} d_i p. The c_j are exact.
template <Field F>
std::vector<Poly<F>> power_rule_coefficients(const Poly<F>& p, const Monomial& k) {
  std::size_t n = p.nvars();
  std::vector<Poly<F>> c{Poly<F>::constant(n, field_traits<F>::one())};
  for (std::size_t i = 0; i < n; ++i)
    for (int r = 0; r < k[i]; ++r) {
      Poly<F> dp = differentiate(p, i);
      std::vector<Poly<F>> next(c.size() + 1, Poly<F>(n));
      for (std::size_t j = 0; j < c.size(); ++j) {
        next[j] += differentiate(c[j], i);
        next[j + 1] += c[j] * dp;
      }
      c = std::move(next);
    }
  return c;
}

template <Field F>
double faa_di_bruno(const Poly<F>& p, double beta, const Monomial& k, const Vec<F>& x) {
  auto c = power_rule_coefficients(p, k);
  double base = field_traits<F>::to_double(evaluate(p, x));
  if (base <= 0 && !detail::is_integer(beta)) throw NonpositiveBase("p(x) <= 0 with a non-integer exponent");
  double total = 0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    double cj = field_traits<F>::to_double(evaluate(c[j], x));
    if (cj == 0) continue;
    total += cj * detail::outer_power(base, beta, static_cast<int>(j));
  }
  return total;
}

// Exact D^k (p^beta) for a nonnegative integer exponent.
template <Field F>
Poly<F> faa_di_bruno_exact(const Poly<F>& p, unsigned beta, const Monomial& k) {
  auto c = power_rule_coefficients(p, k);
  Poly<F> out(p.nvars());
  for (std::size_t j = 0; j < c.size() && j <= beta; ++j)
    out += c[j] * p.pow(beta - static_cast<unsigned>(j)) * from_int<F>(static_cast<long>(falling(beta, static_cast<int>(j))));
  return out;
}

struct ProbeOrder {
  int k = 0;
  double slope = 0;
  double residual = 0;
  double expected = 0;  // k_n (s + alpha) - k
  std::string verdict;  // "->0", "blow-up" or "inconclusive"
};

struct ProbeReport {
  std::string group;
  int s = 0;
  double alpha = 0;
  int k_n = 0;
  std::vector<double> ray;
  std::vector<double> t;
  std::vector<ProbeOrder> orders;
  int smooth_order = -1;  // largest K with every order <= K tending to 0
  std::optional<int> blowup_order;
  bool inconclusive = false;  // k_n alpha is an integer
  bool slope_law = true;      // every fitted slope within tolerance of the prediction
  std::string verdict;
};

inline constexpr double kSlopeTol = 0.05;
inline constexpr double kVerdictBand = 0.05;

// The top invariant used by the probe: a power sum that vanishes only at 0.
template <Field F>
Poly<F> probe_top_invariant(const ChevalleyMap<F>& c) {
  const auto& spec = c.group->spec();
  if (spec.family == Family::A && spec.rank % 2 == 0)
    throw UnsupportedGroupForProbe(spec.str() + ": top degree is odd");
  if (spec.family == Family::I2 && spec.dihedral_order % 2 == 1)
    throw UnsupportedGroupForProbe(spec.str() + ": top degree is odd");
  if (spec.family == Family::I2) return basic_invariants(c.group, InvariantOptions{true}).p.back();
  return c.p.back();
}

// Slopes of log |D_v^k (p_n^{s + alpha})(t v)| against log t.
template <Field F>
ProbeReport counterexample_probe(const ChevalleyMap<F>& c, int s, double alpha, std::vector<double> ray = {},
                                 std::vector<double> t = log_grid(1e-3, 1e-1, 25)) {
  if (s < 0 || s > 2) throw InvalidArgument("probe supports 0 <= s <= 2");
  if (!(alpha > 0 && alpha < 1)) throw InvalidArgument("alpha must lie in (0, 1)");
  const std::size_t n = c.group->dim();
  Poly<double> top = to_numeric(probe_top_invariant(c));
  if (ray.empty()) ray.assign(n, 1.0);
  if (ray.size() != n) throw ArityMismatch("ray has wrong dimension");
  double norm = 0;
  for (double x : ray) norm += x * x;
  norm = std::sqrt(norm);
  if (norm == 0) throw InvalidArgument("ray must be nonzero");
  for (double& x : ray) x /= norm;
  if (!(evaluate(top, ray) > kNumericZero)) throw RayOnMirror("top invariant does not stay positive along the ray");

  ProbeReport rep;
  rep.group = c.group->spec().str();
  rep.s = s;
  rep.alpha = alpha;
  rep.k_n = c.k.back();
  rep.ray = ray;
  rep.t = t;
  double beta = s + alpha;
  double kna = rep.k_n * alpha;
  rep.inconclusive = std::abs(kna - std::round(kna)) < 1e-12;
  int kmax = rep.k_n * s + 1;
  for (int k = 0; k <= kmax; ++k) {
    std::vector<double> vals;
    for (double ti : t) {
      Vec<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = ti * ray[i];
      vals.push_back(faa_di_bruno_ray(top, beta, k, x, ray));
    }
    ProbeOrder o;
    o.k = k;
    o.expected = rep.k_n * beta - k;
    auto fit = loglog_fit(t, vals);
    o.slope = fit.slope;
    o.residual = fit.residual;
    if (rep.inconclusive)
      o.verdict = "inconclusive";
    else if (o.slope > kVerdictBand)
      o.verdict = "->0";
    else if (o.slope < -kVerdictBand)
      o.verdict = "blow-up";
    else
      o.verdict = "inconclusive";
    if (!rep.inconclusive && !(std::abs(o.slope - o.expected) <= kSlopeTol)) rep.slope_law = false;
    rep.orders.push_back(o);
  }
  if (rep.inconclusive) {
    rep.verdict = "inconclusive";
    return rep;
  }
  for (const auto& o : rep.orders) {
    if (o.verdict != "->0") break;
    rep.smooth_order = o.k;
  }
  std::size_t next = static_cast<std::size_t>(rep.smooth_order + 1);
  if (next < rep.orders.size() && rep.orders[next].verdict == "blow-up") rep.blowup_order = rep.orders[next].k;
  if (rep.smooth_order < 0)
    rep.verdict = "not C0";
  else if (rep.blowup_order)
    rep.verdict = "C" + std::to_string(rep.smooth_order) + " not C" + std::to_string(*rep.blowup_order);
  else
    rep.verdict = "at least C" + std::to_string(rep.smooth_order);
  return rep;
}

struct Lemma1Entry {
  std::size_t base = 0;  // index of z0 among the sampled flat points
  std::size_t ray = 0;
  Monomial q;
  Order order = 0;  // t-order of the remainder
  int required = 0;  // r - |q| + s + 1
};

struct Lemma1Report {
  int r = 0;
  int s = 0;
  std::vector<Lemma1Entry> entries;
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

// With A carried as an r-jet and Q exact, the remainder of QA at z0 evaluated
// at z is D^q(Q (A - T^r_{z0} A))(z). Along z = z0 + t v its t-order must be at
// least r - |q| + s + 1.
template <Field F>
Lemma1Report lemma1_product_check(const Poly<F>& Q, const Poly<F>& A, const Flat<F>& flat, int r, int s,
                                  const std::vector<Vec<F>>& bases, const std::vector<Vec<F>>& rays) {
  if (r < 0 || s < 0) throw InvalidArgument("r and s must be nonnegative");
  Order have = vanishing_order(Q, flat);
  if (have < Order(s))
    throw InsufficientFlatness("Q vanishes to order " + have.str() + " on the flat, below s = " + std::to_string(s));
  const std::size_t n = Q.nvars();
  Lemma1Report rep;
  rep.r = r;
  rep.s = s;
  for (std::size_t b = 0; b < bases.size(); ++b) {
    const auto& z0 = bases[b];
    if (!flat.contains(z0)) throw InvalidArgument("base point is not on the flat");
    std::vector<Poly<F>> shift;
    for (std::size_t i = 0; i < n; ++i) {
      Poly<F> yi = Poly<F>::variable(n, i);
      yi += Poly<F>::constant(n, z0[i]);
      shift.push_back(std::move(yi));
    }
    Poly<F> Qs = compose(Q, shift);
    Poly<F> As = compose(A, shift);
    Poly<F> high(n);
    for (const auto& [m, a] : As.terms())
      if (m.degree() > r) high.add_term(m, a);
    Poly<F> G = Qs * high;
    for (const auto& q : multi_indices(n, r)) {
      Poly<F> dq = differentiate(G, q);
      for (std::size_t v = 0; v < rays.size(); ++v) {
        std::vector<Poly<F>> line;
        for (std::size_t i = 0; i < n; ++i) line.push_back(Poly<F>::term(1, Monomial::unit(0), rays[v][i]));
        Lemma1Entry e{b, v, q, compose(dq, line).order(), r - q.degree() + s + 1};
        if (e.order < Order(e.required))
          rep.violations.push_back("q of order " + std::to_string(q.degree()) + " at base " + std::to_string(b) +
                                   " along ray " + std::to_string(v) + ": t-order " + e.order.str() + " < " +
                                   std::to_string(e.required));
        rep.entries.push_back(e);
      }
    }
  }
  return rep;
}

template <Field F>
struct Lemma2Report {
  Poly<F> B;
  double norm_A = 0;  // order r seminorm of the Taylor field of A on the samples
  double norm_B = 0;  // order r - 1 seminorm of the Taylor field of B
  double ratio = 0;   // norm_B / norm_A
};

// Divides A by the linear form lambda after checking that A vanishes on its
// kernel, and compares seminorms of the two Taylor fields on the samples.
template <Field F>
Lemma2Report<F> lemma2_division_check(const Vec<F>& lambda, const Poly<F>& A, const std::vector<Vec<F>>& samples, int r) {
  if (r < 1) throw InvalidArgument("division lowers the order, r must be >= 1");
  const std::size_t n = A.nvars();
  if (lambda.size() != n) throw ArityMismatch("form has wrong dimension");
  Poly<F> l = Poly<F>::linear(std::span<const F>(lambda));
  if (l.is_zero()) throw InvalidArgument("linear form is zero");
  if (vanishing_order(A, Flat<F>::from_forms({lambda}, n)) < Order(1)) {
    auto dr = divide_with_remainder(A, l);
    throw NotDivisible<F>("polynomial does not vanish on the hyperplane", dr.remainder);
  }
  Lemma2Report<F> rep;
  rep.B = divide_exact(A, l);
  if constexpr (is_exact_v<F>) {
    if (!(l * rep.B == A)) throw NotDivisible<F>("quotient check failed", A - l * rep.B);
  }
  if (!samples.empty()) {
    rep.norm_A = seminorm(taylor_field(A, samples, r), r);
    rep.norm_B = seminorm(taylor_field(rep.B, samples, r - 1), r - 1);
    rep.ratio = rep.norm_A > 0 ? rep.norm_B / rep.norm_A : 0;
  }
  return rep;
}

}  // namespace chev
