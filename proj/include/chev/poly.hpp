#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "chev/field.hpp"

namespace chev {

inline constexpr std::size_t kMaxVars = 8;

// Exponent multi-index; entries past the polynomial's arity are zero.
struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};

  Monomial() = default;
  explicit Monomial(std::span<const int> exps) {
    if (exps.size() > kMaxVars) throw ArityMismatch("at most 8 variables are supported");
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] < 0 || exps[i] > 255) throw ExponentOverflow("exponent out of range");
      e[i] = static_cast<std::uint8_t>(exps[i]);
    }
  }
  Monomial(std::initializer_list<int> exps) : Monomial(std::span<const int>(exps.begin(), exps.size())) {}

  static Monomial unit(std::size_t var, int power = 1) {
    Monomial m;
    m.e[var] = static_cast<std::uint8_t>(power);
    return m;
  }

  int operator[](std::size_t i) const { return e[i]; }
  int degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      unsigned s = unsigned(a.e[i]) + b.e[i];
      if (s > 255) throw ExponentOverflow("exponent exceeds 255");
      r.e[i] = static_cast<std::uint8_t>(s);
    }
    return r;
  }
  bool divides(const Monomial& b) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] > b.e[i]) return false;
    return true;
  }
  // b / a; caller ensures a divides b.
  friend Monomial operator/(const Monomial& b, const Monomial& a) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint8_t>(b.e[i] - a.e[i]);
    return r;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded lexicographic order, x1 > x2 > ... ; the map below iterates from the
// largest monomial down.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    return a.e > b.e;
  }
};

template <Field F>
class Poly {
 public:
  using Coef = F;
  using Traits = field_traits<F>;
  using TermMap = std::map<Monomial, F, GrlexGreater>;

  explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {
    if (nvars > kMaxVars) throw ArityMismatch("at most 8 variables are supported");
  }

  static Poly constant(std::size_t nvars, const F& c) {
    Poly p(nvars);
    p.add_term(Monomial{}, c);
    return p;
  }
  static Poly variable(std::size_t nvars, std::size_t var) {
    if (var >= nvars) throw ArityMismatch("variable index out of range");
    Poly p(nvars);
    p.add_term(Monomial::unit(var), Traits::one());
    return p;
  }
  static Poly term(std::size_t nvars, const Monomial& m, const F& c) {
    Poly p(nvars);
    p.add_term(m, c);
    return p;
  }
  // sum_i coeffs[i] * x_i
  static Poly linear(std::span<const F> coeffs) {
    Poly p(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) p.add_term(Monomial::unit(i), coeffs[i]);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0); }

  Degree degree() const {
    if (terms_.empty()) return Degree::neg_infinity();
    return terms_.begin()->first.degree();
  }
  // Lowest total degree of a term.
  Order order() const {
    if (terms_.empty()) return Order::pos_infinity();
    return terms_.rbegin()->first.degree();
  }
  Degree degree_in(std::size_t var) const {
    if (terms_.empty()) return Degree::neg_infinity();
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
  }
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = terms_.begin()->first.degree();
    return terms_.rbegin()->first.degree() == d;
  }

  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const F& leading_coefficient() const { return terms_.begin()->second; }

  F coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Traits::zero() : it->second;
  }
  F constant_term() const { return coefficient(Monomial{}); }

  Poly homogeneous_part(int d) const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_)
      if (m.degree() == d) r.terms_.emplace(m, c);
    return r;
  }

  void add_term(const Monomial& m, const F& c) {
    if (Traits::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (Traits::is_zero(it->second)) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const F& s) {
    if (Traits::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= s;
      if (Traits::is_zero(it->second))
        it = terms_.erase(it);
      else
        ++it;
    }
    return *this;
  }
  Poly& operator/=(const F& s) {
    for (auto& [m, c] : terms_) c /= s;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const F& s) { return a *= s; }
  friend Poly operator*(const F& s, Poly a) { return a *= s; }
  friend Poly operator/(Poly a, const F& s) { return a /= s; }
  Poly operator-() const {
    Poly r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_arity(b);
    Poly r(a.nvars_);
    if (a.is_zero() || b.is_zero()) return r;
    const Poly& big = a.size() >= b.size() ? a : b;
    const Poly& small = a.size() >= b.size() ? b : a;
    for (const auto& [mb, cb] : small.terms_) {
      for (const auto& [ma, ca] : big.terms_) r.add_term(ma * mb, ca * cb);
    }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly pow(unsigned e) const {
    Poly result = constant(nvars_, Traits::one());
    Poly base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base = base * base;
    }
    return result;
  }

  // Exact equality; the numeric backend compares within tolerance.
  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_) return false;
    if constexpr (is_exact_v<F>) {
      if (a.terms_.size() != b.terms_.size()) return false;
      auto ia = a.terms_.begin();
      for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib)
        if (!(ia->first == ib->first) || !(ia->second == ib->second)) return false;
      return true;
    } else {
      return (a - b).max_abs_coefficient() <= kNumericTol * std::max(1.0, std::max(a.max_abs_coefficient(), b.max_abs_coefficient()));
    }
  }

  double max_abs_coefficient() const {
    double m = 0;
    for (const auto& [mon, c] : terms_) m = std::max(m, std::abs(Traits::to_double(c)));
    return m;
  }

  std::string to_string(std::span<const std::string> names = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::string cs = Traits::str(c);
      bool neg = !cs.empty() && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos;
      if (neg) cs = cs.substr(1);
      if (cs.find_first_of("+-", 1) != std::string::npos || cs.find('*') != std::string::npos) cs = "(" + cs + ")";
      if (first)
        os << (neg ? "-" : "");
      else
        os << (neg ? " - " : " + ");
      first = false;
      bool unit = (cs == "1");
      if (!unit || m.degree() == 0) os << cs;
      bool need_star = !unit;
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (m[i] == 0) continue;
        if (need_star) os << "*";
        need_star = true;
        os << var_name(i, names);
        if (m[i] > 1) os << "^" << m[i];
      }
    }
    return os.str();
  }

  static std::string var_name(std::size_t i, std::span<const std::string> names = {}) {
    if (i < names.size()) return names[i];
    return "x" + std::to_string(i + 1);
  }

 private:
  void check_arity(const Poly& o) const {
    if (o.nvars_ != nvars_)
      throw ArityMismatch("polynomials in " + std::to_string(nvars_) + " and " + std::to_string(o.nvars_) +
                          " variables");
  }

  std::size_t nvars_;
  TermMap terms_;
};

// Division without a zero remainder; the quotient is not defined.
template <Field F>
class NotDivisible : public NotDivisibleError {
 public:
  NotDivisible(const std::string& what, Poly<F> remainder)
      : NotDivisibleError(what, remainder.to_string()), remainder_(std::move(remainder)) {}
  const Poly<F>& remainder() const { return remainder_; }

 private:
  Poly<F> remainder_;
};

template <Field F>
Poly<F> differentiate(const Poly<F>& f, std::size_t var) {
  if (var >= f.nvars()) throw ArityMismatch("variable index out of range");
  Poly<F> r(f.nvars());
  for (const auto& [m, c] : f.terms()) {
    int e = m[var];
    if (e == 0) continue;
    Monomial dm = m;
    dm.e[var] = static_cast<std::uint8_t>(e - 1);
    r.add_term(dm, c * from_int<F>(e));
  }
  return r;
}

// D^k f for a multi-index k.
template <Field F>
Poly<F> differentiate(const Poly<F>& f, const Monomial& k) {
  Poly<F> r = f;
  for (std::size_t v = 0; v < f.nvars(); ++v)
    for (int i = 0; i < k[v]; ++i) r = differentiate(r, v);
  return r;
}

// Caches successive powers of a polynomial.
template <Field F>
class PowerCache {
 public:
  explicit PowerCache(Poly<F> base) : powers_{Poly<F>::constant(base.nvars(), field_traits<F>::one()), std::move(base)} {}
  const Poly<F>& get(unsigned e) {
    while (powers_.size() <= e) powers_.push_back(powers_.back() * powers_[1]);
    return powers_[e];
  }

 private:
  std::vector<Poly<F>> powers_;
};

// F(P_1, ..., P_m): substitutes the polynomials P_i for the variables of F.
template <Field F>
Poly<F> compose(const Poly<F>& outer, std::span<const Poly<F>> inner) {
  if (inner.size() != outer.nvars())
    throw ArityMismatch("composition needs " + std::to_string(outer.nvars()) + " inner polynomials, got " +
                        std::to_string(inner.size()));
  std::size_t n = inner.empty() ? 0 : inner[0].nvars();
  for (const auto& p : inner)
    if (p.nvars() != n) throw ArityMismatch("inner polynomials have different arities");
  std::vector<PowerCache<F>> cache;
  cache.reserve(inner.size());
  for (const auto& p : inner) cache.emplace_back(p);
  Poly<F> result(n);
  for (const auto& [m, c] : outer.terms()) {
    Poly<F> t = Poly<F>::constant(n, c);
    for (std::size_t i = 0; i < inner.size(); ++i)
      if (m[i] > 0) t = t * cache[i].get(m[i]);
    result += t;
  }
  return result;
}

template <Field F>
Poly<F> compose(const Poly<F>& outer, const std::vector<Poly<F>>& inner) {
  return compose(outer, std::span<const Poly<F>>(inner));
}

// f(w x) for a linear map w given row-major; monomial matrices take a fast path.
template <Field F>
Poly<F> substitute_linear(const Poly<F>& f, const std::vector<std::vector<F>>& w) {
  std::size_t n = f.nvars();
  if (w.size() != n) throw ArityMismatch("linear substitution matrix has wrong size");
  bool monomial_matrix = true;
  std::vector<std::size_t> col(n);
  for (std::size_t i = 0; i < n && monomial_matrix; ++i) {
    int nz = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!field_traits<F>::is_zero(w[i][j])) {
        ++nz;
        col[i] = j;
      }
    }
    if (nz != 1) monomial_matrix = false;
  }
  Poly<F> r(n);
  if (monomial_matrix) {
    for (const auto& [m, c] : f.terms()) {
      Monomial img;
      F coef = c;
      for (std::size_t i = 0; i < n; ++i) {
        if (m[i] == 0) continue;
        img.e[col[i]] = static_cast<std::uint8_t>(img.e[col[i]] + m[i]);
        coef *= field_pow(w[i][col[i]], static_cast<unsigned>(m[i]));
      }
      r.add_term(img, coef);
    }
    return r;
  }
  std::vector<Poly<F>> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) rows.push_back(Poly<F>::linear(std::span<const F>(w[i])));
  return compose(f, rows);
}

template <Field F>
F evaluate(const Poly<F>& f, std::span<const F> x) {
  if (x.size() != f.nvars()) throw ArityMismatch("point dimension does not match polynomial arity");
  F acc = field_traits<F>::zero();
  for (const auto& [m, c] : f.terms()) {
    F t = c;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (m[i]) t *= field_pow(x[i], static_cast<unsigned>(m[i]));
    acc += t;
  }
  return acc;
}

template <Field F>
F evaluate(const Poly<F>& f, const std::vector<F>& x) {
  return evaluate(f, std::span<const F>(x));
}

// Evaluates in binary64 regardless of the coefficient field.
template <Field F>
double evaluate_numeric(const Poly<F>& f, std::span<const double> x) {
  if (x.size() != f.nvars()) throw ArityMismatch("point dimension does not match polynomial arity");
  double acc = 0;
  for (const auto& [m, c] : f.terms()) {
    double t = field_traits<F>::to_double(c);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (m[i]) t *= std::pow(x[i], m[i]);
    acc += t;
  }
  return acc;
}

template <Field F>
struct DivisionResult {
  Poly<F> quotient;
  Poly<F> remainder;
};

// Multivariate division by a single divisor in grlex order.
template <Field F>
DivisionResult<F> divide_with_remainder(Poly<F> f, const Poly<F>& g) {
  if (g.is_zero()) throw InvalidArgument("division by the zero polynomial");
  if (f.nvars() != g.nvars()) throw ArityMismatch("division of polynomials with different arities");
  DivisionResult<F> out{Poly<F>(f.nvars()), Poly<F>(f.nvars())};
  const Monomial& lm = g.leading_monomial();
  const F& lc = g.leading_coefficient();
  const bool unit_lc = lc == field_traits<F>::one();
  while (!f.is_zero()) {
    auto lead = *f.terms().begin();
    if (lm.divides(lead.first)) {
      Monomial qm = lead.first / lm;
      F qc = unit_lc ? lead.second : lead.second / lc;
      out.quotient.add_term(qm, qc);
      Poly<F> sub(f.nvars());
      for (const auto& [m, c] : g.terms()) sub.add_term(m * qm, c * qc);
      f -= sub;
      // cancellation of the leading term is exact in exact fields; enforce it numerically
      if constexpr (!is_exact_v<F>) {
        if (!f.is_zero() && f.leading_monomial() == lead.first) {
          Poly<F> fix(f.nvars());
          fix.add_term(lead.first, f.leading_coefficient());
          f -= fix;
        }
      }
    } else {
      out.remainder.add_term(lead.first, lead.second);
      Poly<F> fix(f.nvars());
      fix.add_term(lead.first, lead.second);
      f -= fix;
    }
  }
  return out;
}

// Returns q with f = q*g, or throws NotDivisible carrying the remainder.
template <Field F>
Poly<F> divide_exact(const Poly<F>& f, const Poly<F>& g) {
  auto res = divide_with_remainder(f, g);
  bool zero_rem = res.remainder.is_zero();
  if constexpr (!is_exact_v<F>) {
    zero_rem = res.remainder.max_abs_coefficient() <= kNumericTol * std::max(1.0, f.max_abs_coefficient());
  }
  if (!zero_rem) throw NotDivisible<F>("polynomial is not divisible by " + g.to_string(), res.remainder);
  return res.quotient;
}

// Applies a coefficient map, e.g. to embed Q into Q(sqrt d) or into binary64.
template <Field G, Field F, class Fn>
Poly<G> map_coefficients(const Poly<F>& f, Fn&& fn) {
  Poly<G> r(f.nvars());
  for (const auto& [m, c] : f.terms()) r.add_term(m, fn(c));
  return r;
}

template <Field G>
Poly<G> embed(const Poly<Rational>& f) {
  return map_coefficients<G>(f, [](const Rational& c) { return from_rational<G>(c); });
}

template <Field F>
Poly<double> to_numeric(const Poly<F>& f) {
  return map_coefficients<double>(f, [](const F& c) { return field_traits<F>::to_double(c); });
}

// Multi-indices k with |k| <= m in n variables, in increasing graded order.
inline std::vector<Monomial> multi_indices(std::size_t n, int max_degree) {
  std::vector<Monomial> out;
  Monomial cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t var, int left) {
    if (var == n) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur.e[var] = static_cast<std::uint8_t>(e);
      rec(var + 1, left - e);
    }
    cur.e[var] = 0;
  };
  rec(0, max_degree);
  std::stable_sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.e > b.e;
  });
  return out;
}

}  // namespace chev
