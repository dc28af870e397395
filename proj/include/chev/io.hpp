#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "chev/coxeter.hpp"
#include "chev/poly.hpp"

namespace chev {

using json = nlohmann::ordered_json;

// Field elements: rationals as "p/q" strings, quadratic elements as
// {"a": "p/q", "b": "p/q", "d": D}, binary64 as plain numbers.
template <Field F>
json field_to_json(const F& x) {
  if constexpr (std::is_same_v<F, Rational>) {
    return x.str();
  } else if constexpr (std::is_same_v<F, double>) {
    return x;
  } else {
    return json{{"a", x.a().str()}, {"b", x.b().str()}, {"d", F::radicand}};
  }
}

namespace detail {

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) throw FieldMismatch("binary64 coefficient given to an exact field");
  throw ParseError("coefficient must be a string or number, got " + j.dump());
}

}  // namespace detail

template <Field F>
F field_from_json(const json& j) {
  if (j.is_object()) {
    if (!j.contains("a") || !j.contains("b") || !j.contains("d")) throw ParseError("quadratic coefficient needs a, b, d");
    int d = j.at("d").get<int>();
    Rational a = detail::rational_from_json(j.at("a"));
    Rational b = detail::rational_from_json(j.at("b"));
    if constexpr (std::is_same_v<F, double>) {
      if (d <= 1) throw ParseError("radicand must exceed 1");
      return a.to_double() + b.to_double() * std::sqrt(double(d));
    } else if constexpr (std::is_same_v<F, Rational>) {
      if (!b.is_zero()) throw FieldMismatch("coefficient in Q(sqrt " + std::to_string(d) + ") given to the rational field");
      return a;
    } else {
      if (d != F::radicand && !b.is_zero())
        throw FieldMismatch("coefficient in Q(sqrt " + std::to_string(d) + ") given to Q(sqrt " + std::to_string(F::radicand) + ")");
      return F(a, b);
    }
  }
  if constexpr (std::is_same_v<F, double>) {
    if (j.is_number()) return j.get<double>();
    return detail::rational_from_json(j).to_double();
  } else {
    return F(detail::rational_from_json(j));
  }
}

template <Field F>
json vec_to_json(const Vec<F>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(field_to_json(x));
  return a;
}

template <Field F>
Vec<F> vec_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("point must be a JSON array");
  Vec<F> v;
  for (const auto& x : j) v.push_back(field_from_json<F>(x));
  return v;
}

// Terms are written in decreasing graded-lex order.
template <Field F>
json poly_to_json(const Poly<F>& f) {
  json terms = json::array();
  for (const auto& [m, c] : f.terms()) {
    json e = json::array();
    for (std::size_t i = 0; i < f.nvars(); ++i) e.push_back(m[i]);
    terms.push_back(json{{"exp", e}, {"coef", field_to_json(c)}});
  }
  return json{{"nvars", f.nvars()}, {"terms", terms}};
}

template <Field F>
Poly<F> poly_from_json(const json& j) {
  if (!j.is_object() || !j.contains("nvars") || !j.contains("terms")) throw ParseError("polynomial needs nvars and terms");
  auto n = j.at("nvars").get<long>();
  if (n < 0 || n > static_cast<long>(kMaxVars)) throw ArityMismatch("unsupported number of variables " + std::to_string(n));
  Poly<F> f(static_cast<std::size_t>(n));
  for (const auto& t : j.at("terms")) {
    const auto& e = t.at("exp");
    if (!e.is_array() || e.size() != static_cast<std::size_t>(n)) throw ArityMismatch("exponent length differs from nvars");
    std::vector<int> exps;
    for (const auto& x : e) {
      long v = x.get<long>();
      if (v < 0) throw ParseError("negative exponent");
      if (v > 255) throw ExponentOverflow("exponent " + std::to_string(v) + " too large");
      exps.push_back(static_cast<int>(v));
    }
    f.add_term(Monomial(std::span<const int>(exps)), field_from_json<F>(t.at("coef")));
  }
  return f;
}

template <Field F>
json group_to_json(const ReflectionGroup<F>& g) {
  json refl = json::array();
  for (const auto& r : g.reflections()) refl.push_back(json{{"id", r.hyperplane_id}, {"lambda", vec_to_json(r.form)}});
  return json{{"spec", g.spec().str()}, {"field", field_traits<F>::tag}, {"dim", g.dim()}, {"reflections", refl}};
}

}  // namespace chev
