#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "chev/matrix.hpp"
#include "chev/poly.hpp"

namespace chev {

using Rng = std::mt19937_64;

// Independent stream per (seed, case index) so cases can be rerun alone.
inline Rng case_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

inline long uniform_int(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline double uniform_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// Small rational p/q with |p| <= num_bound, 1 <= q <= den_bound.
inline Rational random_rational(Rng& rng, long num_bound = 5, long den_bound = 3) {
  return Rational(uniform_int(rng, -num_bound, num_bound), uniform_int(rng, 1, den_bound));
}

template <Field F>
F random_scalar(Rng& rng) {
  if constexpr (is_exact_v<F>) {
    return from_rational<F>(random_rational(rng));
  } else {
    return uniform_real(rng, -1.0, 1.0);
  }
}

template <Field F>
Vec<F> random_point(Rng& rng, std::size_t n) {
  Vec<F> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_scalar<F>(rng));
  return v;
}

// Sparse random polynomial: `terms` monomials of total degree <= max_degree
// with small nonzero rational coefficients.
template <Field F>
Poly<F> random_poly(Rng& rng, std::size_t nvars, int max_degree, int terms) {
  Poly<F> f(nvars);
  for (int t = 0; t < terms; ++t) {
    int deg = static_cast<int>(uniform_int(rng, 0, max_degree));
    Monomial m;
    for (int k = 0; k < deg; ++k) m.e[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(nvars) - 1))]++;
    Rational c(0);
    while (c.is_zero()) c = random_rational(rng, 4, 3);
    f.add_term(m, from_rational<F>(c));
  }
  return f;
}

}  // namespace chev
