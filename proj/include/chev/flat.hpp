#pragma once

#include <vector>

#include "chev/matrix.hpp"
#include "chev/poly.hpp"

namespace chev {

// Linear subspace of F^n given by a direction basis, together with a
// complementary normal basis; both together span F^n.
template <Field F>
class Flat {
 public:
  Flat() = default;

  // Common zero set of the given linear forms (covectors).
  static Flat from_forms(const std::vector<Vec<F>>& forms, std::size_t n) {
    Flat fl;
    fl.n_ = n;
    if (forms.empty()) {
      for (std::size_t i = 0; i < n; ++i) fl.directions_.push_back(unit(n, i));
      return fl;
    }
    Matrix<F> m(forms.size(), n);
    for (std::size_t i = 0; i < forms.size(); ++i) {
      if (forms[i].size() != n) throw ArityMismatch("linear form has wrong dimension");
      for (std::size_t j = 0; j < n; ++j) m(i, j) = forms[i][j];
    }
    auto pivots = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    for (std::size_t c = 0; c < n; ++c) {
      if (is_pivot[c]) continue;
      Vec<F> d = unit(n, c);
      for (std::size_t r = 0; r < pivots.size(); ++r) d[pivots[r]] = -m(r, c);
      fl.directions_.push_back(std::move(d));
    }
    for (auto p : pivots) fl.normals_.push_back(unit(n, p));
    return fl;
  }

  // Span of the given vectors; the normal basis is completed from unit vectors.
  static Flat from_directions(const std::vector<Vec<F>>& dirs, std::size_t n) {
    Flat fl;
    fl.n_ = n;
    std::vector<Vec<F>> basis;
    for (const auto& d : dirs) {
      if (d.size() != n) throw ArityMismatch("direction has wrong dimension");
      basis.push_back(d);
      if (rank_of_vectors(basis, n) < basis.size())
        basis.pop_back();
      else
        fl.directions_.push_back(d);
    }
    for (std::size_t i = 0; i < n && basis.size() < n; ++i) {
      basis.push_back(unit(n, i));
      if (rank_of_vectors(basis, n) < basis.size())
        basis.pop_back();
      else
        fl.normals_.push_back(unit(n, i));
    }
    return fl;
  }

  static Flat origin(std::size_t n) { return from_directions({}, n); }
  static Flat whole(std::size_t n) { return from_forms({}, n); }

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return directions_.size(); }
  std::size_t codim() const { return normals_.size(); }
  const std::vector<Vec<F>>& directions() const { return directions_; }
  const std::vector<Vec<F>>& normals() const { return normals_; }

  // Whether the form vanishes identically on the flat.
  bool annihilated_by(const Vec<F>& form) const {
    for (const auto& d : directions_)
      if (!field_traits<F>::is_zero(dot(form, d))) return false;
    return true;
  }

  bool contains(const Vec<F>& v) const {
    auto basis = directions_;
    std::size_t r = rank_of_vectors(basis, n_);
    basis.push_back(v);
    return rank_of_vectors(basis, n_) == r;
  }

  // x = sum_a t_a d_a + sum_b u_b n_b as linear polynomials in (t, u).
  std::vector<Poly<F>> coordinate_change() const {
    std::vector<Poly<F>> xs;
    for (std::size_t i = 0; i < n_; ++i) {
      Poly<F> xi(n_);
      std::size_t v = 0;
      for (const auto& d : directions_) xi.add_term(Monomial::unit(v++), d[i]);
      for (const auto& nb : normals_) xi.add_term(Monomial::unit(v++), nb[i]);
      xs.push_back(std::move(xi));
    }
    return xs;
  }

 private:
  static Vec<F> unit(std::size_t n, std::size_t i) {
    Vec<F> v(n, field_traits<F>::zero());
    v[i] = field_traits<F>::one();
    return v;
  }

  std::size_t n_ = 0;
  std::vector<Vec<F>> directions_;
  std::vector<Vec<F>> normals_;
};

// Minimal total degree in the normal coordinates after the exact change of
// variables x = D t + N u. f is (m-1)-flat on the flat iff the result is >= m.
template <Field F>
Order vanishing_order(const Poly<F>& f, const Flat<F>& flat) {
  if (f.nvars() != flat.ambient_dim()) throw ArityMismatch("flat and polynomial live in different spaces");
  if (f.is_zero()) return Order::pos_infinity();
  Poly<F> g = compose(f, flat.coordinate_change());
  if (g.is_zero()) return Order::pos_infinity();
  std::size_t first_normal = flat.dim();
  int best = std::numeric_limits<int>::max();
  for (const auto& [m, c] : g.terms()) {
    int ud = 0;
    for (std::size_t v = first_normal; v < f.nvars(); ++v) ud += m[v];
    best = std::min(best, ud);
  }
  return best;
}

}  // namespace chev
