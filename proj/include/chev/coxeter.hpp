#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <tuple>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "chev/matrix.hpp"

namespace chev {

enum class Family { A, B, D, I2, H3 };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::D: return "D";
    case Family::I2: return "I2";
    case Family::H3: return "H";
  }
  return "?";
}

// Irreducible finite Coxeter type.
struct CoxeterTypeSpec {
  Family family = Family::A;
  int rank = 1;
  int dihedral_order = 0;  // only for I2

  static CoxeterTypeSpec make(Family f, int rank, int k = 0) {
    CoxeterTypeSpec s{f, rank, k};
    s.validate();
    return s;
  }

  void validate() const {
    if (rank < 1) throw UnsupportedRank("rank must be positive");
    switch (family) {
      case Family::D:
        if (rank < 3) throw UnsupportedRank("D_n requires n >= 3, got D" + std::to_string(rank));
        break;
      case Family::H3:
        if (rank != 3) throw UnsupportedRank("only H3 is supported in the H family");
        break;
      case Family::I2:
        if (rank != 2) throw UnsupportedRank("I2(k) has rank 2");
        if (dihedral_order < 3) throw UnsupportedRank("I2(k) requires k >= 3");
        break;
      default:
        break;
    }
  }

  // "A3", "b4", "D4", "I2(7)", "H3"; case-insensitive.
  static CoxeterTypeSpec parse(std::string_view text) {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (s.empty()) throw ParseError("empty group spec");
    auto parse_int = [&](std::string_view digits) {
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("bad group spec '" + std::string(text) + "'");
      if (digits.size() > 6) throw UnsupportedRank("rank too large in '" + std::string(text) + "'");
      return std::stoi(std::string(digits));
    };
    if (s.rfind("I2(", 0) == 0) {
      if (s.back() != ')') throw ParseError("bad dihedral spec '" + std::string(text) + "'");
      int k = parse_int(std::string_view(s).substr(3, s.size() - 4));
      return make(Family::I2, 2, k);
    }
    char f = s[0];
    int r = parse_int(std::string_view(s).substr(1));
    switch (f) {
      case 'A': return make(Family::A, r);
      case 'B': return make(Family::B, r);
      case 'D': return make(Family::D, r);
      case 'H': return make(Family::H3, r);
      case 'C': case 'E': case 'F': case 'G':
        throw UnsupportedFamily("family " + std::string(1, f) + " is not supported");
      default:
        throw ParseError("unknown group family in '" + std::string(text) + "'");
    }
  }

  std::string str() const {
    if (family == Family::I2) return "I2(" + std::to_string(dihedral_order) + ")";
    return std::string(family_name(family)) + std::to_string(rank);
  }

  // Degrees of the basic invariants, increasing.
  std::vector<int> degrees() const {
    std::vector<int> k;
    switch (family) {
      case Family::A:
        for (int i = 2; i <= rank + 1; ++i) k.push_back(i);
        break;
      case Family::B:
        for (int i = 1; i <= rank; ++i) k.push_back(2 * i);
        break;
      case Family::D:
        for (int i = 1; i < rank; ++i) k.push_back(2 * i);
        k.push_back(rank);
        break;
      case Family::I2:
        k = {2, dihedral_order};
        break;
      case Family::H3:
        k = {2, 6, 10};
        break;
    }
    std::sort(k.begin(), k.end());
    return k;
  }

  int coxeter_number() const { return degrees().back(); }
  int reflection_count() const {
    int d = 0;
    for (int k : degrees()) d += k - 1;
    return d;
  }
  long order() const {
    long o = 1;
    for (int k : degrees()) o *= k;
    return o;
  }

  // Identifies coincident types: B1 = A1, I2(3) = A2, I2(4) = B2.
  CoxeterTypeSpec canonical() const {
    if (family == Family::B && rank == 1) return {Family::A, 1, 0};
    if (family == Family::I2 && dihedral_order == 3) return {Family::A, 2, 0};
    if (family == Family::I2 && dihedral_order == 4) return {Family::B, 2, 0};
    if (family == Family::D && rank == 3) return {Family::A, 3, 0};
    return *this;
  }

  friend bool operator==(const CoxeterTypeSpec& a, const CoxeterTypeSpec& b) {
    return a.family == b.family && a.rank == b.rank && a.dihedral_order == b.dihedral_order;
  }
  friend bool operator<(const CoxeterTypeSpec& a, const CoxeterTypeSpec& b) {
    return std::tie(a.family, a.rank, a.dihedral_order) < std::tie(b.family, b.rank, b.dihedral_order);
  }
};

template <Field F>
struct Reflection {
  Vec<F> form;      // normalised: first nonzero coefficient is 1
  Vec<F> root;      // G^{-1} form, the reflected vector
  Matrix<F> matrix;
  std::size_t hyperplane_id = 0;
};

inline constexpr std::size_t kDefaultElementCap = 10000;

namespace detail {

template <Field F>
struct VecKeyLess {
  bool operator()(const std::vector<F>& a, const std::vector<F>& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const F& x, const F& y) { return field_traits<F>::key_less(x, y); });
  }
};

template <Field F>
bool vec_near(const std::vector<F>& a, const std::vector<F>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!field_traits<F>::near(a[i], b[i])) return false;
  return true;
}

// Deduplicating store of vectors: exact keys for exact fields, tolerance scan
// for binary64.
template <Field F>
class VecSet {
 public:
  // Returns true when v was not present.
  bool insert(const std::vector<F>& v) {
    if constexpr (is_exact_v<F>) {
      return exact_.insert(v).second;
    } else {
      for (const auto& w : numeric_)
        if (vec_near(v, w)) return false;
      numeric_.push_back(v);
      return true;
    }
  }
  bool contains(const std::vector<F>& v) const {
    if constexpr (is_exact_v<F>) {
      return exact_.count(v) > 0;
    } else {
      for (const auto& w : numeric_)
        if (vec_near(v, w)) return true;
      return false;
    }
  }

 private:
  std::set<std::vector<F>, VecKeyLess<F>> exact_;
  std::vector<std::vector<F>> numeric_;
};

template <Field F>
Vec<F> normalize_form(Vec<F> f) {
  auto it = std::find_if(f.begin(), f.end(), [](const F& x) { return !field_traits<F>::is_zero(x); });
  if (it == f.end()) throw InvalidArgument("zero linear form");
  F lead = *it;
  for (auto& x : f) x = x / lead;
  return f;
}

}  // namespace detail

// Closure of a set of matrices under multiplication, starting from the identity.
template <Field F>
std::vector<Matrix<F>> matrix_closure(const std::vector<Matrix<F>>& gens, std::size_t n, std::size_t cap) {
  std::vector<Matrix<F>> elems{Matrix<F>::identity(n)};
  detail::VecSet<F> seen;
  seen.insert(elems[0].data());
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : gens) {
      Matrix<F> h = g * elems[head];
      if (seen.insert(h.data())) {
        if (elems.size() >= cap) throw GroupTooLarge("group exceeds the element cap of " + std::to_string(cap));
        elems.push_back(std::move(h));
      }
    }
  }
  return elems;
}

template <Field F>
class ReflectionGroup;

template <Field F>
using GroupPtr = std::shared_ptr<const ReflectionGroup<F>>;

// Finite reflection group given by a Gram form and its reflection list. The
// element list is completed lazily on first use.
template <Field F>
class ReflectionGroup {
 public:
  ReflectionGroup(CoxeterTypeSpec spec, Matrix<F> gram, const std::vector<Vec<F>>& forms, std::size_t cap = kDefaultElementCap)
      : spec_(spec), gram_(std::move(gram)), cap_(cap) {
    std::size_t n = gram_.rows();
    auto ginv = inverse(gram_);
    if (!ginv) throw InvalidArgument("singular Gram matrix");
    gram_inv_ = *ginv;
    detail::VecSet<F> seen;
    for (const auto& raw : forms) {
      Vec<F> form = detail::normalize_form(raw);
      if (!seen.insert(form)) continue;
      Reflection<F> r;
      r.form = form;
      r.root = gram_inv_.apply(form);
      F denom = dot(form, r.root);
      r.matrix = Matrix<F>::identity(n);
      F scale = from_int<F>(2) / denom;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r.matrix(i, j) -= scale * r.root[i] * form[j];
      r.hyperplane_id = reflections_.size();
      reflections_.push_back(std::move(r));
    }
  }

  ReflectionGroup(const ReflectionGroup&) = delete;
  ReflectionGroup& operator=(const ReflectionGroup&) = delete;

  const CoxeterTypeSpec& spec() const { return spec_; }
  std::size_t dim() const { return gram_.rows(); }
  const Matrix<F>& gram() const { return gram_; }
  const std::vector<Reflection<F>>& reflections() const { return reflections_; }
  std::size_t reflection_count() const { return reflections_.size(); }
  std::size_t element_cap() const { return cap_; }

  const std::vector<Matrix<F>>& elements() const {
    std::call_once(elements_once_, [this] {
      if (spec_.order() > static_cast<long>(cap_))
        throw GroupTooLarge(spec_.str() + " has " + std::to_string(spec_.order()) + " elements, cap is " + std::to_string(cap_));
      std::vector<Matrix<F>> gens;
      for (const auto& r : reflections_) gens.push_back(r.matrix);
      elements_ = matrix_closure(gens, dim(), cap_);
    });
    return elements_;
  }

  std::size_t order() const { return elements().size(); }

  // All w with w^2 = 1, the identity included.
  std::vector<Matrix<F>> involutions() const {
    std::vector<Matrix<F>> out;
    for (const auto& w : elements())
      if ((w * w).is_identity()) out.push_back(w);
    return out;
  }

  // Counts reflections among the enumerated elements: w != 1, w^2 = 1, rank(w - 1) = 1.
  std::size_t reflections_among_elements() const {
    std::size_t count = 0;
    Matrix<F> id = Matrix<F>::identity(dim());
    for (const auto& w : elements()) {
      if (w.is_identity() || !(w * w).is_identity()) continue;
      if (rank(w - id) == 1) ++count;
    }
    return count;
  }

  std::vector<Vec<F>> orbit(const Vec<F>& x) const {
    if (x.size() != dim()) throw ArityMismatch("point has wrong dimension");
    std::vector<Vec<F>> out;
    detail::VecSet<F> seen;
    for (const auto& w : elements()) {
      Vec<F> y = w.apply(x);
      if (seen.insert(y)) out.push_back(std::move(y));
    }
    return out;
  }

  std::size_t stabilizer_order(const Vec<F>& x) const {
    std::size_t c = 0;
    for (const auto& w : elements())
      if (detail::vec_near(w.apply(x), x)) ++c;
    return c;
  }

  // Preserves the Gram form: w^T G w = G.
  bool is_orthogonal(const Matrix<F>& w) const { return (w.transpose() * gram_ * w).equals(gram_); }

  std::optional<std::size_t> find_hyperplane(const Vec<F>& form) const {
    Vec<F> nf = detail::normalize_form(form);
    for (const auto& r : reflections_)
      if (detail::vec_near(r.form, nf)) return r.hyperplane_id;
    return std::nullopt;
  }

  std::optional<std::size_t> find_reflection(const Matrix<F>& m) const {
    for (const auto& r : reflections_)
      if (r.matrix.equals(m)) return r.hyperplane_id;
    return std::nullopt;
  }

 private:
  CoxeterTypeSpec spec_;
  Matrix<F> gram_;
  Matrix<F> gram_inv_;
  std::size_t cap_;
  std::vector<Reflection<F>> reflections_;
  mutable std::once_flag elements_once_;
  mutable std::vector<Matrix<F>> elements_;
};

namespace detail {

// (cos, sin) of a multiple of 30 degrees, exactly when the field allows.
template <Field F>
std::optional<std::pair<F, F>> exact_cos_sin_deg(int deg) {
  deg = ((deg % 360) + 360) % 360;
  if (deg % 30 != 0) return std::nullopt;
  auto half = from_rational<F>(Rational(1, 2));
  std::optional<F> r3 = field_traits<F>::sqrt_int(3);
  auto c = [&](int d) -> std::optional<F> {
    d = ((d % 360) + 360) % 360;
    switch (d) {
      case 0: return from_int<F>(1);
      case 90: case 270: return from_int<F>(0);
      case 180: return from_int<F>(-1);
      case 60: case 300: return half;
      case 120: case 240: return -half;
      default:
        if (!r3) return std::nullopt;
        if (d == 30 || d == 330) return *r3 * half;
        return -(*r3 * half);
    }
  };
  auto cv = c(deg), sv = c(deg - 90);
  if (!cv || !sv) return std::nullopt;
  return std::make_pair(*cv, *sv);
}

}  // namespace detail

// Whether the coefficient field can carry the group's root data exactly.
template <Field F>
bool field_supports(const CoxeterTypeSpec& spec) {
  if constexpr (!is_exact_v<F>) {
    return true;
  } else {
    switch (spec.family) {
      case Family::A: case Family::B: case Family::D: return true;
      case Family::H3: return field_traits<F>::sqrt_int(5).has_value();
      case Family::I2: {
        int k = spec.dihedral_order;
        if (k == 4) return true;
        if (k == 3 || k == 6) return field_traits<F>::sqrt_int(3).has_value();
        return false;
      }
    }
    return false;
  }
}

// Linear forms x_j (j = 1..n+1) of the ambient coordinates of A_n, written in
// the essential coordinates y with x_i = y_i (i <= n), x_{n+1} = -(y_1+...+y_n).
inline std::vector<Vec<Rational>> a_series_coordinate_forms(int n) {
  std::vector<Vec<Rational>> xs;
  for (int i = 0; i < n; ++i) {
    Vec<Rational> v(n, Rational(0));
    v[i] = Rational(1);
    xs.push_back(v);
  }
  xs.emplace_back(n, Rational(-1));
  return xs;
}

// Unit normals of the mirrors of I2(k); mirror j sits at angle j*pi/k.
template <Field F>
std::vector<Vec<F>> dihedral_mirror_normals(int k) {
  std::vector<Vec<F>> out;
  for (int j = 0; j < k; ++j) {
    if constexpr (is_exact_v<F>) {
      if (k == 4) {
        // mirrors at multiples of 45 degrees; normals need only be proportional
        static const int dirs[4][2] = {{0, 1}, {-1, 1}, {-1, 0}, {-1, -1}};
        out.push_back({from_int<F>(dirs[j][0]), from_int<F>(dirs[j][1])});
        continue;
      }
      auto cs = detail::exact_cos_sin_deg<F>(j * 180 / k + 90);
      if (!cs) throw UnsupportedFieldExact("I2(" + std::to_string(k) + ") needs the numeric backend");
      out.push_back({cs->first, cs->second});
    } else {
      double th = std::numbers::pi * j / k;
      out.push_back({-std::sin(th), std::cos(th)});
    }
  }
  return out;
}

// Unit vectors to the vertices of a regular k-gon, vertex j at angle 2*pi*j/k.
template <Field F>
std::vector<Vec<F>> polygon_vertices(int k) {
  std::vector<Vec<F>> out;
  for (int j = 0; j < k; ++j) {
    if constexpr (is_exact_v<F>) {
      if ((360 * j) % k != 0) throw UnsupportedFieldExact("polygon vertex not exactly representable");
      auto cs = detail::exact_cos_sin_deg<F>(360 * j / k);
      if (!cs) throw UnsupportedFieldExact("I2(" + std::to_string(k) + ") needs the numeric backend");
      out.push_back({cs->first, cs->second});
    } else {
      double th = 2 * std::numbers::pi * j / k;
      out.push_back({std::cos(th), std::sin(th)});
    }
  }
  return out;
}

// golden ratio in the field
template <Field F>
F golden_ratio() {
  auto r5 = field_traits<F>::sqrt_int(5);
  if (!r5) throw UnsupportedFieldExact("H3 needs sqrt(5)");
  return (from_int<F>(1) + *r5) / from_int<F>(2);
}

// Five-fold axes of the icosahedron (one per antipodal pair): cyclic
// permutations of (0, 1, +-tau).
template <Field F>
std::vector<Vec<F>> icosahedral_axes() {
  F t = golden_ratio<F>();
  F z = from_int<F>(0), o = from_int<F>(1);
  std::vector<Vec<F>> out;
  for (F s : {t, -t}) {
    Vec<F> v{z, o, s};
    out.push_back(v);
    out.push_back({v[2], v[0], v[1]});
    out.push_back({v[1], v[2], v[0]});
  }
  return out;
}

template <Field F>
GroupPtr<F> build_group(const CoxeterTypeSpec& spec, std::size_t cap = kDefaultElementCap) {
  spec.validate();
  if (!field_supports<F>(spec))
    throw UnsupportedFieldExact(spec.str() + " is not exactly representable over the " +
                                std::string(field_traits<F>::tag) + " field");
  const int n = spec.rank;
  std::vector<Vec<F>> forms;
  Matrix<F> gram = Matrix<F>::identity(static_cast<std::size_t>(n));
  auto unit = [&](int i) {
    Vec<F> v(n, from_int<F>(0));
    v[i] = from_int<F>(1);
    return v;
  };
  switch (spec.family) {
    case Family::A: {
      auto xs = a_series_coordinate_forms(n);
      for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
          Vec<F> f(n);
          for (int c = 0; c < n; ++c) f[c] = from_rational<F>(xs[i][c] - xs[j][c]);
          forms.push_back(f);
        }
      // |x|^2 = sum y_i^2 + (sum y_i)^2
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gram(i, j) = from_int<F>(i == j ? 2 : 1);
      break;
    }
    case Family::B:
      for (int i = 0; i < n; ++i) forms.push_back(unit(i));
      [[fallthrough]];
    case Family::D:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          Vec<F> m = unit(i), p = unit(i);
          m[j] = from_int<F>(-1);
          p[j] = from_int<F>(1);
          forms.push_back(m);
          forms.push_back(p);
        }
      break;
    case Family::I2:
      forms = dihedral_mirror_normals<F>(spec.dihedral_order);
      break;
    case Family::H3: {
      F t = golden_ratio<F>();
      F half = from_rational<F>(Rational(1, 2));
      F it = t - from_int<F>(1);  // 1/tau
      for (int i = 0; i < 3; ++i) forms.push_back(unit(i));
      for (int s1 : {1, -1})
        for (int s2 : {1, -1}) {
          Vec<F> v{t * half, from_int<F>(s1) * half, from_int<F>(s2) * it * half};
          forms.push_back(v);
          forms.push_back({v[2], v[0], v[1]});
          forms.push_back({v[1], v[2], v[0]});
        }
      break;
    }
  }
  return std::make_shared<const ReflectionGroup<F>>(spec, std::move(gram), forms, cap);
}

}  // namespace chev
