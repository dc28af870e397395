#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <vector>

#include "chev/coxeter.hpp"

namespace chev {

// Simple reflections of a reflection subgroup and the orders m(s, t) of their
// pairwise products (diagonal entries are 1).
struct CoxeterGraph {
  std::vector<std::size_t> nodes;
  std::vector<std::vector<int>> labels;

  std::size_t size() const { return nodes.size(); }
};

// Hyperplane ids of every reflection in the subgroup generated by `ids`.
template <Field F>
std::vector<std::size_t> saturate(const ReflectionGroup<F>& g, std::span<const std::size_t> ids) {
  if (ids.empty()) return {};
  std::vector<Matrix<F>> gens;
  for (auto id : ids) gens.push_back(g.reflections().at(id).matrix);
  auto sub = matrix_closure(gens, g.dim(), g.element_cap());
  std::vector<std::size_t> out;
  detail::VecSet<F> members;
  for (const auto& w : sub) members.insert(w.data());
  for (const auto& r : g.reflections())
    if (members.contains(r.matrix.data())) out.push_back(r.hyperplane_id);
  return out;
}

namespace detail {

// A point off every listed hyperplane.
template <Field F>
Vec<F> generic_point(const ReflectionGroup<F>& g, std::span<const std::size_t> ids) {
  std::size_t n = g.dim();
  auto off_all = [&](const Vec<F>& x) {
    for (auto id : ids)
      if (field_traits<F>::is_zero(dot(g.reflections()[id].form, x))) return false;
    return true;
  };
  if constexpr (!is_exact_v<F>) {
    static const double primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
    for (int shift = 1;; ++shift) {
      Vec<F> x;
      for (std::size_t i = 0; i < n; ++i) x.push_back(std::sqrt(primes[i % 8] + shift * 0.37) * (i + 1));
      if (off_all(x)) return x;
    }
  } else {
    // (1, c, c^2, ...): each nonzero form vanishes for at most n - 1 values of c
    for (long c = 2;; ++c) {
      Vec<F> x;
      F pw = from_int<F>(1);
      for (std::size_t i = 0; i < n; ++i) {
        x.push_back(pw);
        pw = pw * from_int<F>(c);
      }
      if (off_all(x)) return x;
    }
  }
}

inline int product_order(const auto& s, const auto& t) {
  auto st = s * t;
  auto w = st;
  for (int k = 1; k <= 1000; ++k) {
    if (w.is_identity()) return k;
    w = w * st;
  }
  throw NotFiniteType("product of two reflections has no finite order");
}

}  // namespace detail

// Coxeter graph of the subgroup generated by the reflections `ids`. The set is
// saturated first unless the caller vouches for it. The simple system is read
// off a generic chamber: a mirror is a wall of the chamber of x0 iff exactly
// one mirror separates x0 from its image under that reflection.
template <Field F>
CoxeterGraph coxeter_graph(const ReflectionGroup<F>& g, std::span<const std::size_t> ids, bool already_saturated = false) {
  auto sat = already_saturated ? std::vector<std::size_t>(ids.begin(), ids.end()) : saturate(g, ids);
  CoxeterGraph graph;
  if (sat.empty()) return graph;
  Vec<F> x0 = detail::generic_point(g, sat);
  for (auto id : sat) {
    Vec<F> y = g.reflections()[id].matrix.apply(x0);
    int separating = 0;
    for (auto other : sat) {
      const auto& form = g.reflections()[other].form;
      if (field_traits<F>::sign(dot(form, x0)) != field_traits<F>::sign(dot(form, y))) ++separating;
    }
    if (separating == 1) graph.nodes.push_back(id);
  }
  std::size_t k = graph.nodes.size();
  graph.labels.assign(k, std::vector<int>(k, 1));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      int m = detail::product_order(g.reflections()[graph.nodes[a]].matrix, g.reflections()[graph.nodes[b]].matrix);
      graph.labels[a][b] = graph.labels[b][a] = m;
    }
  return graph;
}

namespace detail {

inline CoxeterTypeSpec classify_component(const CoxeterGraph& g, const std::vector<std::size_t>& comp) {
  std::size_t r = comp.size();
  auto fail = [&](const std::string& why) -> CoxeterTypeSpec { throw NotFiniteType("component of rank " + std::to_string(r) + ": " + why); };
  if (r == 1) return CoxeterTypeSpec::make(Family::A, 1);
  std::vector<int> degree(r, 0);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::map<int, int> label_count;
  int max_label = 0;
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a + 1; b < r; ++b) {
      int m = g.labels[comp[a]][comp[b]];
      if (m < 3) continue;
      ++degree[a];
      ++degree[b];
      edges.emplace_back(a, b);
      ++label_count[m];
      max_label = std::max(max_label, m);
    }
  if (edges.size() != r - 1) return fail("graph is not a tree");
  int branch = 0;
  for (int d : degree) {
    if (d > 3) return fail("vertex of degree > 3");
    if (d == 3) ++branch;
  }
  if (r == 2) {
    int m = max_label;
    if (m == 3) return CoxeterTypeSpec::make(Family::A, 2);
    if (m == 4) return CoxeterTypeSpec::make(Family::B, 2);
    return CoxeterTypeSpec::make(Family::I2, 2, m);
  }
  if (max_label == 3 && branch == 0) return CoxeterTypeSpec::make(Family::A, static_cast<int>(r));
  if (max_label == 3 && branch == 1) {
    // D_n: the branch vertex has two leaf neighbours
    std::size_t centre = static_cast<std::size_t>(std::find(degree.begin(), degree.end(), 3) - degree.begin());
    int leaves = 0;
    for (auto [a, b] : edges) {
      std::size_t other = a == centre ? b : (b == centre ? a : r);
      if (other < r && degree[other] == 1) ++leaves;
    }
    if (leaves >= 2) return CoxeterTypeSpec::make(Family::D, static_cast<int>(r));
    return fail("branched diagram is not of type D");
  }
  if (branch == 0 && label_count[max_label] == 1) {
    // the special edge must sit at an end of the path
    for (auto [a, b] : edges)
      if (g.labels[comp[a]][comp[b]] == max_label && degree[a] != 1 && degree[b] != 1)
        return fail("label " + std::to_string(max_label) + " on an interior edge");
    if (max_label == 4) return CoxeterTypeSpec::make(Family::B, static_cast<int>(r));
    if (max_label == 5 && r == 3) return CoxeterTypeSpec::make(Family::H3, 3);
  }
  return fail("unsupported diagram");
}

}  // namespace detail

// Connected components of the graph mapped to irreducible types, sorted.
inline std::vector<CoxeterTypeSpec> classify(const CoxeterGraph& g) {
  std::size_t k = g.size();
  std::vector<int> comp_of(k, -1);
  std::vector<CoxeterTypeSpec> out;
  for (std::size_t start = 0; start < k; ++start) {
    if (comp_of[start] >= 0) continue;
    std::vector<std::size_t> comp{start};
    comp_of[start] = static_cast<int>(out.size());
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (std::size_t v = 0; v < k; ++v)
        if (comp_of[v] < 0 && g.labels[comp[head]][v] >= 3) {
          comp_of[v] = comp_of[start];
          comp.push_back(v);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(detail::classify_component(g, comp));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string types_str(const std::vector<CoxeterTypeSpec>& types) {
  if (types.empty()) return "1";
  std::string s;
  for (const auto& t : types) s += (s.empty() ? "" : "x") + t.str();
  return s;
}

// Types compared up to the coincidences B1 = A1, I2(3) = A2, I2(4) = B2, D3 = A3.
inline bool same_types(std::vector<CoxeterTypeSpec> a, std::vector<CoxeterTypeSpec> b) {
  for (auto& t : a) t = t.canonical();
  for (auto& t : b) t = t.canonical();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace chev
