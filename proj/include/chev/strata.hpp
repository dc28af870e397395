#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "chev/chevalley.hpp"
#include "chev/flat.hpp"

namespace chev {

template <Field F>
struct StratumData {
  Flat<F> flat;
  std::size_t codim = 0;
  std::vector<std::size_t> hyperplanes;  // every mirror containing the flat, sorted
  std::vector<CoxeterTypeSpec> isotropy;
  int d_z = 0;
  int s_z = 0;
  int h_z = 1;
};

template <Field F>
struct LatticeReport {
  GroupPtr<F> group;
  std::vector<StratumData<F>> strata;  // ordered by codimension
  // (a, b) with flat a strictly containing flat b, i.e. S_b lies in the closure of S_a
  std::vector<std::pair<std::size_t, std::size_t>> closure;
};

inline constexpr std::size_t kLatticeMaxRank = 4;
inline constexpr std::size_t kLatticeMaxHyperplanes = 30;

namespace detail {

template <Field F>
std::vector<std::size_t> mirrors_containing(const ReflectionGroup<F>& g, const Flat<F>& flat) {
  std::vector<std::size_t> ids;
  for (const auto& r : g.reflections())
    if (flat.annihilated_by(r.form)) ids.push_back(r.hyperplane_id);
  return ids;
}

template <Field F>
Flat<F> flat_of(const ReflectionGroup<F>& g, const std::vector<std::size_t>& ids) {
  std::vector<Vec<F>> forms;
  for (auto id : ids) forms.push_back(g.reflections()[id].form);
  return Flat<F>::from_forms(forms, g.dim());
}

inline bool is_subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace detail

// Isotropy data of a flat: the reflections whose mirrors contain it, their
// Coxeter type, and (d_z, s_z, h_z). s_z is computed twice, as d_z - h_z + 1
// and as the sum of (k - 1) over all isotropy degrees except one maximal one.
template <Field F>
StratumData<F> isotropy(const ReflectionGroup<F>& g, const Flat<F>& flat) {
  StratumData<F> st;
  st.flat = flat;
  st.codim = flat.codim();
  st.hyperplanes = detail::mirrors_containing(g, flat);
  try {
    st.isotropy = classify(coxeter_graph(g, st.hyperplanes, true));
  } catch (const NotFiniteType& e) {
    throw ClassificationFailure(std::string("isotropy group could not be classified: ") + e.what());
  }
  std::vector<int> degrees;
  st.h_z = 1;
  for (const auto& t : st.isotropy) {
    for (int k : t.degrees()) degrees.push_back(k);
    st.h_z = std::max(st.h_z, t.coxeter_number());
  }
  st.d_z = 0;
  for (int k : degrees) st.d_z += k - 1;
  if (st.d_z != static_cast<int>(st.hyperplanes.size()))
    throw ClassificationFailure("isotropy type " + types_str(st.isotropy) + " predicts " + std::to_string(st.d_z) +
                                " reflections, found " + std::to_string(st.hyperplanes.size()));
  st.s_z = st.d_z - st.h_z + 1;
  std::sort(degrees.begin(), degrees.end());
  int s_alt = 0;
  for (std::size_t i = 0; i + 1 < degrees.size(); ++i) s_alt += degrees[i] - 1;
  if (s_alt != st.s_z)
    throw ClassificationFailure("s_z routes disagree: " + std::to_string(st.s_z) + " vs " + std::to_string(s_alt));
  std::size_t rank = 0;
  {
    std::vector<Vec<F>> forms;
    for (auto id : st.hyperplanes) forms.push_back(g.reflections()[id].form);
    rank = rank_of_vectors(forms, g.dim());
  }
  if (rank != st.codim) throw ClassificationFailure("codimension differs from the rank of the containing mirrors");
  return st;
}

// All intersections of mirrors, each keyed by its saturated hyperplane set.
template <Field F>
LatticeReport<F> intersection_lattice(GroupPtr<F> g) {
  if (g->dim() > kLatticeMaxRank && g->reflection_count() > kLatticeMaxHyperplanes)
    throw LatticeTooLarge(g->spec().str() + ": rank " + std::to_string(g->dim()) + " with " +
                          std::to_string(g->reflection_count()) + " hyperplanes exceeds the lattice cap");
  LatticeReport<F> rep;
  rep.group = g;
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> keys{{}};
  seen.insert({});
  for (std::size_t head = 0; head < keys.size(); ++head) {
    std::vector<std::size_t> base = keys[head];
    for (const auto& r : g->reflections()) {
      if (std::binary_search(base.begin(), base.end(), r.hyperplane_id)) continue;
      auto ids = base;
      ids.push_back(r.hyperplane_id);
      auto sat = detail::mirrors_containing(*g, detail::flat_of(*g, ids));
      if (seen.insert(sat).second) keys.push_back(sat);
    }
  }
  for (const auto& key : keys) rep.strata.push_back(isotropy(*g, detail::flat_of(*g, key)));
  std::stable_sort(rep.strata.begin(), rep.strata.end(), [](const StratumData<F>& a, const StratumData<F>& b) {
    if (a.codim != b.codim) return a.codim < b.codim;
    return a.hyperplanes < b.hyperplanes;
  });
  for (std::size_t a = 0; a < rep.strata.size(); ++a)
    for (std::size_t b = 0; b < rep.strata.size(); ++b)
      if (a != b && rep.strata[a].hyperplanes.size() < rep.strata[b].hyperplanes.size() &&
          detail::is_subset(rep.strata[a].hyperplanes, rep.strata[b].hyperplanes))
        rep.closure.emplace_back(a, b);
  return rep;
}

struct FlatnessEntry {
  std::size_t stratum = 0;
  std::size_t i = 0, j = 0;
  Order order = 0;
  int s_z = 0;
};

struct FlatnessReport {
  std::vector<FlatnessEntry> entries;
  std::vector<std::string> violations;
};

// vanishing_order(M_{i,j}, flat) >= s_z for every flat and every minor.
template <Field F>
FlatnessReport minor_flatness_check(const ChevalleyMap<F>& c, const LatticeReport<F>& lattice, bool strict = false) {
  CramerSystem<F> cs(c);
  FlatnessReport rep;
  const std::size_t n = c.n();
  for (std::size_t t = 0; t < lattice.strata.size(); ++t) {
    const auto& st = lattice.strata[t];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        FlatnessEntry e{t, i, j, vanishing_order(cs.minor_ij(i, j), st.flat), st.s_z};
        if (e.order < Order(st.s_z)) {
          std::string msg = "M_{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "} has order " + e.order.str() +
                            " < s_z = " + std::to_string(st.s_z) + " on stratum " + std::to_string(t);
          if (strict) throw FlatnessViolation(msg);
          rep.violations.push_back(msg);
        }
        rep.entries.push_back(e);
      }
  }
  return rep;
}

struct MonotonicityReport {
  std::size_t pairs_checked = 0;
  std::vector<std::string> violations;
};

// For S_b in the closure of S_a: h_a <= h_b and d_a - s_a <= d_b - s_b.
template <Field F>
MonotonicityReport monotonicity_check(const LatticeReport<F>& lattice) {
  MonotonicityReport rep;
  for (auto [a, b] : lattice.closure) {
    const auto& x = lattice.strata[a];
    const auto& y = lattice.strata[b];
    ++rep.pairs_checked;
    if (x.h_z > y.h_z)
      rep.violations.push_back("h decreases from stratum " + std::to_string(a) + " (" + std::to_string(x.h_z) +
                               ") to " + std::to_string(b) + " (" + std::to_string(y.h_z) + ")");
    if (x.d_z - x.s_z > y.d_z - y.s_z)
      rep.violations.push_back("d - s decreases from stratum " + std::to_string(a) + " to " + std::to_string(b));
  }
  return rep;
}

}  // namespace chev
