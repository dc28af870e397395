#pragma once

#include <string>
#include <variant>

#include "chev/chevalley.hpp"

namespace chev {

enum class Backend { Exact, Numeric };

inline Backend parse_backend(const std::string& s) {
  if (s == "exact") return Backend::Exact;
  if (s == "numeric") return Backend::Numeric;
  throw InvalidArgument("backend must be exact or numeric, got '" + s + "'");
}

inline std::string backend_name(Backend b) { return b == Backend::Exact ? "exact" : "numeric"; }

// A Chevalley map over whichever field carries the group: Q for A, B, D and
// I2(4), Q(sqrt 3) for I2(3) and I2(6), Q(sqrt 5) for H3, binary64 otherwise.
using AnyMap = std::variant<ChevalleyMap<Rational>, ChevalleyMap<Sqrt3Field>, ChevalleyMap<Sqrt5Field>, ChevalleyMap<double>>;

inline AnyMap make_map(const CoxeterTypeSpec& spec, Backend backend, InvariantOptions opt = {},
                       std::size_t cap = kDefaultElementCap) {
  if (backend == Backend::Numeric) return basic_invariants(build_group<double>(spec, cap), opt);
  if (field_supports<Rational>(spec)) return basic_invariants(build_group<Rational>(spec, cap), opt);
  if (field_supports<Sqrt3Field>(spec)) return basic_invariants(build_group<Sqrt3Field>(spec, cap), opt);
  if (field_supports<Sqrt5Field>(spec)) return basic_invariants(build_group<Sqrt5Field>(spec, cap), opt);
  throw UnsupportedFieldExact(spec.str() + " has no exact model here; use the numeric backend");
}

}  // namespace chev
