#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "chev/chev.hpp"

using namespace chev;

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string group;
  std::string backend = "exact";
  std::string output;
  std::string csv;
  std::string poly;
  std::string points;
  std::string check = "all";
  std::string ray;
  std::string suite = "all";
  std::string jet_op;
  std::optional<std::uint64_t> seed_flag;
  std::optional<std::uint64_t> seed_config;
  int s = 1;
  double alpha = 0.2;
  double tmin = 1e-3;
  double tmax = 1e-1;
  int samples = 25;
  int order = 2;
  int r = -1;
  double tolerance = kNumericTol;
  bool verify = false;
  bool power_sum_top = false;
};

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// key=value lines mirroring the long flags; '#' starts a comment.
void load_config(const std::string& path, Options& o) {
  std::ifstream in(path);
  if (!in) throw Usage("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Usage(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    try {
      if (key == "backend") o.backend = val;
      else if (key == "seed") o.seed_config = std::stoull(val);
      else if (key == "output") o.output = val;
      else if (key == "csv") o.csv = val;
      else if (key == "poly") o.poly = val;
      else if (key == "points") o.points = val;
      else if (key == "check") o.check = val;
      else if (key == "ray") o.ray = val;
      else if (key == "s") o.s = std::stoi(val);
      else if (key == "alpha") o.alpha = std::stod(val);
      else if (key == "tmin") o.tmin = std::stod(val);
      else if (key == "tmax") o.tmax = std::stod(val);
      else if (key == "samples") o.samples = std::stoi(val);
      else if (key == "order") o.order = std::stoi(val);
      else if (key == "r") o.r = std::stoi(val);
      else if (key == "tolerance") o.tolerance = std::stod(val);
      else if (key == "verify") o.verify = val == "true" || val == "1";
      else if (key == "power-sum-top") o.power_sum_top = val == "true" || val == "1";
      else throw Usage(path + ":" + std::to_string(lineno) + ": unknown config key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw Usage(path + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
    } catch (const std::out_of_range&) {
      throw Usage(path + ":" + std::to_string(lineno) + ": value out of range for '" + key + "'");
    }
  }
}

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed_flag) return *o.seed_flag;
  if (const char* env = std::getenv("WORKBENCH_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Usage(std::string("WORKBENCH_SEED is not an integer: ") + env);
    }
  }
  return o.seed_config.value_or(0);
}

json read_json_arg(const std::string& arg, const std::string& what) {
  if (arg.empty()) throw Usage("--" + what + " is required");
  std::string text = arg;
  if (arg.front() != '{' && arg.front() != '[') {
    std::ifstream in(arg);
    if (!in) throw Usage("cannot read " + what + " file " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Usage("malformed JSON in " + what + ": " + e.what());
  }
}

std::vector<std::string> xyz_names(std::size_t n) {
  if (n > 4) return {};
  std::vector<std::string> all{"x", "y", "z", "w"};
  return {all.begin(), all.begin() + static_cast<long>(n)};
}

std::vector<std::string> u_names(std::size_t n) {
  std::vector<std::string> u;
  for (std::size_t i = 0; i < n; ++i) u.push_back("u" + std::to_string(i + 1));
  return u;
}

template <Field F>
std::string form_text(const Vec<F>& v) {
  return Poly<F>::linear(std::span<const F>(v)).to_string(xyz_names(v.size()));
}

template <Field F>
json polys_to_json(const std::vector<Poly<F>>& ps, const std::vector<std::string>& names) {
  json arr = json::array();
  for (const auto& p : ps) arr.push_back(json{{"text", p.to_string(names)}, {"poly", poly_to_json(p)}});
  return arr;
}

struct Outcome {
  json inputs = json::object();
  json results = json::object();
  bool exact = true;
  std::vector<std::string> violations;
  std::string csv;  // probe only
};

template <Field F>
void require_exact(const char* cmd) {
  if constexpr (!is_exact_v<F>) throw Usage(std::string(cmd) + " needs the exact backend");
}

template <Field F>
Poly<F> read_poly(const Options& o, std::size_t n) {
  auto f = poly_from_json<F>(read_json_arg(o.poly, "poly"));
  if (f.nvars() != n) throw ArityMismatch("polynomial has " + std::to_string(f.nvars()) + " variables, group rank is " + std::to_string(n));
  return f;
}

template <Field F>
void cmd_info(const ChevalleyMap<F>& c, Outcome& out) {
  const auto& g = *c.group;
  const auto& spec = g.spec();
  std::vector<std::size_t> all(g.reflection_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  auto graph = coxeter_graph(g, all, true);
  auto types = classify(graph);
  out.results["spec"] = spec.str();
  out.results["family"] = family_name(spec.family);
  out.results["rank"] = spec.rank;
  out.results["order"] = spec.order();
  out.results["degrees"] = spec.degrees();
  out.results["coxeter_number"] = spec.coxeter_number();
  out.results["reflection_count"] = g.reflection_count();
  out.results["field"] = field_traits<F>::tag;
  out.results["simple_reflections"] = graph.nodes;
  out.results["coxeter_matrix"] = graph.labels;
  out.results["classified_as"] = types_str(types);
  out.results["group"] = group_to_json(g);
  if (!same_types(types, {spec})) out.violations.push_back("Coxeter graph classifies as " + types_str(types));
  if (static_cast<long>(g.reflection_count()) != spec.reflection_count())
    out.violations.push_back("reflection count differs from the type");
}

template <Field F>
void cmd_invariants(const ChevalleyMap<F>& c, Outcome& out) {
  out.results["p"] = polys_to_json(c.p, xyz_names(c.n()));
  out.results["k"] = c.k;
  out.results["d"] = c.d;
  out.results["s_j"] = c.s_j;
  out.results["s"] = c.s;
  out.results["h"] = c.h;
  int sum = 0;
  for (int k : c.k) sum += k - 1;
  if (sum != c.d) out.violations.push_back("d = " + std::to_string(c.d) + " but sum (k_i - 1) = " + std::to_string(sum));
  if (c.h != c.group->spec().coxeter_number()) out.violations.push_back("h differs from the Coxeter number");
}

template <Field F>
void cmd_jacobian(const ChevalleyMap<F>& c, const Options& o, std::uint64_t seed, Outcome& out) {
  out.inputs["verify"] = o.verify;
  auto names = xyz_names(c.n());
  if constexpr (is_exact_v<F>) {
    auto fac = exact_factorization(c);
    out.results["jacobian"] = json{{"text", fac.jacobian.to_string(names)}, {"poly", poly_to_json(fac.jacobian)}};
    out.results["c"] = field_to_json(fac.c);
    json factors = json::array();
    for (const auto& f : fac.factors) factors.push_back(form_text(f));
    out.results["factors"] = factors;
    if (o.verify) {
      bool ok = product_of_forms(*c.group) * fac.c == fac.jacobian;
      out.results["verified"] = ok;
      if (!ok) out.violations.push_back("J differs from c times the product of the forms");
    }
  } else {
    auto v = jacobian_factorization(c, seed, 100);
    auto rep = std::get<PointwiseJacobianReport>(v);
    rep.tolerance = o.tolerance;
    rep.passed = rep.max_abs_error <= rep.tolerance && std::abs(rep.c) > kNumericZero;
    out.results["c"] = rep.c;
    out.results["points"] = rep.points;
    out.results["max_abs_error"] = rep.max_abs_error;
    out.results["tolerance"] = rep.tolerance;
    json factors = json::array();
    for (const auto& r : c.group->reflections()) factors.push_back(form_text(r.form));
    out.results["factors"] = factors;
    out.results["verified"] = rep.passed;
    if (!rep.passed) out.violations.push_back("pointwise check failed, max error " + std::to_string(rep.max_abs_error));
  }
}

template <Field F>
void cmd_discriminant(const ChevalleyMap<F>& c, Outcome& out) {
  require_exact<F>("discriminant");
  if constexpr (is_exact_v<F>) {
    auto d = discriminant(c);
    out.results["discriminant"] = json{{"text", d.to_string(u_names(c.n()))}, {"poly", poly_to_json(d)}};
    auto j = jacobian_determinant(c);
    bool ok = compose(d, c.p) == j * j;
    out.results["verified"] = ok;
    if (!ok) out.violations.push_back("discriminant composed with P is not J^2");
  }
}

template <Field F>
void cmd_rewrite(const ChevalleyMap<F>& c, const Options& o, Outcome& out) {
  require_exact<F>("rewrite");
  if constexpr (is_exact_v<F>) {
    Poly<F> f = read_poly<F>(o, c.n());
    out.inputs["poly"] = f.to_string(xyz_names(c.n()));
    auto res = rewrite_invariant(c, f);
    out.results["F"] = json{{"text", res.F_poly.to_string(u_names(c.n()))}, {"poly", poly_to_json(res.F_poly)}};
    out.results["weighted_degree"] = res.weighted_degree;
    bool round = compose(res.F_poly, c.p) == f;
    out.results["round_trip"] = round;
    if (!round) out.violations.push_back("F(p) differs from f");
    if (!f.is_zero()) {
      long bound = f.degree().value() / c.h;
      Degree du = res.F_poly.degree_in(c.n() - 1);
      out.results["deg_u_n"] = du.str();
      out.results["deg_u_n_bound"] = bound;
      if (du > Degree(bound)) out.violations.push_back("deg in u_n exceeds floor(deg f / h)");
    }
  }
}

template <Field F>
void cmd_gradient(const ChevalleyMap<F>& c, const Options& o, Outcome& out) {
  require_exact<F>("gradient");
  if constexpr (is_exact_v<F>) {
    Poly<F> f = read_poly<F>(o, c.n());
    out.inputs["poly"] = f.to_string(xyz_names(c.n()));
    auto g = gradient_system(c, f);
    out.results["g"] = polys_to_json(g, xyz_names(c.n()));
    auto Fp = rewrite_invariant(c, f).F_poly;
    bool ok = true;
    for (std::size_t j = 0; j < c.n(); ++j)
      if (!(compose(differentiate(Fp, j), c.p) == g[j])) {
        ok = false;
        out.violations.push_back("g_" + std::to_string(j + 1) + " differs from dF/du_" + std::to_string(j + 1) + " o P");
      }
    out.results["matches_rewrite"] = ok;
  }
}

template <Field F>
void cmd_strata(const ChevalleyMap<F>& c, const Options& o, Outcome& out) {
  if (o.check != "all" && o.check != "flatness" && o.check != "monotonicity" && o.check != "none")
    throw Usage("--check must be flatness, monotonicity, all or none");
  out.inputs["check"] = o.check;
  auto lat = intersection_lattice(c.group);
  json strata = json::array();
  for (std::size_t t = 0; t < lat.strata.size(); ++t) {
    const auto& st = lat.strata[t];
    strata.push_back(json{{"id", t},
                          {"codim", st.codim},
                          {"hyperplanes", st.hyperplanes},
                          {"isotropy", types_str(st.isotropy)},
                          {"d_z", st.d_z},
                          {"s_z", st.s_z},
                          {"h_z", st.h_z}});
  }
  out.results["strata"] = strata;
  json closure = json::array();
  for (auto [a, b] : lat.closure) closure.push_back(json::array({a, b}));
  out.results["closure"] = closure;
  if (o.check == "flatness" || o.check == "all") {
    if constexpr (is_exact_v<F>) {
      auto rep = minor_flatness_check(c, lat);
      out.results["flatness_entries"] = rep.entries.size();
      for (const auto& v : rep.violations) out.violations.push_back(v);
    } else {
      throw Usage("the flatness check needs the exact backend");
    }
  }
  if (o.check == "monotonicity" || o.check == "all") {
    auto rep = monotonicity_check(lat);
    out.results["monotonicity_pairs"] = rep.pairs_checked;
    for (const auto& v : rep.violations) out.violations.push_back(v);
  }
}

std::vector<double> parse_ray(const std::string& s) {
  std::vector<double> v;
  if (s.empty()) return v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Usage("--ray expects comma separated numbers");
    }
  }
  return v;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

template <Field F>
void cmd_probe(const ChevalleyMap<F>& c, const Options& o, Outcome& out) {
  out.inputs["s"] = o.s;
  out.inputs["alpha"] = o.alpha;
  out.inputs["tmin"] = o.tmin;
  out.inputs["tmax"] = o.tmax;
  out.inputs["samples"] = o.samples;
  auto rep = counterexample_probe(c, o.s, o.alpha, parse_ray(o.ray), log_grid(o.tmin, o.tmax, o.samples));
  out.exact = false;
  out.inputs["ray"] = rep.ray;
  json orders = json::array();
  std::string csv = "k,slope,residual,verdict\n";
  for (const auto& ord : rep.orders) {
    orders.push_back(json{{"k", ord.k}, {"slope", ord.slope}, {"residual", ord.residual}, {"expected", ord.expected}, {"verdict", ord.verdict}});
    csv += std::to_string(ord.k) + "," + fmt(ord.slope) + "," + fmt(ord.residual) + "," + ord.verdict + "\n";
  }
  out.csv = csv;
  out.results["group"] = rep.group;
  out.results["k_n"] = rep.k_n;
  out.results["orders"] = orders;
  out.results["smooth_order"] = rep.smooth_order;
  out.results["blowup_order"] = rep.blowup_order ? json(*rep.blowup_order) : json(nullptr);
  out.results["slope_law"] = rep.slope_law;
  out.results["inconclusive"] = rep.inconclusive;
  out.results["verdict"] = rep.verdict;
  if (!rep.slope_law) out.violations.push_back("fitted slopes deviate from k_n (s + alpha) - k by more than 0.05");
}

template <Field F>
void cmd_jet(const Options& o, Outcome& out) {
  json pj = read_json_arg(o.points, "points");
  if (!pj.is_array()) throw Usage("--points must be a JSON array of points");
  std::vector<Vec<F>> pts;
  for (const auto& p : pj) pts.push_back(vec_from_json<F>(p));
  auto f = poly_from_json<F>(read_json_arg(o.poly, "poly"));
  for (const auto& p : pts)
    if (p.size() != f.nvars()) throw ArityMismatch("point dimension differs from the polynomial arity");
  out.inputs["op"] = o.jet_op;
  out.inputs["order"] = o.order;
  auto A = taylor_field(f, pts, o.order);
  if (o.jet_op == "taylor") {
    json arr = json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      json coeffs = json::array();
      for (const auto& k : A.indices()) {
        json e = json::array();
        for (std::size_t v = 0; v < f.nvars(); ++v) e.push_back(k[v]);
        coeffs.push_back(json{{"k", e}, {"a", field_to_json(A.at(i, k))}});
      }
      arr.push_back(json{{"point", vec_to_json(pts[i])}, {"coefficients", coeffs}});
    }
    out.results["field"] = arr;
  } else if (o.jet_op == "seminorm") {
    int r = o.r < 0 ? o.order : o.r;
    out.inputs["r"] = r;
    out.results["seminorm"] = seminorm(A, r);
    bool zero = true;
    for (std::size_t x = 0; x < pts.size(); ++x)
      for (std::size_t y = 0; y < pts.size(); ++y)
        for (const auto& q : A.indices()) zero = zero && field_traits<F>::is_zero(remainder(A, x, y, q));
    out.results["remainders_vanish"] = zero;
  } else {
    throw Usage("jet operation must be taylor or seminorm");
  }
  out.exact = is_exact_v<F>;
}

bool is_usage_kind(const std::string& k) {
  static const std::set<std::string> kinds{"ParseError",    "UnsupportedRank",  "UnsupportedFieldExact", "UnsupportedFamily",
                                           "FieldMismatch", "ArityMismatch",    "ExponentOverflow",      "InvalidArgument",
                                           "GroupTooLarge", "LatticeTooLarge",  "UnsupportedGroupForProbe", "RayOnMirror",
                                           "EmptyCompact",  "PointNotInField"};
  return kinds.count(k) > 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Chevalley map and Whitney regularity workbench"};
  app.require_subcommand(1, 1);
  std::string config;
  std::uint64_t seed_value = 0;
  app.add_option("--config", config, "key=value file mirroring the long options");
  auto* seed_opt = app.add_option("--seed", seed_value, "seed for randomized checks (default 0)");
  app.add_option("--backend", o.backend, "exact or numeric")->check(CLI::IsMember({"exact", "numeric"}));
  app.add_option("--output,-o", o.output, "write the JSON report here instead of stdout");
  app.add_option("--tolerance", o.tolerance, "numeric comparison tolerance");
  app.add_flag("--power-sum-top", o.power_sum_top, "use a power sum as the top invariant where it differs");

  auto group_cmd = [&](const char* name, const char* help) {
    auto* sc = app.add_subcommand(name, help);
    sc->add_option("group", o.group, "group spec such as A3, B2, D4, I2(5), H3")->required();
    return sc;
  };
  group_cmd("info", "group structure report");
  group_cmd("invariants", "basic invariants and degree bookkeeping");
  group_cmd("jacobian", "Jacobian determinant factorization")->add_flag("--verify", o.verify, "check J = c prod(lambda)");
  group_cmd("discriminant", "discriminant with Delta o P = J^2");
  group_cmd("rewrite", "express an invariant through the basic invariants")->add_option("--poly", o.poly, "polynomial JSON file or inline JSON")->required();
  group_cmd("gradient", "Cramer solution of the gradient system")->add_option("--poly", o.poly, "polynomial JSON file or inline JSON")->required();
  group_cmd("strata", "intersection lattice and isotropy data")->add_option("--check", o.check, "flatness, monotonicity, all or none");
  auto* probe = group_cmd("probe", "derivative exponents of p_n^(s+alpha) along a ray");
  probe->add_option("--s", o.s, "integer part of the exponent");
  probe->add_option("--alpha", o.alpha, "fractional part of the exponent, in (0, 1)");
  probe->add_option("--ray", o.ray, "ray direction v1,v2,...");
  probe->add_option("--tmin", o.tmin);
  probe->add_option("--tmax", o.tmax);
  probe->add_option("--samples", o.samples);
  probe->add_option("--csv", o.csv, "write the CSV here instead of stdout");
  auto* jet = app.add_subcommand("jet", "Taylor fields and seminorms of a polynomial on a point set");
  jet->add_option("op", o.jet_op, "taylor or seminorm")->required();
  jet->add_option("--poly", o.poly, "polynomial JSON file or inline JSON")->required();
  jet->add_option("--points", o.points, "JSON array of points, file or inline")->required();
  jet->add_option("--order", o.order, "jet order m");
  jet->add_option("--r", o.r, "regularity order r <= m (default m)");
  app.add_subcommand("selftest", "module property suites")->add_option("suite", o.suite, "algebra, groups, strata, whitney or all");

  // the config file is applied first so that flags given on the command line win
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    std::string path;
    if (a == "--config" && i + 1 < argc) path = argv[i + 1];
    else if (a.rfind("--config=", 0) == 0) path = a.substr(9);
    if (path.empty()) continue;
    try {
      load_config(path, o);
    } catch (const Usage& e) {
      std::cerr << "workbench: " << e.what() << "\n";
      return 2;
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (seed_opt->count() > 0) o.seed_flag = seed_value;
  o.command = app.get_subcommands().front()->get_name();

  auto start = std::chrono::steady_clock::now();
  Outcome out;
  std::uint64_t seed = 0;
  try {
    seed = resolve_seed(o);
    Backend backend = parse_backend(o.backend);
    out.inputs["backend"] = o.backend;
    out.inputs["seed"] = seed;
    if (o.command == "selftest") {
      out.inputs["suite"] = o.suite;
      auto rep = run_selftest(o.suite, seed);
      out.results["checks"] = rep.to_json();
      out.violations = rep.violations();
    } else if (o.command == "jet") {
      if (backend == Backend::Exact)
        cmd_jet<Rational>(o, out);
      else
        cmd_jet<double>(o, out);
    } else {
      auto spec = CoxeterTypeSpec::parse(o.group);
      out.inputs["group"] = spec.str();
      AnyMap any = make_map(spec, backend, InvariantOptions{o.power_sum_top});
      std::visit(
          [&](const auto& c) {
            using F = typename std::decay_t<decltype(c)>::Coef;
            out.exact = is_exact_v<F>;
            out.inputs["field"] = field_traits<F>::tag;
            try {
              if (o.command == "info") cmd_info(c, out);
              else if (o.command == "invariants") cmd_invariants(c, out);
              else if (o.command == "jacobian") cmd_jacobian(c, o, seed, out);
              else if (o.command == "discriminant") cmd_discriminant(c, out);
              else if (o.command == "rewrite") cmd_rewrite(c, o, out);
              else if (o.command == "gradient") cmd_gradient(c, o, out);
              else if (o.command == "strata") cmd_strata(c, o, out);
              else if (o.command == "probe") cmd_probe(c, o, out);
            } catch (const Error& e) {
              if (is_usage_kind(e.kind())) throw;
              out.violations.push_back(e.what());
            }
          },
          any);
    }
  } catch (const Usage& e) {
    std::cerr << "workbench: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "workbench: " << e.what() << "\n";
    return 2;
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json report;
  report["command"] = o.command;
  report["inputs"] = out.inputs;
  report["results"] = out.results;
  report["exact"] = out.exact;
  report["timing"] = json{{"seconds", seconds}};
  report["violations"] = out.violations;

  auto write = [](const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) return false;
    f << text;
    return static_cast<bool>(f);
  };
  std::string text = report.dump(2) + "\n";
  if (o.command == "probe") {
    if (o.csv.empty())
      std::cout << out.csv;
    else if (!write(o.csv, out.csv)) {
      std::cerr << "workbench: cannot write " << o.csv << "\n";
      return 2;
    }
    if (!o.output.empty() && !write(o.output, text)) {
      std::cerr << "workbench: cannot write " << o.output << "\n";
      return 2;
    }
    if (o.output.empty() && !o.csv.empty()) std::cout << text;
  } else if (o.output.empty()) {
    std::cout << text;
  } else if (!write(o.output, text)) {
    std::cerr << "workbench: cannot write " << o.output << "\n";
    return 2;
  }
  return out.violations.empty() ? 0 : 1;
}
