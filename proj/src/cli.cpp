#include "stackvol/cli.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "stackvol/catalog.hpp"
#include "stackvol/errors.hpp"
#include "stackvol/finite_groupoid.hpp"
#include "stackvol/json_io.hpp"
#include "stackvol/morita.hpp"
#include "stackvol/poisson.hpp"
#include "stackvol/smooth.hpp"
#include "stackvol/weyl.hpp"

namespace stackvol {

namespace {

constexpr std::uint64_t kDefaultSeed = 94720;
constexpr double kDefaultTol = 1e-6;
constexpr double kDefaultWeylTol = 0.02;

struct Globals {
  bool json = false;
  std::uint64_t seed = kDefaultSeed;
  double tol = kDefaultTol;
  bool tol_given = false;
};

std::string real(double x, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

/// Result under construction: parameter echo plus result fields.
struct Report {
  std::string command;
  Json parameters = Json::object();
  Json result = Json::object();
  std::string document;  ///< optional data document printed after the human report
};

Json quadrature_json(const QuadratureResult<double>& r) {
  return {{"value", r.value}, {"errorEstimate", r.error_estimate}, {"evaluations", r.evaluations}};
}

std::string human_value(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return real(v.get<double>());
  if (v.is_number()) return v.dump();
  if (v.is_object() && v.contains("value") && v.contains("errorEstimate")) {
    std::string s = human_value(v["value"]) + " +- " + real(v["errorEstimate"].get<double>(), 3);
    if (v.contains("evaluations")) s += " (" + v["evaluations"].dump() + " evaluations)";
    return s;
  }
  return v.dump();
}

void print_human(const Report& r, std::ostream& out) {
  out << "# " << r.command;
  for (const auto& [key, value] : r.parameters.items()) out << ' ' << key << '=' << human_value(value);
  out << '\n';
  const bool quadrature = r.result.contains("value") && r.result.contains("errorEstimate");
  for (const auto& [key, value] : r.result.items()) {
    if (quadrature && (key == "errorEstimate" || key == "evaluations")) continue;
    if (quadrature && key == "value") {
      out << "value: " << human_value(r.result) << '\n';
      continue;
    }
    if (value.is_array() && !value.empty() && value.front().is_object()) {
      // density table
      std::vector<std::string> columns;
      for (const auto& [col, unused] : value.front().items()) columns.push_back(col);
      out << key << ":\n";
      for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "\t" : "  ") << columns[c];
      out << '\n';
      for (const auto& row : value) {
        for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "\t" : "  ") << human_value(row[columns[c]]);
        out << '\n';
      }
      continue;
    }
    out << key << ": " << human_value(value) << '\n';
  }
  if (!r.document.empty()) out << r.document << '\n';
}

void emit(const Report& r, const Globals& g, std::ostream& out) {
  if (g.json) {
    Json doc;
    doc["command"] = r.command;
    doc["parameters"] = r.parameters;
    doc["result"] = r.result;
    out << doc.dump(2) << '\n';
  } else {
    print_human(r, out);
  }
}

std::string describe(const ValidationReport& report, const std::string& what) {
  std::ostringstream msg;
  msg << what << " violates " << report.violations.size() << (report.truncated ? "+" : "") << " axiom instance(s)";
  const std::size_t shown = std::min<std::size_t>(report.violations.size(), 5);
  for (std::size_t k = 0; k < shown; ++k) {
    msg << "\n  " << report.violations[k].axiom << ": " << report.violations[k].witness;
  }
  return msg.str();
}

FiniteGroupoid load_groupoid(const std::string& path) {
  FiniteGroupoid g = groupoid_from_json(read_json_file(path));
  const auto report = validate(g);
  if (!report.ok()) throw ValidationError(describe(report, "groupoid '" + path + "'"));
  return g;
}

double parse_real(const std::string& text, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ValidationError("parameter " + key + ": '" + text + "' is not a finite number");
  }
  return v;
}

long long parse_integer(const std::string& text, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(text.c_str(), &end, 10);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
    throw ValidationError("parameter " + key + ": '" + text + "' is not an integer");
  }
  return v;
}

std::vector<double> parse_real_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_real(item, key));
  if (out.empty()) throw ValidationError("parameter " + key + " needs at least one value");
  return out;
}

/// key=value parameters of `smooth example`, checked against the model's keys.
class Params {
 public:
  Params(const std::vector<std::string>& items, std::set<std::string> allowed) {
    allowed.insert("seed");
    allowed.insert("tol");
    for (const auto& item : items) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) throw ValidationError("expected key=value, got '" + item + "'");
      const std::string key = item.substr(0, eq);
      if (!allowed.count(key)) {
        std::string list;
        for (const auto& k : allowed) list += (list.empty() ? "" : ", ") + k;
        throw ValidationError("unknown parameter '" + key + "' (accepted: " + list + ")");
      }
      values_[key] = item.substr(eq + 1);
    }
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::string text(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }
  double real(const std::string& key, double fallback) const {
    return has(key) ? parse_real(values_.at(key), key) : fallback;
  }
  long long integer(const std::string& key, long long fallback) const {
    return has(key) ? parse_integer(values_.at(key), key) : fallback;
  }

 private:
  std::map<std::string, std::string> values_;
};

double positive(double v, const char* key) {
  if (!(v > 0)) throw ValidationError(std::string("parameter ") + key + " must be positive");
  return v;
}

// ---------------------------------------------------------------------------
// smooth example

void example_plane(bool reflection, const Params& p, Report& r, double tol) {
  const double radius = positive(p.real("R", 2), "R");
  const double scale = positive(p.real("scale", 1), "scale");
  const double a0 = positive(p.real("a", 1), "a");
  r.parameters["R"] = radius;
  r.parameters["scale"] = scale;
  r.parameters["a"] = a0;
  const auto am = plane_model<double>(reflection, radius, scale, a0);
  if (p.has("t")) {
    Json table = Json::array();
    for (double t : parse_real_list(p.text("t", ""), "t")) {
      table.push_back({{"t", t}, {"density", pushforward_density(am, t)}});
    }
    r.parameters["t"] = p.text("t", "");
    r.result["pushforwardDensity"] = std::move(table);
    return;
  }
  r.result = quadrature_json(volume_def1(am, tol));
}

void example_torus(const Params& p, Report& r, double tol) {
  const double scale = positive(p.real("scale", 1), "scale");
  const double a0 = positive(p.real("a", 1), "a");
  r.parameters["scale"] = scale;
  r.parameters["a"] = a0;
  const auto am = torus_free_model<double>(scale, a0);
  r.result = quadrature_json(volume_def1(am, tol));
  r.result["homogeneousValue"] = homogeneous_volume(am, tol).value;
}

void example_adjoint(const Params& p, Report& r) {
  const std::string ts = p.text("t", "0,0.25,0.5,1");
  r.parameters["t"] = ts;
  const auto cartan = su2_cartan<double>();
  Json table = Json::array();
  for (double t : parse_real_list(ts, "t")) {
    const auto d = adjoint_orbit_density(t, cartan);
    table.push_back({{"t", t}, {"density", d.density}, {"wall", d.on_wall}});
  }
  r.result["latticeGenerator"] = cartan.lattice_generator.norm();
  r.result["rootOnGenerator"] = cartan.root_on_generator;
  r.result["haarVolume"] = cartan.haar_volume;
  r.result["density"] = std::move(table);
}

void example_bk(const Params& p, Report& r) {
  SymplecticModel sm;
  try {
    sm.c = parse_rational(p.text("c", "1"));
  } catch (const InputError& e) {
    throw ValidationError(std::string("parameter c: ") + e.what());
  }
  const long long k = p.integer("k", 1);
  const long long dim = p.integer("dim", 2);
  if (k < 1) throw ValidationError("parameter k must be at least 1");
  if (dim < 2) throw ValidationError("parameter dim must be at least 2");
  sm.k_order = static_cast<unsigned>(k);
  sm.dimension = static_cast<unsigned>(dim);
  r.parameters["c"] = to_string(sm.c);
  r.parameters["k"] = k;
  r.parameters["dim"] = dim;
  r.result["value"] = to_string(symplectic_bk_volume(sm));
}

void example_sphere_bundle(const Params& p, Report& r) {
  const double v0 = p.real("v0", 0), v1 = p.real("v1", 3), v2 = p.real("v2", 1);
  const std::string f = p.text("f", "square");
  const double t_min = p.real("tmin", 0), t_max = p.real("tmax", 10);
  const std::string ts = p.text("t", "0.5,1,1.5,2");
  if (!(t_min < t_max)) throw ValidationError("parameters need tmin < tmax");
  PoissonFamilyModel<double> pm;
  pm.area = [=](double t) { return v0 + v1 * t + v2 * t * t; };
  pm.t_min = t_min;
  pm.t_max = t_max;
  if (f == "square") {
    pm.coefficient = [=](double t) {
      const double d = v1 + 2 * v2 * t;
      return d * d;
    };
  } else if (f == "derivative") {
    pm.coefficient = [=](double t) { return v1 + 2 * v2 * t; };
  } else if (f == "one") {
    pm.coefficient = [](double) { return 1.0; };
  } else {
    throw ValidationError("parameter f must be one of square, derivative, one");
  }
  r.parameters["v0"] = v0;
  r.parameters["v1"] = v1;
  r.parameters["v2"] = v2;
  r.parameters["f"] = f;
  r.parameters["tmin"] = t_min;
  r.parameters["tmax"] = t_max;
  r.parameters["t"] = ts;
  Json table = Json::array();
  for (double t : parse_real_list(ts, "t")) {
    table.push_back({{"t", t}, {"density", poisson_stack_density(pm, t)}, {"leafMeasure", natural_leaf_measure(pm, t)}});
  }
  r.result["density"] = std::move(table);
}

void example_su2_dual(const Params& p, Report& r) {
  const std::string ts = p.text("t", "0.5,1,2");
  r.parameters["t"] = ts;
  const auto pm = su2_dual_model<double>();
  Json table = Json::array();
  for (double t : parse_real_list(ts, "t")) {
    table.push_back({{"t", t},
                     {"density", poisson_stack_density(pm, t)},
                     {"leafMeasure", natural_leaf_measure(pm, t)},
                     {"leafProduct", leaf_product_density(pm, t)}});
  }
  r.result["density"] = std::move(table);
}

void smooth_example(const std::string& name, const std::vector<std::string>& items, Globals& g, Report& r) {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"plane-so2", {"R", "scale", "a", "t"}},
      {"plane-o2", {"R", "scale", "a", "t"}},
      {"torus-free", {"scale", "a"}},
      {"adjoint-su2", {"t"}},
      {"symplectic-bk", {"c", "k", "dim"}},
      {"poisson-sphere-bundle", {"v0", "v1", "v2", "f", "tmin", "tmax", "t"}},
      {"su2-dual", {"t"}},
  };
  auto it = keys.find(name);
  if (it == keys.end()) {
    std::string list;
    for (const auto& [k, unused] : keys) list += (list.empty() ? "" : ", ") + k;
    throw ValidationError("unknown example '" + name + "' (available: " + list + ")");
  }
  const Params p(items, it->second);
  if (p.has("seed")) {
    const long long s = p.integer("seed", 0);
    if (s < 0) throw ValidationError("parameter seed must be nonnegative");
    g.seed = static_cast<std::uint64_t>(s);
  }
  if (p.has("tol")) g.tol = positive(p.real("tol", g.tol), "tol");
  r.command = "smooth example " + name;
  r.parameters["seed"] = g.seed;
  r.parameters["tol"] = g.tol;
  if (name == "plane-so2" || name == "plane-o2") return example_plane(name == "plane-o2", p, r, g.tol);
  if (name == "torus-free") return example_torus(p, r, g.tol);
  if (name == "adjoint-su2") return example_adjoint(p, r);
  if (name == "symplectic-bk") return example_bk(p, r);
  if (name == "poisson-sphere-bundle") return example_sphere_bundle(p, r);
  return example_su2_dual(p, r);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Globals g;
  CLI::App app{"Volumes and cardinalities of finite and Lie groupoid quotients", "stackvol"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--json", g.json, "Emit a JSON document instead of text");
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  auto* tol_opt = app.add_option("--tol", g.tol, "Absolute tolerance (Weyl check: relative, default 0.02)")
                      ->capture_default_str()
                      ->check(CLI::PositiveNumber);

  std::string groupoid_path, weights_path, method = "both", out_path, weights_out;
  std::vector<std::string> orbit_ids;
  std::string left_path, right_path, bundle_path, left_weights, right_weights;
  GeneratorBounds bounds;
  unsigned cutoff = 13;
  std::string example_name;
  std::vector<std::string> example_params;
  std::size_t samples = 1000000;
  double width = 0.1;

  auto* finite = app.add_subcommand("finite", "Exact computations on finite groupoids");
  finite->require_subcommand(1);
  auto* card = finite->add_subcommand("cardinality", "Sum over orbits of 1/#isotropy");
  card->add_option("--groupoid", groupoid_path, "Groupoid JSON")->required();
  auto* vol = finite->add_subcommand("volume", "Volume for weights (a, b)");
  vol->add_option("--groupoid", groupoid_path, "Groupoid JSON")->required();
  vol->add_option("--weights", weights_path, "Weights JSON")->required();
  vol->add_option("--method", method, "fiber, orbit or both")
      ->check(CLI::IsMember({"fiber", "orbit", "both"}))
      ->capture_default_str();
  auto* meas = finite->add_subcommand("measure", "Measure of the preimage of a set of orbits");
  meas->add_option("--groupoid", groupoid_path, "Groupoid JSON")->required();
  meas->add_option("--weights", weights_path, "Weights JSON")->required();
  meas->add_option("--orbits", orbit_ids, "Orbits, each named by one of its objects")->delimiter(',');
  auto* gen = finite->add_subcommand("generate", "Seeded random block groupoid");
  gen->add_option("--max-objects", bounds.max_objects)->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--max-group-order", bounds.max_group_order)->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--out", out_path, "Write the groupoid here instead of stdout");
  gen->add_option("--weights-out", weights_out, "Also write random invariant weights here");

  auto* morita = app.add_subcommand("morita", "Bibundles and Morita invariance");
  morita->require_subcommand(1);
  auto* link = morita->add_subcommand("link", "Linking groupoid of a bibundle");
  auto* check = morita->add_subcommand("check", "Compare volumes across a bibundle");
  for (auto* sub : {link, check}) {
    sub->add_option("--left", left_path, "Left groupoid JSON")->required();
    sub->add_option("--right", right_path, "Right groupoid JSON")->required();
    sub->add_option("--bibundle", bundle_path, "Bibundle JSON")->required();
  }
  link->add_option("--out", out_path, "Write the linking groupoid here instead of stdout");
  check->add_option("--left-weights", left_weights, "Weights JSON on the left")->required();
  check->add_option("--right-weights", right_weights, "Weights JSON on the right")->required();

  auto* smooth = app.add_subcommand("smooth", "Catalog of Lie groupoid models");
  smooth->require_subcommand(1);
  auto* example = smooth->add_subcommand("example", "Evaluate a catalog model");
  example->add_option("name", example_name, "Model name")->required();
  example->add_option("params", example_params, "key=value parameters");
  auto* weyl = smooth->add_subcommand("weyl-check", "Monte Carlo check of the SU(2) integration formula");
  weyl->add_option("--samples", samples)->capture_default_str()->check(CLI::Range(2.0, 1e10));
  weyl->add_option("--width", width, "Width of the Gaussian test function")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  auto* series = app.add_subcommand("series", "Partial sums of infinite groupoid cardinalities");
  series->require_subcommand(1);
  auto* sets = series->add_subcommand("finite-sets", "Groupoid of finite sets and bijections");
  sets->add_option("--cutoff", cutoff, "Largest set size included")->capture_default_str()->check(CLI::Range(0, 1000));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }
  g.tol_given = tol_opt->count() > 0;

  Report r;
  try {
    if (*card) {
      r.command = "finite cardinality";
      r.parameters["groupoid"] = groupoid_path;
      const auto groupoid = load_groupoid(groupoid_path);
      r.result["cardinality"] = to_string(cardinality(groupoid));
      r.result["orbits"] = orbits(groupoid).orbits.size();
    } else if (*vol) {
      r.command = "finite volume";
      r.parameters["groupoid"] = groupoid_path;
      r.parameters["weights"] = weights_path;
      r.parameters["method"] = method;
      const auto groupoid = load_groupoid(groupoid_path);
      const auto w = weights_from_json(read_json_file(weights_path), groupoid);
      std::optional<Rational> fiber, orbit;
      if (method != "orbit") fiber = fiber_volume(groupoid, w);
      if (method != "fiber") orbit = orbit_volume(groupoid, w);
      if (fiber) r.result["fiber"] = to_string(*fiber);
      if (orbit) r.result["orbit"] = to_string(*orbit);
      if (fiber && orbit) {
        r.result["equal"] = *fiber == *orbit;
        if (*fiber != *orbit) {
          emit(r, g, out);
          err << "error: fiber and orbit volumes differ\n";
          return kValidation;
        }
      }
    } else if (*meas) {
      r.command = "finite measure";
      r.parameters["groupoid"] = groupoid_path;
      r.parameters["weights"] = weights_path;
      std::string joined;
      for (const auto& id : orbit_ids) joined += (joined.empty() ? "" : ",") + id;
      r.parameters["orbits"] = joined;
      const auto groupoid = load_groupoid(groupoid_path);
      const auto w = weights_from_json(read_json_file(weights_path), groupoid);
      const auto dec = orbits(groupoid);
      std::vector<Index> positions;
      for (const auto& id : orbit_ids) {
        auto x = groupoid.find_object(id);
        if (!x) throw ValidationError("unknown orbit '" + id + "': no such object");
        positions.push_back(dec.orbit_of[*x]);
      }
      r.result["measure"] = to_string(orbit_set_measure(groupoid, w, positions));
    } else if (*gen) {
      r.command = "finite generate";
      r.parameters["seed"] = g.seed;
      r.parameters["max-objects"] = bounds.max_objects;
      r.parameters["max-group-order"] = bounds.max_group_order;
      const auto groupoid = random_groupoid(g.seed, bounds);
      r.result["objects"] = groupoid.object_count();
      r.result["arrows"] = groupoid.arrow_count();
      r.result["cardinality"] = to_string(cardinality(groupoid));
      if (!weights_out.empty()) {
        Engine rng(g.seed);
        rng.discard(1);
        write_json_file(weights_out, weights_to_json(random_invariant_weights(rng, groupoid), groupoid));
        r.parameters["weights-out"] = weights_out;
      }
      if (!out_path.empty()) {
        write_json_file(out_path, groupoid_to_json(groupoid));
        r.parameters["out"] = out_path;
      } else if (g.json) {
        r.result["groupoid"] = groupoid_to_json(groupoid);
      } else {
        r.document = groupoid_to_json(groupoid).dump(2);
      }
    } else if (*link || *check) {
      r.command = *link ? "morita link" : "morita check";
      r.parameters["left"] = left_path;
      r.parameters["right"] = right_path;
      r.parameters["bibundle"] = bundle_path;
      const auto left = load_groupoid(left_path);
      const auto right = load_groupoid(right_path);
      const auto bundle = bibundle_from_json(read_json_file(bundle_path), left, right);
      const auto report = validate_bibundle(left, right, bundle);
      if (!report.ok()) throw ValidationError(describe(report, "bibundle '" + bundle_path + "'"));
      if (*link) {
        const auto linked = linking_groupoid(left, right, bundle);
        r.result["objects"] = linked.object_count();
        r.result["arrows"] = linked.arrow_count();
        r.result["valid"] = validate(linked).ok();
        if (!out_path.empty()) {
          write_json_file(out_path, groupoid_to_json(linked));
          r.parameters["out"] = out_path;
        } else if (g.json) {
          r.result["groupoid"] = groupoid_to_json(linked);
        } else {
          r.document = groupoid_to_json(linked).dump(2);
        }
      } else {
        r.parameters["left-weights"] = left_weights;
        r.parameters["right-weights"] = right_weights;
        const auto wl = weights_from_json(read_json_file(left_weights), left);
        const auto wr = weights_from_json(read_json_file(right_weights), right);
        const auto m = morita_volume_check(left, right, bundle, wl, wr);
        r.result["leftVolume"] = to_string(m.left_volume);
        r.result["rightVolume"] = to_string(m.right_volume);
        r.result["equal"] = m.equal();
        if (!m.equal()) {
          emit(r, g, out);
          err << "error: volumes differ across the bibundle\n";
          return kValidation;
        }
      }
    } else if (*example) {
      smooth_example(example_name, example_params, g, r);
    } else if (*weyl) {
      const double tol = g.tol_given ? g.tol : kDefaultWeylTol;
      r.command = "smooth weyl-check";
      r.parameters["seed"] = g.seed;
      r.parameters["tol"] = tol;
      r.parameters["samples"] = samples;
      r.parameters["width"] = width;
      const auto report = weyl_integration_check(gaussian_test_function(width), samples, g.seed, tol);
      r.result["lhs"] = {{"value", report.lhs}, {"errorEstimate", report.lhs_error}, {"evaluations", report.samples}};
      r.result["rhs"] = {{"value", report.rhs}, {"errorEstimate", report.rhs_error}};
      r.result["relativeError"] = report.relative_error;
      r.result["converged"] = report.converged;
      r.result["passed"] = report.passed;
      emit(r, g, out);
      if (!report.converged) {
        err << "error: Monte Carlo relative standard error exceeds tol/3; increase --samples\n";
        return kNumerical;
      }
      if (!report.passed) {
        err << "error: relative error " << real(report.relative_error) << " exceeds tol " << real(tol) << '\n';
        return kValidation;
      }
      return kOk;
    } else if (*sets) {
      r.command = "series finite-sets";
      r.parameters["cutoff"] = cutoff;
      const Rational sum = finite_sets_cardinality(cutoff);
      r.result["partialSum"] = to_string(sum);
      r.result["value"] = to_double(sum);
      r.result["differenceFromE"] = std::numbers::e - to_double(sum);
    }
  } catch (const NonConvergence& e) {
    err << "numerical error: " << e.what() << " (partial value " << real(e.partial_value()) << ", error estimate "
        << real(e.error_estimate(), 3) << ", " << e.evaluations() << " evaluations)\n";
    return kNumerical;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << '\n';
    return kInput;
  }
  emit(r, g, out);
  return kOk;
}

}  // namespace stackvol
