// Command-line front end over the gsmin C API.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gsmin/gsmin.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kComputation = 1, kUsage = 2, kVerifyFail = 3 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ComputeError : std::runtime_error {
  ComputeError(gsmin_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  gsmin_status status;
};

void check(gsmin_status s, const char* what) {
  if (s != GSMIN_OK) throw ComputeError(s, std::string(what) + ": " + gsmin_last_error());
}

const char* const kCommands[] = {"minimize", "curve", "mstar", "shoot", "mp-path", "verify"};
const char* const kCommandHelp[] = {
    "ground state on S_m by normalized gradient flow",
    "energy curve m -> E_m over a mass list",
    "critical mass bracket (or zero class)",
    "shooting for the free problem at frequency mu",
    "mountain-pass path through a shooting witness",
    "run the verdict suite",
};

enum class Kind { Number, Integer, String, Bool, NumberList, Model, OptNumber };

struct Key {
  const char* path;  // dotted
  Kind kind;
  const char* flag;  // "" for config-only keys
  const char* help;
};

const Key kKeys[] = {
    {"command", Kind::String, "", "subcommand (when run from a config file)"},
    {"model", Kind::Model, "--model", "nonlinearity descriptor, e.g. single-power:p=4"},
    {"dim", Kind::Integer, "--dim", "space dimension N"},
    {"mass", Kind::OptNumber, "--mass", "mass m"},
    {"masses", Kind::NumberList, "--masses", "comma-separated mass list"},
    {"mu", Kind::OptNumber, "--mu", "frequency mu"},
    {"mus", Kind::NumberList, "--mus", "comma-separated mu list"},
    {"sign", Kind::Integer, "--sign", "solution sign for shoot/mp-path (0: least action)"},
    {"height", Kind::OptNumber, "--height", "single radial shot from this start height"},
    {"grid.R", Kind::Number, "--R", "grid radius"},
    {"grid.M", Kind::Integer, "--M", "grid intervals"},
    {"solver.dt", Kind::Number, "--dt", "initial time step"},
    {"solver.tol", Kind::Number, "--tol", "convergence tolerance"},
    {"solver.max_iter", Kind::Integer, "--max-iter", "iteration cap"},
    {"solver.restarts", Kind::Integer, "--restarts", "restarts"},
    {"solver.seed", Kind::Integer, "--seed", "random seed"},
    {"solver.init", Kind::String, "--init", "gaussian | random-bump | file"},
    {"solver.init_width", Kind::Number, "--init-width", "initial profile width"},
    {"solver.init_file", Kind::String, "--init-file", "initial profile CSV (r,u)"},
    {"shoot.step", Kind::Number, "--step", "RK4 step"},
    {"shoot.length_factor", Kind::Number, "", ""},
    {"shoot.blowup_factor", Kind::Number, "", ""},
    {"shoot.decay_threshold", Kind::Number, "", ""},
    {"shoot.capture_ratio", Kind::Number, "", ""},
    {"shoot.capture_slope_tol", Kind::Number, "", ""},
    {"path.samples", Kind::Integer, "--samples", "initial path sample density"},
    {"path.delta", Kind::Number, "--delta", "separation radius"},
    {"path.M_target", Kind::Number, "--M-target", "end mass (0: witness mass)"},
    {"path.max_doublings", Kind::Integer, "", ""},
    {"mstar.m_lo", Kind::Number, "--m-lo", "initial lower mass"},
    {"mstar.m_hi", Kind::Number, "--m-hi", "initial upper mass"},
    {"mstar.tol_mass", Kind::Number, "--tol-mass", "bracket width"},
    {"mstar.margin", Kind::Number, "--margin", "negativity margin (0: 10 tol)"},
    {"mstar.max_growth", Kind::Integer, "", ""},
    {"mstar.verify_restarts", Kind::Integer, "--verify-restarts", "restarts for endpoint checks"},
    {"mstar.spot_masses", Kind::NumberList, "--spot-masses", "zero-class spot masses"},
    {"mstar.spot_reference_mass", Kind::Number, "", ""},
    {"verify.suite", Kind::String, "--suite", "all | thm18 | thm14 | curve | lemma31 | lemma32 | lemma41"},
    {"verify.rearrange_profiles", Kind::Integer, "--rearrange-profiles", "random profiles"},
    {"verify.baseline", Kind::String, "--baseline", "regression baseline JSON"},
    {"tolerances.thm18", Kind::Number, "--tol-thm18", "least-action identity tolerance"},
    {"tolerances.identity", Kind::Number, "--tol-identity", "Pohozaev/Nehari relative tolerance"},
    {"tolerances.phase", Kind::Number, "--tol-phase", "phase-plane energy drift"},
    {"tolerances.curve", Kind::Number, "--tol-curve", "energy-curve shape slack"},
    {"tolerances.rearrange", Kind::Number, "--tol-rearrange", "rearrangement mass/gradient tolerance"},
    {"tolerances.regression", Kind::Number, "--tol-regression", "relative drift against baselines"},
    {"warm_start", Kind::Bool, "--warm-start", "curve: seed each mass from the previous one"},
    {"workers", Kind::Integer, "--workers", "worker threads (0: all cores)"},
    {"output", Kind::String, "--output", "output directory"},
};

json::json_pointer pointer(const std::string& dotted) {
  std::string p;
  std::stringstream ss(dotted);
  for (std::string part; std::getline(ss, part, '.');) p += "/" + part;
  return json::json_pointer(p);
}

const Key* find_key(const std::string& dotted) {
  for (const auto& k : kKeys)
    if (dotted == k.path) return &k;
  return nullptr;
}

json defaults() {
  gsmin_suite_config s;
  gsmin_suite_config_default(&s);
  json spot = json::array({0.01, 0.1, 1.0});
  return json{
      {"command", nullptr},
      {"model", nullptr},
      {"dim", 1},
      {"mass", nullptr},
      {"masses", json::array()},
      {"mu", nullptr},
      {"mus", json::array()},
      {"sign", 0},
      {"height", nullptr},
      {"grid", {{"R", 20.0}, {"M", 4000}}},
      {"solver",
       {{"dt", s.solver.dt},
        {"tol", s.solver.tol},
        {"max_iter", s.solver.max_iter},
        {"restarts", s.solver.restarts},
        {"seed", s.solver.seed},
        {"init", "gaussian"},
        {"init_width", s.solver.init_width},
        {"init_file", ""}}},
      {"shoot",
       {{"step", s.shoot.step},
        {"length_factor", s.shoot.length_factor},
        {"blowup_factor", s.shoot.blowup_factor},
        {"decay_threshold", s.shoot.decay_threshold},
        {"capture_ratio", s.shoot.capture_ratio},
        {"capture_slope_tol", s.shoot.capture_slope_tol}}},
      {"path",
       {{"samples", s.path.samples},
        {"delta", s.path.delta},
        {"M_target", s.path.M_target},
        {"max_doublings", s.path.max_doublings}}},
      {"mstar",
       {{"m_lo", s.mstar.m_lo},
        {"m_hi", s.mstar.m_hi},
        {"tol_mass", s.mstar.tol_mass},
        {"margin", s.mstar.margin},
        {"max_growth", s.mstar.max_growth},
        {"verify_restarts", s.mstar.verify_restarts},
        {"spot_masses", spot},
        {"spot_reference_mass", s.mstar.spot_reference_mass}}},
      {"verify", {{"suite", "all"}, {"rearrange_profiles", s.rearrange_profiles}, {"baseline", ""}}},
      {"tolerances",
       {{"thm18", s.tol.thm18},
        {"identity", s.tol.identity},
        {"phase", s.tol.phase},
        {"curve", s.tol.curve},
        {"rearrange", s.tol.rearrange},
        {"regression", s.tol.regression}}},
      {"warm_start", false},
      {"workers", 0},
      {"output", ""},
  };
}

void check_type(const Key& k, const json& v) {
  auto bad = [&](const char* want) {
    throw ConfigError(std::string("config key '") + k.path + "' must be " + want + ", got " + v.dump());
  };
  switch (k.kind) {
    case Kind::Number:
      if (!v.is_number()) bad("a number");
      break;
    case Kind::OptNumber:
      if (!v.is_null() && !v.is_number()) bad("a number or null");
      break;
    case Kind::Integer:
      if (!v.is_number_integer()) bad("an integer");
      break;
    case Kind::String:
      if (!v.is_string() && !(v.is_null() && std::string(k.path) == "command")) bad("a string");
      break;
    case Kind::Bool:
      if (!v.is_boolean()) bad("a boolean");
      break;
    case Kind::NumberList:
      if (!v.is_array()) bad("a list of numbers");
      for (const auto& x : v)
        if (!x.is_number()) bad("a list of numbers");
      break;
    case Kind::Model:
      if (v.is_null() || v.is_string()) break;
      if (!v.is_object() || !v.contains("family") || !v["family"].is_string())
        bad("a descriptor string or an object with a 'family' string");
      for (auto it = v.begin(); it != v.end(); ++it)
        if (it.key() != "family" && !it->is_number()) bad("an object of numeric parameters");
      break;
  }
}

void merge(json& base, const json& overlay, const std::string& prefix) {
  if (!overlay.is_object()) throw ConfigError("config must be a JSON object");
  for (auto it = overlay.begin(); it != overlay.end(); ++it) {
    const std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
    const Key* k = find_key(path);
    if (k) {
      check_type(*k, *it);
      base[it.key()] = *it;
    } else if (base.contains(it.key()) && base[it.key()].is_object()) {
      merge(base[it.key()], *it, path);
    } else {
      throw ConfigError("unknown config key '" + path + "'");
    }
  }
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string model_descriptor(const json& m) {
  if (m.is_string()) return m.get<std::string>();
  std::string d = m["family"].get<std::string>();
  bool first = true;
  for (auto it = m.begin(); it != m.end(); ++it) {
    if (it.key() == "family") continue;
    d += (first ? ":" : ",") + it.key() + "=" + format_number(it->get<double>());
    first = false;
  }
  return d;
}

json parse_flag_value(const Key& k, const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size())
      throw ConfigError(std::string("option ") + k.flag + ": '" + s + "' is not a number");
    return v;
  };
  switch (k.kind) {
    case Kind::Number:
    case Kind::OptNumber:
      return number(text);
    case Kind::Integer: {
      const double v = number(text);
      if (v != static_cast<double>(static_cast<long long>(v)))
        throw ConfigError(std::string("option ") + k.flag + ": '" + text + "' is not an integer");
      return static_cast<long long>(v);
    }
    case Kind::Bool:
      if (text == "true" || text == "1" || text.empty()) return true;
      if (text == "false" || text == "0") return false;
      throw ConfigError(std::string("option ") + k.flag + ": expected true or false");
    case Kind::NumberList: {
      json arr = json::array();
      std::stringstream ss(text);
      for (std::string part; std::getline(ss, part, ',');)
        if (!part.empty()) arr.push_back(number(part));
      return arr;
    }
    case Kind::String:
    case Kind::Model:
      return text;
  }
  return nullptr;
}

/// Resolved run; C strings point into the owned config.
struct Run {
  std::string command;
  json config;
  std::string descriptor;
  fs::path outdir;
};

std::vector<double> numbers(const json& a) { return a.get<std::vector<double>>(); }

gsmin_solver_config solver_config(const json& c) {
  gsmin_solver_config s;
  gsmin_solver_config_default(&s);
  const json& j = c["solver"];
  s.dt = j["dt"];
  s.tol = j["tol"];
  s.max_iter = j["max_iter"];
  s.restarts = j["restarts"];
  if (j["seed"].get<long long>() < 0) throw ConfigError("solver.seed must be nonnegative");
  s.seed = j["seed"].get<std::uint64_t>();
  const std::string init = j["init"];
  if (init == "gaussian") s.init = GSMIN_INIT_GAUSSIAN;
  else if (init == "random-bump") s.init = GSMIN_INIT_RANDOM_BUMP;
  else if (init == "file") s.init = GSMIN_INIT_FILE;
  else throw ConfigError("solver.init must be gaussian, random-bump or file");
  s.init_width = j["init_width"];
  s.init_file = j["init_file"].get_ref<const std::string&>().c_str();
  s.workers = c["workers"];
  return s;
}

gsmin_shoot_options shoot_options(const json& c) {
  const json& j = c["shoot"];
  return gsmin_shoot_options{j["step"], j["length_factor"], j["blowup_factor"],
                             j["decay_threshold"], j["capture_ratio"], j["capture_slope_tol"]};
}

gsmin_path_options path_options(const json& c) {
  const json& j = c["path"];
  return gsmin_path_options{j["samples"], j["delta"], j["M_target"], j["max_doublings"]};
}

gsmin_mstar_options mstar_options(const json& c, std::vector<double>& spot) {
  const json& j = c["mstar"];
  gsmin_mstar_options o;
  gsmin_mstar_options_default(&o);
  o.m_lo = j["m_lo"];
  o.m_hi = j["m_hi"];
  o.tol_mass = j["tol_mass"];
  o.margin = j["margin"];
  o.max_growth = j["max_growth"];
  o.verify_restarts = j["verify_restarts"];
  spot = numbers(j["spot_masses"]);
  o.spot_masses = spot.data();
  o.spot_count = spot.size();
  o.spot_reference_mass = j["spot_reference_mass"];
  return o;
}

gsmin_grid grid_of(const json& c) {
  return gsmin_grid{c["dim"].get<int>(), c["grid"]["R"].get<double>(), c["grid"]["M"].get<int>()};
}

double required_number(const json& c, const char* key, const std::string& command) {
  if (c[key].is_null()) throw ConfigError(command + " needs --" + key);
  return c[key];
}

template <class T, void (*Free)(T*)>
struct Owned {
  T* p = nullptr;
  ~Owned() { Free(p); }
};

std::string path_in(const Run& r, const char* name) { return (r.outdir / name).string(); }

void print_kv(const char* name, double v) { std::printf("  %-22s %.10g\n", name, v); }

int cmd_minimize(const Run& r, const gsmin_model* model) {
  const json& c = r.config;
  const double m = required_number(c, "mass", r.command);
  const gsmin_grid g = grid_of(c);
  const gsmin_solver_config s = solver_config(c);
  Owned<gsmin_minimizer, gsmin_minimizer_free> h;
  check(gsmin_minimize(model, &g, m, &s, &h.p), "minimize");
  gsmin_minimize_summary sum;
  check(gsmin_minimizer_summary(h.p, &sum), "summary");
  check(gsmin_minimizer_write_summary(h.p, path_in(r, "minimize.csv").c_str()), "write");
  check(gsmin_minimizer_write_profile(h.p, path_in(r, "profile.csv").c_str()), "write");
  std::printf("minimize %s N=%d m=%g (R=%g, M=%d)\n", r.descriptor.c_str(), g.N, m, g.R, g.M);
  print_kv("E", sum.E);
  print_kv("mu", sum.mu);
  print_kv("kinetic", sum.kinetic);
  print_kv("potential", sum.potential);
  print_kv("pohozaev (relative)", sum.pohozaev_relative);
  print_kv("nehari (relative)", sum.nehari_relative);
  print_kv("iterations", sum.iterations);
  std::printf("  %-22s %s\n", "converged", sum.converged ? "yes" : "no");
  std::printf("  %-22s %s\n", "constant sign", sum.constant_sign ? "yes" : "no");
  std::printf("  %-22s %s\n", "nonincreasing |u|", sum.nonincreasing_modulus ? "yes" : "no");
  return kOk;
}

int cmd_curve(const Run& r, const gsmin_model* model) {
  const json& c = r.config;
  std::vector<double> masses = numbers(c["masses"]);
  if (masses.empty() && !c["mass"].is_null()) masses.push_back(c["mass"]);
  const gsmin_grid g = grid_of(c);
  const gsmin_solver_config s = solver_config(c);
  Owned<gsmin_curve, gsmin_curve_free> h;
  check(gsmin_curve_run(model, &g, masses.data(), masses.size(), &s, c["warm_start"].get<bool>(),
                        c["workers"].get<int>(), &h.p),
        "curve");
  check(gsmin_curve_write_csv(h.p, path_in(r, "curve.csv").c_str()), "write");
  check(gsmin_curve_write_plot(h.p, path_in(r, "curve.dat").c_str()), "write");
  std::printf("curve %s N=%d (%zu masses)\n", r.descriptor.c_str(), g.N, masses.size());
  std::printf("  %-14s %-18s %-18s %s\n", "m", "E", "mu", "converged");
  for (std::size_t i = 0; i < gsmin_curve_size(h.p); ++i) {
    gsmin_curve_row row;
    check(gsmin_curve_get(h.p, i, &row), "row");
    if (!row.ok) {
      std::printf("  %-14g error: %s\n", row.m, row.error);
      continue;
    }
    std::printf("  %-14g %-18.10g %-18.10g %s\n", row.m, row.E, row.mu, row.converged ? "yes" : "no");
  }
  gsmin_curve_shape shape;
  if (gsmin_curve_shape_check(h.p, c["tolerances"]["curve"].get<double>(), &shape) == GSMIN_OK) {
    std::printf("  nonincreasing %s, subhomogeneous %s, continuous %s", shape.nonincreasing ? "yes" : "no",
                shape.subhomogeneous ? "yes" : "no", shape.continuous ? "yes" : "no");
    if (shape.concave_applicable) std::printf(", concave %s", shape.concave ? "yes" : "no");
    std::printf("\n");
  } else {
    std::printf("  shape checks skipped: %s\n", gsmin_last_error());
  }
  return kOk;
}

int cmd_mstar(const Run& r, const gsmin_model* model) {
  const json& c = r.config;
  const gsmin_grid g = grid_of(c);
  const gsmin_solver_config s = solver_config(c);
  std::vector<double> spot;
  const gsmin_mstar_options o = mstar_options(c, spot);
  Owned<gsmin_mstar, gsmin_mstar_free> h;
  check(gsmin_mstar_run(model, &g, &s, &o, &h.p), "mstar");
  gsmin_mstar_summary sum;
  check(gsmin_mstar_summary_get(h.p, &sum), "summary");
  check(gsmin_mstar_write_log(h.p, path_in(r, "mstar_log.csv").c_str()), "write");
  static const char* names[] = {"zero", "positive", "bracketed"};
  std::printf("mstar %s N=%d (R=%g, M=%d)\n", r.descriptor.c_str(), g.N, g.R, g.M);
  std::printf("  %-22s %s\n", "classification", names[sum.classification]);
  print_kv("lower", sum.lower);
  print_kv("upper", sum.upper);
  print_kv("width", sum.width);
  print_kv("margin", sum.margin);
  if (sum.classification != GSMIN_MSTAR_ZERO) {
    print_kv("E(upper)", sum.E_upper);
    print_kv("E(lower)", sum.E_lower);
    std::printf("  %-22s %s\n", "endpoints verified", sum.endpoints_verified ? "yes" : "no");
  }
  for (std::size_t i = 0; i < sum.spot_checks; ++i) {
    double m = 0, E = 0;
    int cert = 0;
    check(gsmin_mstar_spot(h.p, i, &m, &E, &cert), "spot");
    std::printf("  spot m=%-8g E=%-16.8g %s\n", m, E, cert ? "certified negative" : "not certified");
  }
  return kOk;
}

void witness(const Run& r, const gsmin_model* model, Owned<gsmin_shot, gsmin_shot_free>& h) {
  const json& c = r.config;
  const double mu = required_number(c, "mu", r.command);
  const int N = c["dim"];
  const int sign = c["sign"];
  const gsmin_shoot_options o = shoot_options(c);
  if (!c["height"].is_null()) {
    check(gsmin_shoot_radial(model, N, mu, c["height"].get<double>(), &o, &h.p), "shoot");
  } else if (sign == 0) {
    check(gsmin_least_action(model, N, mu, &o, &h.p), "least action");
  } else if (sign == 1 || sign == -1) {
    check(N == 1 ? gsmin_shoot_1d(model, mu, sign, &o, &h.p)
                 : gsmin_ground_state(model, N, mu, sign, &o, &h.p),
          "shoot");
  } else {
    throw ConfigError("sign must be -1, 0 or 1");
  }
}

int cmd_shoot(const Run& r, const gsmin_model* model) {
  Owned<gsmin_shot, gsmin_shot_free> h;
  witness(r, model, h);
  gsmin_shot_summary s;
  check(gsmin_shot_summary_get(h.p, &s), "summary");
  check(gsmin_shot_write_trajectory(h.p, path_in(r, "trajectory.csv").c_str()), "write");
  check(gsmin_shot_write_summary(h.p, path_in(r, "shoot.csv").c_str()), "write");
  static const char* names[] = {"decayed", "blew_up", "oscillated", "no_solution"};
  std::printf("shoot %s N=%d mu=%g\n", r.descriptor.c_str(), s.N, s.mu);
  std::printf("  %-22s %s\n", "status", names[s.status]);
  print_kv("start height", s.zeta);
  if (s.status == GSMIN_SHOT_DECAYED) {
    print_kv("action", s.action);
    print_kv("mass", s.mass);
    print_kv("pohozaev (relative)", s.pohozaev_relative);
    print_kv("nehari (relative)", s.nehari_relative);
    if (s.N == 1) print_kv("phase energy drift", s.phase_energy_max_dev);
  }
  return kOk;
}

int cmd_path(const Run& r, const gsmin_model* model) {
  Owned<gsmin_shot, gsmin_shot_free> w;
  witness(r, model, w);
  gsmin_shot_summary ws;
  check(gsmin_shot_summary_get(w.p, &ws), "summary");
  if (ws.status != GSMIN_SHOT_DECAYED)
    throw ComputeError(GSMIN_NO_SOLUTION, "mp-path: witness did not decay");
  const gsmin_path_options o = path_options(r.config);
  Owned<gsmin_path, gsmin_path_free> h;
  check(gsmin_path_run(model, w.p, &o, &h.p), "path");
  gsmin_path_summary s;
  check(gsmin_path_summary_get(h.p, &s), "summary");
  check(gsmin_path_write_csv(h.p, path_in(r, "path.csv").c_str()), "write");
  check(gsmin_path_write_plots(h.p, path_in(r, "path_action.dat").c_str(),
                               path_in(r, "path_mass.dat").c_str()),
        "write");
  static const char* kinds[] = {"dilation", "plateau", "two-parameter"};
  auto yn = [](int b) { return b ? "yes" : "no"; };
  std::printf("mp-path %s N=%d mu=%g (%s, %zu samples)\n", r.descriptor.c_str(), ws.N, ws.mu,
              kinds[s.kind], s.samples);
  print_kv("J(w)", s.J_w);
  print_kv("max J", s.max_J);
  print_kv("J(gamma(T))", s.J_T);
  print_kv("ln T", s.log_T);
  print_kv("m(T)", s.m_T);
  std::printf("  endpoints %s, maximum %s, separation %s, mass increasing %s\n", yn(s.endpoints),
              yn(s.maximum), yn(s.separation), yn(s.mass_increasing));
  if (s.kind == GSMIN_PATH_DILATION) print_kv("formula mismatch", s.formula_mismatch);
  if (s.kind == GSMIN_PATH_PLATEAU) std::printf("  plateau bound %s\n", yn(s.plateau_bound));
  if (s.kind == GSMIN_PATH_TWO_PARAMETER) std::printf("  segment pattern %s\n", yn(s.pattern_ok));
  const std::string reasons = gsmin_path_reasons(h.p);
  if (!reasons.empty()) std::printf("%s", reasons.c_str());
  return kOk;
}

int cmd_verify(const Run& r, const gsmin_model* model) {
  const json& c = r.config;
  gsmin_suite_config cfg;
  gsmin_suite_config_default(&cfg);
  const std::string suite = c["verify"]["suite"];
  const std::string baseline = c["verify"]["baseline"];
  cfg.suite = suite.c_str();
  cfg.m = c["mass"].is_null() ? 0.0 : c["mass"].get<double>();
  const std::vector<double> masses = numbers(c["masses"]);
  std::vector<double> mus = numbers(c["mus"]);
  if (mus.empty() && !c["mu"].is_null()) mus.push_back(c["mu"]);
  cfg.masses = masses.data();
  cfg.mass_count = masses.size();
  cfg.mus = mus.data();
  cfg.mu_count = mus.size();
  cfg.solver = solver_config(c);
  cfg.shoot = shoot_options(c);
  cfg.path = path_options(c);
  std::vector<double> spot;
  cfg.mstar = mstar_options(c, spot);
  const json& t = c["tolerances"];
  cfg.tol = gsmin_tolerances{t["thm18"], t["identity"], t["phase"], t["curve"], t["rearrange"], t["regression"]};
  cfg.rearrange_profiles = c["verify"]["rearrange_profiles"];
  cfg.baseline_path = baseline.c_str();
  cfg.workers = c["workers"];
  const gsmin_grid g = grid_of(c);
  Owned<gsmin_report, gsmin_report_free> h;
  check(gsmin_verify(model, &g, &cfg, &h.p), "verify");
  check(gsmin_report_write_csv(h.p, path_in(r, "verdicts.csv").c_str()), "write");
  const char* table = nullptr;
  check(gsmin_report_table(h.p, &table), "table");
  std::printf("verify %s N=%d suite=%s\n%s", r.descriptor.c_str(), g.N, suite.c_str(), table);
  int counts[3] = {0, 0, 0};
  for (std::size_t i = 0; i < gsmin_report_size(h.p); ++i) {
    gsmin_verdict v;
    check(gsmin_report_get(h.p, i, &v), "verdict");
    ++counts[v.status];
  }
  std::printf("%d pass, %d fail, %d not applicable\n", counts[0], counts[1], counts[2]);
  return gsmin_report_any_fail(h.p) ? kVerifyFail : kOk;
}

fs::path output_dir(const std::string& command, const std::string& output) {
  fs::path out = output.empty() ? fs::path("gsmin-" + command) : fs::path(output);
  if (out.is_relative()) {
    if (const char* root = std::getenv("GSMIN_OUTPUT_ROOT"); root && *root) out = fs::path(root) / out;
  }
  return out;
}

int execute(Run& run) {
  const json& c = run.config;
  if (run.command == "minimize") required_number(c, "mass", run.command);
  if (run.command == "shoot" || run.command == "mp-path") required_number(c, "mu", run.command);
  solver_config(c);
  Owned<gsmin_model, gsmin_model_free> model;
  const gsmin_status ms = gsmin_model_parse(run.descriptor.c_str(), &model.p);
  if (ms != GSMIN_OK) throw ConfigError(std::string("model: ") + gsmin_last_error());
  run.config["model"] = gsmin_model_describe(model.p);

  std::error_code ec;
  fs::create_directories(run.outdir, ec);
  if (ec || !fs::is_directory(run.outdir))
    throw ComputeError(GSMIN_IO, "cannot create output directory " + run.outdir.string());
  {
    json manifest = run.config;
    manifest["command"] = run.command;
    manifest["output"] = run.outdir.string();
    std::ofstream out(run.outdir / "manifest.json");
    out << manifest.dump(2) << '\n';
    if (!out) throw ComputeError(GSMIN_IO, "cannot write manifest in " + run.outdir.string());
  }
  if (run.command == "minimize") return cmd_minimize(run, model.p);
  if (run.command == "curve") return cmd_curve(run, model.p);
  if (run.command == "mstar") return cmd_mstar(run, model.p);
  if (run.command == "shoot") return cmd_shoot(run, model.p);
  if (run.command == "mp-path") return cmd_path(run, model.p);
  return cmd_verify(run, model.p);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normalized ground states: minimization, critical mass, shooting and verification"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  std::string config_path;
  app.add_option("-c,--config", config_path, "JSON run config; flags override its keys")
      ->check(CLI::ExistingFile);
  std::map<std::string, std::string> flag_values;
  for (const auto& k : kKeys) {
    if (!*k.flag) continue;
    auto* opt = app.add_option(k.flag, flag_values[k.path], k.help);
    static const std::map<Kind, const char*> type_names{
        {Kind::Number, "NUM"}, {Kind::OptNumber, "NUM"}, {Kind::Integer, "INT"},
        {Kind::String, "TEXT"}, {Kind::Bool, "[BOOL]"}, {Kind::NumberList, "NUM,..."},
        {Kind::Model, "MODEL"}};
    opt->type_name(type_names.at(k.kind));
    if (k.kind == Kind::Bool) opt->expected(0, 1);
  }
  std::vector<std::string> sets;
  app.add_option("--set", sets, "override any config key: key.path=JSON value");
  std::map<std::string, CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(kCommands); ++i)
    subs[kCommands[i]] = app.add_subcommand(kCommands[i], kCommandHelp[i]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  Run run;
  try {
    run.config = defaults();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      json file;
      try {
        file = json::parse(in);
      } catch (const json::exception& e) {
        throw ConfigError("cannot parse " + config_path + ": " + e.what());
      }
      merge(run.config, file, "");
    }
    for (const auto& k : kKeys) {
      if (!*k.flag || app.count(k.flag) == 0) continue;
      const json v = parse_flag_value(k, flag_values[k.path]);
      check_type(k, v);
      run.config[pointer(k.path)] = v;
    }
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key.path=value");
      const std::string path = s.substr(0, eq), text = s.substr(eq + 1);
      const Key* k = find_key(path);
      if (!k) throw ConfigError("unknown config key '" + path + "'");
      json v = json::parse(text, nullptr, false);
      if (v.is_discarded()) v = text;
      check_type(*k, v);
      run.config[pointer(path)] = v;
    }

    std::string command;
    for (const auto& [name, sub] : subs)
      if (sub->parsed()) command = name;
    const json& cc = run.config["command"];
    if (command.empty() && cc.is_string()) command = cc.get<std::string>();
    if (command.empty()) throw ConfigError("no subcommand given\n" + app.help());
    if (std::find(std::begin(kCommands), std::end(kCommands), command) == std::end(kCommands))
      throw ConfigError("unknown command '" + command + "'");
    if (cc.is_string() && cc.get<std::string>() != command)
      throw ConfigError("config command '" + cc.get<std::string>() + "' conflicts with subcommand '" +
                        command + "'");
    run.command = command;
    run.config["command"] = command;
    if (run.config["model"].is_null()) throw ConfigError("a model is required (--model)");
    run.descriptor = model_descriptor(run.config["model"]);
    run.outdir = output_dir(command, run.config["output"]);
    return execute(run);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ComputeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.status == GSMIN_INVALID_ARGUMENT ? kUsage : kComputation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kComputation;
  }
}
