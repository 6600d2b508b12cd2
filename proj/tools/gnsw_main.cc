// Batch front-end: reads a JSON run configuration, drives the core solvers,
// and emits deterministic CSV/JSON artifacts.
//
// Exit codes: 0 success, 1 configuration/validation error, 2 numerical
// failure.  All numbers are serialized with 17 significant digits and files
// are written atomically, so identical configurations produce byte-identical
// summaries (modulo the timestamp field, which --no-timestamp removes).

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gnsw/energy.hpp"
#include "gnsw/io.hpp"
#include "gnsw/kdv.hpp"
#include "gnsw/minimize.hpp"
#include "gnsw/multiplier.hpp"
#include "gnsw/newton.hpp"
#include "gnsw/params.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Configuration problems map to exit code 1; everything thrown past the
// extraction phase is treated as a numerical failure (exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string config;
  std::vector<std::string> sets;
  std::string out_dir = ".";
  bool verbose = false;
  bool no_timestamp = false;
};

// ---------------------------------------------------------------------------
// Deterministic JSON emission.  nlohmann::json is used only for *parsing*
// the configuration; summaries are rendered by hand so that field order and
// float formatting are pinned down to the byte.

std::string json_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

class JsonWriter {
 public:
  void field(const std::string& key, double v) { raw(key, gnsw::format_g17(v)); }
  void field(const std::string& key, int v) { raw(key, std::to_string(v)); }
  void field(const std::string& key, long v) { raw(key, std::to_string(v)); }
  void field(const std::string& key, bool v) { raw(key, v ? "true" : "false"); }
  void field(const std::string& key, const char* v) { raw(key, json_quote(v)); }
  void field(const std::string& key, const std::string& v) {
    raw(key, json_quote(v));
  }
  void field(const std::string& key, const std::vector<double>& v) {
    std::string r = "[";
    for (std::size_t i = 0; i < v.size(); ++i)
      r += (i ? ", " : "") + gnsw::format_g17(v[i]);
    raw(key, r + "]");
  }
  // Embeds a sub-object, indenting its continuation lines.
  void object(const std::string& key, const JsonWriter& sub) {
    std::string rendered = sub.str();
    if (!rendered.empty() && rendered.back() == '\n') rendered.pop_back();
    std::string indented;
    for (char ch : rendered) {
      indented += ch;
      if (ch == '\n') indented += "  ";
    }
    raw(key, indented);
  }
  void raw(const std::string& key, const std::string& rendered) {
    fields_.emplace_back(key, rendered);
  }

  std::string str() const {
    std::string out = "{\n";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      out += "  \"" + fields_[i].first + "\": " + fields_[i].second;
      out += (i + 1 < fields_.size()) ? ",\n" : "\n";
    }
    return out + "}\n";
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::string iso_timestamp() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// ---------------------------------------------------------------------------
// Configuration access.

json load_config(const Flags& f) {
  std::ifstream in(f.config);
  if (!in) throw ConfigError("cannot open config file: " + f.config);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!cfg.is_object()) throw ConfigError("config root must be a JSON object");
  for (const std::string& kv : f.sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("--set expects key=value, got: " + kv);
    std::string path = "/" + kv.substr(0, eq);
    for (char& ch : path)
      if (ch == '.') ch = '/';
    std::string val = kv.substr(eq + 1);
    json parsed;
    try {
      parsed = json::parse(val);
    } catch (const json::exception&) {
      parsed = val;  // bare words (e.g. "auto") become strings
    }
    try {
      cfg[json::json_pointer(path)] = parsed;
    } catch (const json::exception& e) {
      throw ConfigError("--set " + kv + ": " + e.what());
    }
  }
  return cfg;
}

const json* find(const json& cfg, const std::string& dotted) {
  const json* cur = &cfg;
  std::size_t start = 0;
  while (true) {
    auto dot = dotted.find('.', start);
    std::string key = dotted.substr(start, dot - start);
    if (!cur->is_object() || !cur->contains(key)) return nullptr;
    cur = &(*cur)[key];
    if (dot == std::string::npos) return cur;
    start = dot + 1;
  }
}

double require_num(const json& cfg, const std::string& key) {
  const json* v = find(cfg, key);
  if (!v || !v->is_number())
    throw ConfigError("config: " + key + " must be a number");
  return v->get<double>();
}

double num_or(const json& cfg, const std::string& key, double fallback) {
  const json* v = find(cfg, key);
  if (!v) return fallback;
  if (!v->is_number()) throw ConfigError("config: " + key + " must be a number");
  return v->get<double>();
}

int int_or(const json& cfg, const std::string& key, int fallback) {
  const json* v = find(cfg, key);
  if (!v) return fallback;
  if (!v->is_number_integer())
    throw ConfigError("config: " + key + " must be an integer");
  return v->get<int>();
}

std::string str_or(const json& cfg, const std::string& key,
                   const std::string& fallback) {
  const json* v = find(cfg, key);
  if (!v) return fallback;
  if (!v->is_string()) throw ConfigError("config: " + key + " must be a string");
  return v->get<std::string>();
}

gnsw::PhysicalParams make_params(const json& cfg) {
  gnsw::PhysicalParams p;
  p.gamma = num_or(cfg, "gamma", 0.0);
  p.delta = num_or(cfg, "delta", 1.0);
  p.h0 = num_or(cfg, "h0", 0.0);
  p.validate();  // invalid_argument -> exit 1
  return p;
}

gnsw::MultiplierSpec make_multiplier(const json& cfg, int layer,
                                     const gnsw::PhysicalParams& p) {
  const std::string which = layer == 1 ? "f1" : "f2";
  std::string kind = str_or(cfg, "multiplier." + which, "id");
  if (kind == "id") return gnsw::MultiplierSpec::identity();
  if (kind == "imp") {
    // Nondimensional layer depths: layer 1 is the reference depth 1,
    // layer 2 is 1/delta.
    double fallback = layer == 1 ? 1.0 : 1.0 / p.delta;
    double d = num_or(cfg, "multiplier.depth" + std::to_string(layer), fallback);
    return gnsw::MultiplierSpec::improved(d);
  }
  if (kind == "custom") {
    std::string table =
        str_or(cfg, "multiplier.table" + std::to_string(layer), "");
    if (table.empty())
      throw ConfigError("config: multiplier.table" + std::to_string(layer) +
                        " is required for a custom symbol");
    double theta =
        num_or(cfg, "multiplier.theta" + std::to_string(layer), 0.5);
    std::vector<double> k, F;
    try {
      gnsw::read_kf_csv(table, k, F);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
    return gnsw::MultiplierSpec::custom(k, F, theta);
  }
  throw ConfigError("config: multiplier." + which +
                    " must be \"id\", \"imp\" or \"custom\"");
}

std::string multiplier_block(const gnsw::MultiplierSpec& f1,
                             const gnsw::MultiplierSpec& f2) {
  std::string out = "{\"f1\": " + json_quote(f1.name());
  if (f1.name() == "imp") out += ", \"depth1\": " + gnsw::format_g17(f1.depth);
  out += ", \"f2\": " + json_quote(f2.name());
  if (f2.name() == "imp") out += ", \"depth2\": " + gnsw::format_g17(f2.depth);
  return out + "}";
}

struct GridChoice {
  gnsw::Grid g;
  bool auto_P = false;
};

GridChoice resolve_grid(const json& cfg, double c_ref,
                        const gnsw::PhysicalParams& p) {
  int N = int_or(cfg, "grid.N", 512);
  const json* P = find(cfg, "grid.P");
  if (!P || (P->is_string() && P->get<std::string>() == "auto"))
    return {gnsw::default_grid(c_ref, p, N), true};
  if (P->is_number()) return {gnsw::Grid(P->get<double>(), N), false};
  throw ConfigError("config: grid.P must be a number or \"auto\"");
}

gnsw::SolverOptions solver_options(const json& cfg, bool verbose) {
  gnsw::SolverOptions o;
  o.tolerance = num_or(cfg, "solver.tolerance", o.tolerance);
  o.max_iterations = int_or(cfg, "solver.max_iterations", o.max_iterations);
  o.damping = num_or(cfg, "solver.damping", o.damping);
  o.max_backtracks = int_or(cfg, "solver.max_backtracks", o.max_backtracks);
  o.jacobian_step = num_or(cfg, "solver.jacobian_step", o.jacobian_step);
  o.verbose = verbose;
  return o;
}

double require_supercritical(const json& cfg, const std::string& key) {
  double c = require_num(cfg, key);
  if (!(c > 1.0))
    throw ConfigError("config: " + key + " = " + gnsw::format_g17(c) +
                      " rejected; solitary waves require supercritical speed c > 1");
  return c;
}

void write_summary(const Flags& f, JsonWriter& w, const std::string& name) {
  if (!f.no_timestamp) w.field("timestamp", iso_timestamp());
  fs::create_directories(f.out_dir);
  gnsw::atomic_write_text(f.out_dir + "/" + name, w.str());
}

// ---------------------------------------------------------------------------
// Commands.

int run_solve(const json& cfg, const Flags& f) {
  gnsw::PhysicalParams p = make_params(cfg);
  double c = require_supercritical(cfg, "solve.c");
  gnsw::MultiplierSpec F1 = make_multiplier(cfg, 1, p);
  gnsw::MultiplierSpec F2 = make_multiplier(cfg, 2, p);
  GridChoice gc = resolve_grid(cfg, c, p);
  gnsw::SolverOptions opts = solver_options(cfg, f.verbose);

  gnsw::NewtonResult r =
      gnsw::newton_solve(gnsw::kdv_guess(c, p, gc.g), c, p, F1, F2, opts);
  if (!r.converged) {
    std::cerr << "solve: " << r.failure_reason << "\n";
    return 2;
  }

  fs::create_directories(f.out_dir);
  gnsw::write_profile_csv(f.out_dir + "/profile.csv", r.wave.profile);
  JsonWriter w;
  w.field("gamma", p.gamma);
  w.field("delta", p.delta);
  w.raw("multiplier", multiplier_block(F1, F2));
  w.field("c", r.wave.c);
  w.field("alpha", r.wave.alpha);
  w.field("q", r.wave.q);
  w.field("amplitude", r.wave.amplitude);
  w.field("residual_norm", r.wave.residual_norm);
  w.field("N", gc.g.N);
  w.field("P", gc.g.P);
  w.field("iterations", r.wave.iterations);
  write_summary(f, w, "summary.json");
  if (f.verbose)
    std::cerr << "solve: converged in " << r.wave.iterations
              << " iterations, amplitude " << r.wave.amplitude << "\n";
  return 0;
}

int run_continue(const json& cfg, const Flags& f) {
  gnsw::PhysicalParams p = make_params(cfg);
  double c_start = require_supercritical(cfg, "continue.c_start");
  double c_end = require_num(cfg, "continue.c_end");
  int steps = int_or(cfg, "continue.steps", 0);
  if (steps < 2) throw ConfigError("config: continue.steps must be >= 2");
  gnsw::MultiplierSpec F1 = make_multiplier(cfg, 1, p);
  gnsw::MultiplierSpec F2 = make_multiplier(cfg, 2, p);
  GridChoice gc = resolve_grid(cfg, c_start, p);
  gnsw::SolverOptions opts = solver_options(cfg, f.verbose);

  gnsw::ContinuationResult r =
      gnsw::continue_in_speed(c_start, c_end, steps, p, F1, F2, opts, gc.g);
  if (r.waves.empty()) {
    std::cerr << "continue: " << r.stop_reason << "\n";
    return 2;
  }

  fs::create_directories(f.out_dir);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < r.waves.size(); ++i) {
    const gnsw::SolitaryWave& wv = r.waves[i];
    char name[32];
    std::snprintf(name, sizeof name, "wave_%03zu.csv", i);
    gnsw::write_profile_csv(f.out_dir + "/" + name, wv.profile);
    rows.push_back({wv.c, wv.q, wv.alpha, wv.amplitude, wv.residual_norm});
  }
  gnsw::write_csv(f.out_dir + "/family.csv", "c,q,alpha,amplitude,residual_norm",
                  rows);
  JsonWriter w;
  w.field("gamma", p.gamma);
  w.field("delta", p.delta);
  w.raw("multiplier", multiplier_block(F1, F2));
  w.field("c_start", c_start);
  w.field("c_end", c_end);
  w.field("steps", steps);
  w.field("N", gc.g.N);
  w.field("P", gc.g.P);
  w.field("n_waves", static_cast<int>(r.waves.size()));
  w.field("fold_detected", r.fold_detected);
  w.field("c_last_good", r.c_last_good);
  w.field("stop_reason", r.stop_reason);
  write_summary(f, w, "summary.json");
  if (f.verbose)
    std::cerr << "continue: " << r.waves.size() << " waves, last speed "
              << r.c_last_good
              << (r.fold_detected ? " (fold detected)" : "") << "\n";
  return 0;
}

int run_minimize(const json& cfg, const Flags& f) {
  gnsw::PhysicalParams p = make_params(cfg);
  double q = require_num(cfg, "minimize.q");
  if (!(q > 0.0)) throw ConfigError("config: minimize.q must be positive");
  gnsw::MultiplierSpec F1 = make_multiplier(cfg, 1, p);
  gnsw::MultiplierSpec F2 = make_multiplier(cfg, 2, p);

  gnsw::MinimizeOptions mop;
  mop.tol = num_or(cfg, "minimize.tol", mop.tol);
  mop.max_iterations = int_or(cfg, "minimize.max_iterations", mop.max_iterations);
  mop.nu = num_or(cfg, "minimize.nu", mop.nu);
  mop.R = num_or(cfg, "minimize.R", mop.R);
  mop.record_trace = true;

  // Speed estimate for the auto domain: invert alpha + 1 ~ alpha0 q^{2/3}.
  double s = gnsw::alpha0(p) * std::cbrt(q * q);
  if (s >= 0.99)
    throw ConfigError(
        "config: minimize.q is too large for the auto grid heuristic; set "
        "grid.P explicitly");
  GridChoice gc = resolve_grid(cfg, 1.0 / std::sqrt(1.0 - s), p);

  gnsw::MinimizeResult m = gnsw::minimize(gc.g, q, p, F1, F2, mop);

  fs::create_directories(f.out_dir);
  gnsw::write_profile_csv(f.out_dir + "/profile.csv", m.profile);
  std::vector<std::vector<double>> rows;
  for (const auto& t : m.trace) rows.push_back({t[0], t[1], t[2], t[3]});
  gnsw::write_csv(f.out_dir + "/trace.csv", "iteration,objective,grad_norm,penalty",
                  rows);
  JsonWriter w;
  w.field("gamma", p.gamma);
  w.field("delta", p.delta);
  w.raw("multiplier", multiplier_block(F1, F2));
  w.field("q", m.q);
  w.field("nu", mop.nu);
  w.field("alpha", m.alpha);
  w.field("value", m.value);
  w.field("penalty_active", m.penalty_active);
  w.field("el_residual", m.el_residual);
  w.field("iterations", m.iterations);
  w.field("converged", m.converged);
  w.field("stop_reason", m.stop_reason);
  w.field("N", gc.g.N);
  w.field("P", gc.g.P);
  write_summary(f, w, "summary.json");
  if (!m.converged) {
    std::cerr << "minimize: " << m.stop_reason << "\n";
    return 2;
  }
  if (f.verbose)
    std::cerr << "minimize: value " << m.value << " after " << m.iterations
              << " iterations\n";
  return 0;
}

int run_rate_study(const json& cfg, const Flags& f) {
  gnsw::PhysicalParams p = make_params(cfg);
  const json* sp = find(cfg, "rate_study.speeds");
  if (!sp || !sp->is_array())
    throw ConfigError("config: rate_study.speeds must be an array of speeds");
  std::vector<double> speeds;
  for (const json& v : *sp) {
    if (!v.is_number())
      throw ConfigError("config: rate_study.speeds entries must be numbers");
    double c = v.get<double>();
    if (!(c > 1.0))
      throw ConfigError("config: rate_study.speeds entries must be > 1");
    speeds.push_back(c);
  }
  if (speeds.size() < 4)
    throw ConfigError("config: rate_study needs at least 4 speeds to fit rates");
  gnsw::MultiplierSpec F1 = make_multiplier(cfg, 1, p);
  gnsw::MultiplierSpec F2 = make_multiplier(cfg, 2, p);
  gnsw::SolverOptions opts = solver_options(cfg, f.verbose);

  std::vector<std::vector<double>> rows;
  std::vector<double> qs, alpha_plus_one, h1_errors, chosen_P;
  fs::create_directories(f.out_dir);
  for (double c : speeds) {
    GridChoice gc = resolve_grid(cfg, c, p);
    chosen_P.push_back(gc.g.P);
    gnsw::NewtonResult r =
        gnsw::newton_solve(gnsw::kdv_guess(c, p, gc.g), c, p, F1, F2, opts);
    if (!r.converged) {
      // Flush what exists so a partial study is still inspectable.
      gnsw::write_csv(f.out_dir + "/rate.csv", "q,c,alpha,E,h1_error,shift",
                      rows);
      std::cerr << "rate-study: c = " << c << ": " << r.failure_reason << "\n";
      return 2;
    }
    double E = gnsw::energy(r.wave.profile, p, F1, F2);
    auto [err, shift] = gnsw::h1_distance_to_kdv(r.wave.profile, r.wave.q, p);
    rows.push_back({r.wave.q, c, r.wave.alpha, E, err, shift});
    qs.push_back(r.wave.q);
    alpha_plus_one.push_back(r.wave.alpha + 1.0);
    h1_errors.push_back(err);
    if (f.verbose)
      std::cerr << "rate-study: c = " << c << " q = " << r.wave.q
                << " h1_error = " << err << "\n";
  }
  gnsw::RateFit afit = gnsw::fit_rate(qs, alpha_plus_one);
  gnsw::RateFit hfit = gnsw::fit_rate(qs, h1_errors);

  gnsw::write_csv(f.out_dir + "/rate.csv", "q,c,alpha,E,h1_error,shift", rows);
  JsonWriter w;
  w.field("gamma", p.gamma);
  w.field("delta", p.delta);
  w.raw("multiplier", multiplier_block(F1, F2));
  w.field("speeds", speeds);
  w.field("N", int_or(cfg, "grid.N", 512));
  w.field("P", chosen_P);
  w.field("alpha0", gnsw::alpha0(p));
  JsonWriter wa;
  wa.field("exponent", afit.exponent);
  wa.field("prefactor", afit.prefactor);
  wa.field("r2", afit.r2);
  w.object("alpha_fit", wa);
  JsonWriter wh;
  wh.field("exponent", hfit.exponent);
  wh.field("prefactor", hfit.prefactor);
  wh.field("r2", hfit.r2);
  w.object("h1_fit", wh);
  write_summary(f, w, "summary.json");
  return 0;
}

void report_fields(JsonWriter& w, const gnsw::AdmissibilityReport& r) {
  w.field("even_and_bounded", r.even_and_bounded);
  w.field("normalized_at_zero", r.normalized_at_zero);
  w.field("slope_at_zero", r.slope_at_zero);
  w.field("kF_curvature_l2", r.kF_curvature_l2);
  w.field("theta_declared", r.theta_declared);
  w.field("theta_fit", r.theta_fit);
  w.field("theta_consistent", r.theta_consistent);
  w.field("c_minus", r.c_minus);
  w.field("c_plus", r.c_plus);
  w.field("k_max", r.k_max);
  w.field("samples", r.samples);
  w.field("pass", r.pass);
}

int run_check_multiplier(const json& cfg, const Flags& f) {
  gnsw::PhysicalParams p = make_params(cfg);
  gnsw::MultiplierSpec F1 = make_multiplier(cfg, 1, p);
  gnsw::MultiplierSpec F2 = make_multiplier(cfg, 2, p);
  double k_max = num_or(cfg, "check.k_max", 1e4);
  int samples = int_or(cfg, "check.samples", 10000);

  gnsw::AdmissibilityReport r1, r2;
  try {
    r1 = gnsw::check_admissible(F1, k_max, samples);
    r2 = gnsw::check_admissible(F2, k_max, samples);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  JsonWriter w;
  JsonWriter w1, w2;
  report_fields(w1, r1);
  report_fields(w2, r2);
  w.object("f1", w1);
  w.object("f2", w2);
  bool pass = r1.pass && r2.pass;
  w.field("pass", pass);
  write_summary(f, w, "report.json");
  if (!pass) {
    std::cerr << "check-multiplier: declared symbol failed the admissibility "
                 "requirements (see report.json)\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solitary waves of modified Green-Naghdi systems"};
  app.require_subcommand(1);

  Flags f;
  auto add_common = [&f](CLI::App* sub) {
    sub->add_option("--config", f.config, "JSON run configuration")->required();
    sub->add_option("--set", f.sets,
                    "override a config entry, e.g. --set solve.c=1.03");
    sub->add_option("--out-dir", f.out_dir, "directory for artifacts");
    sub->add_flag("--verbose", f.verbose, "progress and solver traces on stderr");
    sub->add_flag("--no-timestamp", f.no_timestamp,
                  "omit the timestamp field from JSON outputs");
  };

  CLI::App* c_solve =
      app.add_subcommand("solve", "compute one solitary wave at a fixed speed");
  CLI::App* c_cont = app.add_subcommand(
      "continue", "march a family in speed, reporting folds");
  CLI::App* c_min = app.add_subcommand(
      "minimize", "constrained-minimization ground state at fixed mass");
  CLI::App* c_rate = app.add_subcommand(
      "rate-study", "family study against the long-wave soliton limit");
  CLI::App* c_check = app.add_subcommand(
      "check-multiplier", "admissibility report for the configured symbols");
  for (CLI::App* sub : {c_solve, c_cont, c_min, c_rate, c_check})
    add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  json cfg;
  try {
    cfg = load_config(f);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (c_solve->parsed()) return run_solve(cfg, f);
    if (c_cont->parsed()) return run_continue(cfg, f);
    if (c_min->parsed()) return run_minimize(cfg, f);
    if (c_rate->parsed()) return run_rate_study(cfg, f);
    if (c_check->parsed()) return run_check_multiplier(cfg, f);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
