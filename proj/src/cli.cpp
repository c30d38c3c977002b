#include "lowreg/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "lowreg/datagen.hpp"
#include "lowreg/selftest.hpp"
#include "lowreg/spectral.hpp"

namespace lowreg {

namespace {

struct OptionSpec {
  const char* flag;
  const char* key;   // config-file key
  const char* desc;
  bool is_flag;
};

const std::vector<OptionSpec>& common_options() {
  static const std::vector<OptionSpec> opts = {
      {"--scheme", "scheme", "integrator: lri1, lri2fd, lri2filtered, lie, strang, expeuler", false},
      {"--K", "K", "modes per axis (even)", false},
      {"--dim", "dim", "spatial dimension (1, 2 or 3)", false},
      {"--T", "T", "final time", false},
      {"--theta", "theta", "Sobolev regularity of both the datum and the potential", false},
      {"--theta-u", "theta_u", "regularity of the initial datum", false},
      {"--theta-v", "theta_v", "regularity of the potential", false},
      {"--r-list", "r_list", "comma-separated Sobolev exponents for error norms", false},
      {"--seed", "seed", "random data seed", false},
      {"--out", "out", "output directory (default $LOWREG_OUTPUT_DIR or .)", false},
      {"--dealias", "dealias", "route products through zero-padded transforms", true},
      {"--conjugate-commutator", "conjugate_commutator",
       "use the conjugated middle commutator term", true},
  };
  return opts;
}

const std::vector<OptionSpec>& run_options() {
  static const std::vector<OptionSpec> opts = {
      {"--tau", "tau", "time step size (accepts p/q)", false},
      {"--steps", "steps", "number of steps (T defaults to tau*steps)", false},
      {"--dump", "dump", "write the final coefficients to this CSV file", false},
  };
  return opts;
}

const std::vector<OptionSpec>& converge_options() {
  static const std::vector<OptionSpec> opts = {
      {"--tau-list", "tau_list", "comma-separated step sizes, each dividing T", false},
  };
  return opts;
}

// Config-file-only keys (reference policy knobs).
const std::set<std::string>& config_only_keys() {
  static const std::set<std::string> keys = {"ref_scheme", "cross_scheme",
                                             "ref_tau_divisor"};
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("malformed value for " + what + ": '" + text + "'");
  }
}

long parse_long(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("malformed value for " + what + ": '" + text + "'");
  }
}

bool parse_bool(const std::string& text, const std::string& what) {
  if (text == "1" || text == "true" || text == "on") return true;
  if (text == "0" || text == "false" || text == "off") return false;
  throw UsageError("malformed boolean for " + what + ": '" + text + "'");
}

void apply_key(CliInvocation& inv, const std::string& key, const std::string& value) {
  ExperimentConfig& cfg = inv.experiment;
  try {
    if (key == "scheme") cfg.scheme = scheme_from_name(value);
    else if (key == "K") cfg.modes = static_cast<int>(parse_long(value, key));
    else if (key == "dim") cfg.dim = static_cast<int>(parse_long(value, key));
    else if (key == "T") cfg.T = parse_ratio(value);
    else if (key == "theta") cfg.theta_u = cfg.theta_v = parse_ratio(value);
    else if (key == "theta_u") cfg.theta_u = parse_ratio(value);
    else if (key == "theta_v") cfg.theta_v = parse_ratio(value);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_long(value, key));
    else if (key == "r_list") {
      cfg.norms.clear();
      for (const std::string& part : split_commas(value))
        cfg.norms.push_back(parse_ratio(part));
    } else if (key == "tau_list") {
      cfg.tau_list.clear();
      for (const std::string& part : split_commas(value))
        cfg.tau_list.push_back(parse_ratio(part));
    } else if (key == "tau") inv.run_tau = parse_ratio(value);
    else if (key == "steps") inv.run_steps = static_cast<int>(parse_long(value, key));
    else if (key == "dump") inv.dump_path = value;
    else if (key == "out") inv.out_dir = value;
    else if (key == "dealias") inv.dealias = parse_bool(value, key);
    else if (key == "conjugate_commutator")
      cfg.conjugate_commutator = parse_bool(value, key);
    else if (key == "ref_scheme") cfg.reference.scheme = scheme_from_name(value);
    else if (key == "cross_scheme") cfg.reference.cross_scheme = scheme_from_name(value);
    else if (key == "ref_tau_divisor")
      cfg.reference.tau_divisor = static_cast<int>(parse_long(value, key));
    else throw UsageError("unknown configuration key '" + key + "'");
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError("invalid value for " + key + ": " + e.what());
  }
}

CLI::App* add_options(CLI::App& app, const char* name, const char* desc,
                      std::vector<std::pair<const OptionSpec*, CLI::Option*>>& bound,
                      std::string& config_path,
                      const std::vector<const std::vector<OptionSpec>*>& groups) {
  CLI::App* sub = app.add_subcommand(name, desc);
  sub->add_option("--config", config_path, "flat key=value configuration file");
  for (const auto* group : groups) {
    for (const OptionSpec& spec : *group) {
      CLI::Option* opt = spec.is_flag ? sub->add_flag(spec.flag, spec.desc)
                                      : sub->add_option(spec.flag, spec.desc);
      bound.emplace_back(&spec, opt);
    }
  }
  return sub;
}

void validate_run(CliInvocation& inv, bool t_given) {
  ExperimentConfig& cfg = inv.experiment;
  if (inv.run_steps < 0) throw UsageError("steps must be positive");
  if (inv.run_tau < 0.0) throw UsageError("tau must be positive");
  if (inv.run_tau == 0.0 && inv.run_steps == 0)
    throw UsageError("run needs --tau and/or --steps");
  if (inv.run_tau > 0.0 && inv.run_steps > 0) {
    if (!t_given) cfg.T = inv.run_tau * inv.run_steps;
    else if (std::abs(cfg.T - inv.run_tau * inv.run_steps) > 1e-9 * cfg.T)
      throw UsageError("tau * steps does not match T");
  } else if (inv.run_tau > 0.0) {
    const double ratio = cfg.T / inv.run_tau;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, rounded))
      throw UsageError("tau does not divide the final time T");
    inv.run_steps = static_cast<int>(rounded);
  } else {
    inv.run_tau = cfg.T / inv.run_steps;
  }
  if (inv.run_tau > 1.0) throw UsageError("time step must satisfy tau <= 1");
  cfg.tau_list = {inv.run_tau};
  try {
    validate_config(cfg);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

std::string output_dir(const CliInvocation& inv) {
  if (!inv.out_dir.empty()) return inv.out_dir;
  if (const char* env = std::getenv("LOWREG_OUTPUT_DIR")) return env;
  return ".";
}

int dispatch_selftest() {
  const auto results = run_selftest();
  int failed = 0;
  for (const CheckResult& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  ["
              << r.detail << "]\n";
    if (!r.pass) ++failed;
  }
  std::cout << results.size() - static_cast<std::size_t>(failed) << "/"
            << results.size() << " checks passed\n";
  return failed == 0 ? kExitOk : kExitUsage;
}

void dump_state(const Field& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open dump file: " + path);
  const Grid& g = *f.grid();
  for (int ax = 0; ax < g.dim(); ++ax) out << "k" << ax + 1 << ",";
  out << "re,im\n";
  int k[3];
  for (std::int64_t i = 0; i < f.size(); ++i) {
    g.freq_vector(i, k);
    for (int ax = 0; ax < g.dim(); ++ax) out << k[ax] << ",";
    out << format_double(f[i].real()) << "," << format_double(f[i].imag())
        << "\n";
  }
}

int dispatch_run(const CliInvocation& inv) {
  const ExperimentConfig& cfg = inv.experiment;
  GridPtr grid = make_grid(cfg.dim, cfg.modes);
  const Field u0 = random_sobolev_field({cfg.theta_u, data_seed_u(cfg.seed), grid});
  const Field V = random_sobolev_field({cfg.theta_v, data_seed_v(cfg.seed), grid});

  const auto start = std::chrono::steady_clock::now();
  Field final_state(grid);
  try {
    final_state = evolve(u0, V, {inv.run_tau, cfg.scheme, cfg.conjugate_commutator},
                         inv.run_steps);
  } catch (const BlowupError& e) {
    std::cerr << "blow-up: " << e.what() << "\n";
    return kExitBlowup;
  }
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;

  std::cout << "scheme " << scheme_name(cfg.scheme) << ", tau "
            << format_double(inv.run_tau) << ", " << inv.run_steps
            << " steps to T = " << format_double(cfg.T) << "\n";
  for (double r : cfg.norms)
    std::cout << "  H^" << norm_suffix(r)
              << " norm = " << format_double(sobolev_norm(final_state, r)) << "\n";
  std::cout << "  wall time " << elapsed.count() << " s\n";

  if (!inv.dump_path.empty()) {
    dump_state(final_state, inv.dump_path);
    std::cout << "  state written to " << inv.dump_path << "\n";
  }
  return kExitOk;
}

int dispatch_converge(const CliInvocation& inv) {
  const ConvergenceReport report = convergence_study(inv.experiment);

  const std::string dir = output_dir(inv);
  std::filesystem::create_directories(dir);
  const std::string base = dir + "/study_" + scheme_name(inv.experiment.scheme) +
                           "_theta" + norm_suffix(inv.experiment.theta_u);
  const auto files = write_report(report, {base + ".csv", base});
  for (const std::string& f : files) std::cout << "wrote " << f << "\n";

  for (const NormResult& nr : report.norms) {
    std::cout << "H^" << norm_suffix(nr.r) << ": order "
              << nr.fit.trimmed.order << " (raw " << nr.fit.raw.order
              << ", residual " << nr.fit.trimmed.residual << ", "
              << nr.fit.points_kept << " points kept)"
              << (nr.monotone ? "" : " [non-monotone]")
              << (nr.resolved ? "" : " [reference unresolved]") << "\n";
  }
  if (report.any_blowup) {
    std::cerr << "some runs blew up\n";
    return kExitBlowup;
  }
  if (!report.resolved) {
    std::cerr << "reference cross-check failed the 1% criterion\n";
    return kExitUnresolved;
  }
  return kExitOk;
}

} // namespace

double parse_ratio(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_double(text, "number");
  const double num = parse_double(text.substr(0, slash), "numerator");
  const double den = parse_double(text.substr(slash + 1), "denominator");
  if (den == 0.0) throw UsageError("zero denominator in '" + text + "'");
  return num / den;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(lineno) +
                       " is not key=value: '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw UsageError("config line " + std::to_string(lineno) + " has no key");
    kv[key] = value;
  }
  return kv;
}

ParseResult parse_invocation(const std::vector<std::string>& argv) {
  CLI::App app{"Low-regularity time integrators for the Gross-Pitaevskii equation"};
  app.require_subcommand(1);

  std::vector<std::pair<const OptionSpec*, CLI::Option*>> bound_run, bound_conv;
  std::string config_run, config_conv;
  CLI::App* run = add_options(app, "run",
                              "integrate once and report final-state norms",
                              bound_run, config_run,
                              {&common_options(), &run_options()});
  CLI::App* conv = add_options(app, "converge", "run a tau-sweep convergence study",
                               bound_conv, config_conv,
                               {&common_options(), &converge_options()});
  CLI::App* self = app.add_subcommand("selftest", "run the oracle/invariant suite");

  std::vector<const char*> cargs;
  cargs.push_back("lowreg");
  for (const std::string& a : argv) cargs.push_back(a.c_str());

  ParseResult result;
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp&) {
    result.help = true;
    result.help_text = cli_help_text();
    return result;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  CliInvocation& inv = result.invocation;
  const bool is_run = run->parsed();
  if (self->parsed()) {
    inv.command = Command::Selftest;
    return result;
  }
  inv.command = is_run ? Command::Run : Command::Converge;
  const auto& bound = is_run ? bound_run : bound_conv;
  const std::string& config_path = is_run ? config_run : config_conv;

  bool t_given = false;
  if (!config_path.empty()) {
    for (const auto& [key, value] : parse_config_file(config_path)) {
      // Reject keys that belong to the other command.
      bool known = config_only_keys().count(key) > 0;
      for (const auto& [spec, opt] : bound)
        if (key == spec->key) known = true;
      if (!known) throw UsageError("unknown configuration key '" + key + "'");
      apply_key(inv, key, value);
      if (key == "T") t_given = true;
    }
  }

  for (const auto& [spec, opt] : bound) {
    if (opt->count() == 0) continue;
    const std::string value = spec->is_flag ? "1" : opt->results().front();
    apply_key(inv, spec->key, value);
    if (std::string(spec->key) == "T") t_given = true;
  }

  if (inv.command == Command::Run) {
    validate_run(inv, t_given);
  } else {
    if (inv.experiment.tau_list.empty())
      throw UsageError("converge needs --tau-list (or tau_list in the config file)");
    try {
      validate_config(inv.experiment);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  (void)conv;
  return result;
}

int dispatch(const CliInvocation& inv) {
  set_dealiasing(inv.dealias);
  switch (inv.command) {
    case Command::Selftest:
      return dispatch_selftest();
    case Command::Run:
      return dispatch_run(inv);
    case Command::Converge:
      return dispatch_converge(inv);
  }
  return kExitUsage;
}

std::string cli_help_text() {
  CLI::App app{"Low-regularity time integrators for the Gross-Pitaevskii equation"};
  app.require_subcommand(1);
  std::vector<std::pair<const OptionSpec*, CLI::Option*>> b1, b2;
  std::string c1, c2;
  add_options(app, "run", "integrate once and report final-state norms", b1, c1,
              {&common_options(), &run_options()});
  add_options(app, "converge", "run a tau-sweep convergence study", b2, c2,
              {&common_options(), &converge_options()});
  app.add_subcommand("selftest", "run the oracle/invariant suite");
  return app.help("", CLI::AppFormatMode::All);
}

std::vector<std::string> cli_flag_names() {
  std::vector<std::string> names = {"--config", "--help"};
  for (const auto* group : {&common_options(), &run_options(), &converge_options()})
    for (const OptionSpec& spec : *group) names.push_back(spec.flag);
  return names;
}

} // namespace lowreg
