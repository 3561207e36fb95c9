#include "supercrit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "supercrit/report.hpp"

namespace supercrit {

namespace {

constexpr double kPi = std::numbers::pi;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

HalfInteger parse_j(const std::string& s) {
  static const std::regex re(R"(^\s*(\d+)\s*/\s*2\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, re))
    throw UsageError("invalid j '" + s +
                     "': expected an exact odd fraction over 2, e.g. 1/2 or 3/2 "
                     "(decimals are not accepted)");
  const int num = std::stoi(m[1]);
  if (num % 2 == 0 || num < 1)
    throw UsageError("invalid j '" + s + "': numerator must be a positive odd integer");
  return HalfInteger(num);
}

int parse_zeta(const std::string& s) {
  if (s == "+" || s == "+1" || s == "1") return +1;
  if (s == "-" || s == "-1") return -1;
  throw UsageError("invalid zeta '" + s + "': accepted forms are + , - , +1 , -1");
}

// nu in radians, or an exact multiple of pi: pi, -pi/2, pi/4, 3*pi/4, 0.25*pi.
double parse_nu(const std::string& s) {
  static const std::regex re(
      R"(^\s*([+-]?)\s*(?:(\d+(?:\.\d*)?)\s*\*\s*)?pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$)");
  std::smatch m;
  if (std::regex_match(s, m, re)) {
    double v = kPi;
    if (m[2].matched) v *= std::stod(m[2]);
    if (m[3].matched) v /= std::stod(m[3]);
    return m[1] == "-" ? -v : v;
  }
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("invalid nu '" + s +
                   "': accepted forms are a decimal in radians or a symbolic "
                   "multiple of pi such as pi/4, -pi/2, 3*pi/4");
}

struct CommonOpts {
  double alpha_inv = kDefaultAlphaInv;
  std::string format = "csv";
  std::string output;
  std::string units = "m";
  std::string theta_variant = "bracket-outside-gamma";
  int nmax = 5;
  bool integer_z = false;
};

void add_common(CLI::App* cmd, CommonOpts* c, bool with_nmax = true) {
  cmd->add_option("--alpha-inv", c->alpha_inv,
                  "Inverse fine-structure constant (dimensionless)")
      ->envname("SUPERCRIT_ALPHA_INV")
      ->capture_default_str();
  cmd->add_option("--format", c->format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->envname("SUPERCRIT_FORMAT")
      ->capture_default_str();
  cmd->add_option("--output", c->output, "Output file path (default: stdout)");
  cmd->add_option("--units", c->units,
                  "Energy units: m (E/m, dimensionless) or keV")
      ->check(CLI::IsMember({"m", "keV"}))
      ->envname("SUPERCRIT_UNITS")
      ->capture_default_str();
  cmd->add_option("--theta-variant", c->theta_variant,
                  "Overcritical phase reading: bracket-outside-gamma or "
                  "all-inside-gamma")
      ->check(CLI::IsMember({"bracket-outside-gamma", "all-inside-gamma"}))
      ->envname("SUPERCRIT_THETA_VARIANT")
      ->capture_default_str();
  if (with_nmax)
    cmd->add_option("--nmax", c->nmax, "Highest level index to compute")
        ->check(CLI::PositiveNumber)
        ->envname("SUPERCRIT_NMAX")
        ->capture_default_str();
  cmd->add_flag("--integer-Z", c->integer_z,
                "Reject non-integer Z (physical runs; scans keep real Z)");
}

void check_integer_z(const CommonOpts& c, double Z) {
  if (c.integer_z && Z != std::floor(Z))
    throw UsageError("--integer-Z: Z = " + std::to_string(Z) + " is not an integer");
}

SolverConfig solver_config(const CommonOpts& c) {
  SolverConfig cfg;
  cfg.n_max = c.nmax;
  cfg.theta_variant = theta_variant_from_name(c.theta_variant);
  return cfg;
}

EnergyUnits units_of(const CommonOpts& c) {
  return c.units == "keV" ? EnergyUnits::KeV : EnergyUnits::DimensionlessM;
}

void emit(const std::string& text, const CommonOpts& c, std::ostream& out) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.output);
  if (!f) throw std::runtime_error("cannot open output file: " + c.output);
  f << text;
}

Channel build_channel(double Z, HalfInteger j, int zeta, const CommonOpts& c,
                      bool force_critical) {
  check_integer_z(c, Z);
  try {
    return Channel(Z, j, zeta, c.alpha_inv, force_critical);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "supercrit: discrete spectra of radial Dirac-Coulomb Hamiltonians for "
      "arbitrary charge Z, including the overcritical regime"};
  app.require_subcommand(1);
  app.footer(
      "Precedence: flags > environment (SUPERCRIT_*) > config file > defaults.\n"
      "Energies are E/m unless --units keV is given.");

  // classify -------------------------------------------------------------
  auto* classify_cmd =
      app.add_subcommand("classify", "Region of a channel (Z, j)");
  double cl_Z = 0.0;
  std::string cl_j = "1/2";
  double cl_alpha = kDefaultAlphaInv;
  bool cl_force = false, cl_intz = false;
  classify_cmd->add_option("--Z", cl_Z, "Charge number")->required();
  classify_cmd->add_option("--j", cl_j, "Total angular momentum, e.g. 1/2")
      ->capture_default_str();
  classify_cmd->add_option("--alpha-inv", cl_alpha, "Inverse fine-structure constant")
      ->envname("SUPERCRIT_ALPHA_INV")
      ->capture_default_str();
  classify_cmd->add_flag("--force-critical", cl_force,
                         "Snap q = Z/alpha_inv to j+1/2 (requires |q-(j+1/2)| <= 1e-6)");
  classify_cmd->add_flag("--integer-Z", cl_intz, "Reject non-integer Z");

  // levels ---------------------------------------------------------------
  auto* levels_cmd = app.add_subcommand(
      "levels", "Discrete levels of one (Z, j, zeta, nu) Hamiltonian");
  CommonOpts lv;
  double lv_Z = 0.0;
  std::string lv_j = "1/2", lv_zeta, lv_nu;
  bool lv_force = false, lv_oracle = false;
  levels_cmd->add_option("--Z", lv_Z, "Charge number")->required();
  levels_cmd->add_option("--j", lv_j, "Total angular momentum, e.g. 1/2")
      ->capture_default_str();
  levels_cmd->add_option("--zeta", lv_zeta, "Spin-operator sign: + or -")->required();
  levels_cmd->add_option("--nu", lv_nu,
                         "Extension angle in radians or pi-literal (pi/4, -pi/2); "
                         "omit for nonsingular channels");
  levels_cmd->add_flag("--force-critical", lv_force,
                       "Treat the channel as exactly critical (q snapped to j+1/2)");
  levels_cmd->add_flag("--oracle", lv_oracle,
                       "Use the brute-force scan oracle instead of the solver");
  add_common(levels_cmd, &lv);

  // table ----------------------------------------------------------------
  auto* table_cmd = app.add_subcommand(
      "table", "Level table over a nu list (default -pi/2,-pi/4,0,pi/4,pi/2)");
  CommonOpts tb;
  double tb_Z = 0.0;
  std::string tb_j = "1/2";
  std::vector<std::string> tb_nus;
  int tb_ncount = 5;
  bool tb_force = false;
  table_cmd->add_option("--Z", tb_Z, "Charge number")->required();
  table_cmd->add_option("--j", tb_j, "Total angular momentum, e.g. 1/2")
      ->capture_default_str();
  table_cmd->add_option("--nu", tb_nus,
                        "nu rows (radians or pi-literals); repeatable");
  table_cmd->add_option("--ncount", tb_ncount, "Number of level columns")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  table_cmd->add_flag("--force-critical", tb_force,
                      "Treat the channel as exactly critical");
  add_common(table_cmd, &tb, /*with_nmax=*/false);

  // scan-nu --------------------------------------------------------------
  auto* scan_cmd =
      app.add_subcommand("scan-nu", "Sweep nu over a grid at fixed (Z, j)");
  CommonOpts sc;
  double sc_Z = 0.0;
  std::string sc_j = "1/2", sc_zeta;
  std::vector<std::string> sc_nus;
  int sc_points = 0;
  bool sc_force = false;
  scan_cmd->add_option("--Z", sc_Z, "Charge number")->required();
  scan_cmd->add_option("--j", sc_j, "Total angular momentum, e.g. 1/2")
      ->capture_default_str();
  scan_cmd->add_option("--zeta", sc_zeta, "Restrict to one zeta (+ or -); default both");
  scan_cmd->add_option("--nu", sc_nus, "Explicit nu grid points; repeatable");
  scan_cmd->add_option("--nu-points", sc_points,
                       "Uniform grid of this many nu points over (-pi/2, pi/2]");
  scan_cmd->add_flag("--force-critical", sc_force,
                     "Treat the channel as exactly critical");
  add_common(scan_cmd, &sc);

  // nu-lower -------------------------------------------------------------
  auto* nl_cmd = app.add_subcommand(
      "nu-lower", "nu_{-m}(Z) curve (angle at which the lowest level reaches -m)");
  CommonOpts nl;
  double nl_from = 0.0, nl_to = 0.0;
  int nl_steps = 2;
  std::string nl_j = "1/2";
  nl_cmd->add_option("--z-from", nl_from, "Range start")->required();
  nl_cmd->add_option("--z-to", nl_to, "Range end (equal to --z-from for one point)")
      ->required();
  nl_cmd->add_option("--steps", nl_steps, "Number of samples")->capture_default_str();
  nl_cmd->add_option("--j", nl_j, "Total angular momentum, e.g. 1/2")
      ->capture_default_str();
  add_common(nl_cmd, &nl, /*with_nmax=*/false);

  // region-map -----------------------------------------------------------
  auto* rm_cmd = app.add_subcommand(
      "region-map", "Singular and critical curves Z_s(j), Z_c(j)");
  CommonOpts rm;
  double rm_zmax = 1000.0;
  std::string rm_jmax = "9/2";
  rm_cmd->add_option("--z-max", rm_zmax, "Largest Z of interest")
      ->capture_default_str();
  rm_cmd->add_option("--j-max", rm_jmax, "Largest j row")->capture_default_str();
  add_common(rm_cmd, &rm, /*with_nmax=*/false);

  // params ---------------------------------------------------------------
  auto* pr_cmd = app.add_subcommand(
      "params", "Number of self-adjoint extension parameters Delta(Z)");
  double pr_Z = 0.0, pr_alpha = kDefaultAlphaInv;
  pr_cmd->add_option("--Z", pr_Z, "Charge number")->required();
  pr_cmd->add_option("--alpha-inv", pr_alpha, "Inverse fine-structure constant")
      ->envname("SUPERCRIT_ALPHA_INV")
      ->capture_default_str();

  std::string cfg_path;
  for (CLI::App* sub : {classify_cmd, levels_cmd, table_cmd, scan_cmd, nl_cmd,
                        rm_cmd, pr_cmd})
    sub->add_option("--config", cfg_path,
                    "Config file, flat `key = value` lines (keys are the long "
                    "option names without dashes)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help on a subcommand etc.
      std::stringstream ss;
      const int code = app.exit(e, ss, ss);
      out << ss.str();
      return code;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    // Config file, applied below flags and environment: only options still
    // at their defaults pick up config values.
    if (!cfg_path.empty()) {
      CLI::App* active = app.get_subcommands().at(0);
      std::ifstream f(cfg_path);
      if (!f) throw UsageError("cannot read config file: " + cfg_path);
      std::string line;
      int lineno = 0;
      while (std::getline(f, line)) {
        ++lineno;
        const auto strip = [](std::string s) {
          const auto a = s.find_first_not_of(" \t\r");
          if (a == std::string::npos) return std::string();
          const auto b = s.find_last_not_of(" \t\r");
          return s.substr(a, b - a + 1);
        };
        const std::string t = strip(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
          throw UsageError("config line " + std::to_string(lineno) +
                           ": expected `key = value`");
        const std::string key = strip(t.substr(0, eq));
        const std::string value = strip(t.substr(eq + 1));
        CLI::Option* op = active->get_option_no_throw("--" + key);
        if (op == nullptr)
          throw UsageError("config line " + std::to_string(lineno) +
                           ": unknown key '" + key + "' for subcommand " +
                           active->get_name());
        if (op->count() == 0) {
          op->add_result(value);
          op->run_callback();
        }
      }
    }

    if (classify_cmd->parsed()) {
      const HalfInteger j = parse_j(cl_j);
      if (cl_intz && cl_Z != std::floor(cl_Z))
        throw UsageError("--integer-Z: Z is not an integer");
      try {
        out << region_name(Channel(cl_Z, j, -1, cl_alpha, cl_force).region())
            << "\n";
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    } else if (levels_cmd->parsed()) {
      const HalfInteger j = parse_j(lv_j);
      const int zeta = parse_zeta(lv_zeta);
      const Channel ch = build_channel(lv_Z, j, zeta, lv, lv_force);
      const SolverConfig cfg = solver_config(lv);
      LevelSet ls{ch, std::nan(""), ch.region(), {}, {}};
      if (ch.region() == Region::Nonsingular) {
        if (!lv_nu.empty())
          throw UsageError(
              "--nu is not applicable: the channel is nonsingular, its "
              "self-adjoint extension (and so its spectrum) is unique");
        if (lv_oracle)
          throw UsageError("--oracle requires a singular-region channel");
        ls = solve_levels(ch, cfg);
      } else {
        if (lv_nu.empty())
          throw UsageError(
              "--nu is required: singular-region channels carry a "
              "one-parameter family of Hamiltonians");
        const ExtensionAngle nu(parse_nu(lv_nu));
        ls = lv_oracle ? brute_force_levels(ch, nu, cfg)
                       : solve_levels(ch, nu, cfg);
      }
      Dataset ds;
      ds.alpha_inv = lv.alpha_inv;
      ds.theta_variant = cfg.theta_variant;
      for (const Level& l : ls.levels)
        ds.rows.push_back(DataRow{ch.region(), lv_Z, lv.alpha_inv, j.twice(),
                                  zeta, ls.nu, l.n, l.energy, l.residual});
      for (const std::string& d : ls.diagnostics) ds.notices.push_back(d);
      emit(lv.format == "json" ? to_json(ds, units_of(lv))
                               : to_csv(ds, units_of(lv)),
           lv, out);
    } else if (table_cmd->parsed()) {
      const HalfInteger j = parse_j(tb_j);
      check_integer_z(tb, tb_Z);
      std::vector<double> nus;
      for (const std::string& s : tb_nus) nus.push_back(parse_nu(s));
      const SolverConfig cfg = solver_config(tb);
      const Table table = [&] {
        try {
          return make_table(tb_Z, j, nus, tb_ncount, tb.alpha_inv, cfg, tb_force);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }();
      const Dataset ds = table_dataset(table, cfg);
      emit(tb.format == "json" ? to_json(ds, units_of(tb))
                               : to_csv(ds, units_of(tb)),
           tb, out);
    } else if (scan_cmd->parsed()) {
      const HalfInteger j = parse_j(sc_j);
      check_integer_z(sc, sc_Z);
      ScanSpec spec{sc_Z, j, {}, {}, sc.nmax, sc.alpha_inv, sc_force};
      spec.zetas = sc_zeta.empty() ? std::vector<int>{+1, -1}
                                   : std::vector<int>{parse_zeta(sc_zeta)};
      for (const std::string& s : sc_nus) spec.nu_grid.push_back(parse_nu(s));
      if (sc_points > 0)
        for (int i = 1; i <= sc_points; ++i)
          spec.nu_grid.push_back(-kPi / 2 + kPi * i / sc_points);
      if (spec.nu_grid.empty())
        throw UsageError("scan-nu: give --nu points and/or --nu-points");
      const SolverConfig cfg = solver_config(sc);
      Dataset ds;
      try {
        ds = scan_nu(spec, cfg);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      emit(sc.format == "json" ? to_json(ds, units_of(sc))
                               : to_csv(ds, units_of(sc)),
           sc, out);
    } else if (nl_cmd->parsed()) {
      const HalfInteger j = parse_j(nl_j);
      const NuLowerCurve curve = [&] {
        try {
          return nu_lower_curve(nl_from, nl_to, nl_steps, j, nl.alpha_inv);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }();
      emit(nl.format == "json" ? to_json(curve) : to_csv(curve), nl, out);
    } else if (rm_cmd->parsed()) {
      const HalfInteger j_max = parse_j(rm_jmax);
      std::vector<RegionMapRow> rows;
      try {
        rows = region_map(rm_zmax, j_max, rm.alpha_inv);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      emit(rm.format == "json" ? to_json(rows, rm.alpha_inv)
                               : to_csv(rows, rm.alpha_inv),
           rm, out);
    } else if (pr_cmd->parsed()) {
      try {
        out << "delta = " << num_extension_params(pr_Z, pr_alpha) << "\n";
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace supercrit
