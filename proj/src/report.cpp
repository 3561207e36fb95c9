#include "supercrit/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace supercrit {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

constexpr double kPi = 3.14159265358979323846;

Channel make_channel(double Z, HalfInteger j, int zeta, double alpha_inv,
                     bool force_critical) {
  return Channel(Z, j, zeta, alpha_inv, force_critical);
}

std::optional<double> level_energy(const LevelSet& ls, int n, double* residual) {
  for (const Level& l : ls.levels)
    if (l.n == n) {
      *residual = l.residual;
      return l.energy;
    }
  return std::nullopt;
}

double scale_for(EnergyUnits units) {
  return units == EnergyUnits::KeV ? kElectronRestEnergyKeV : 1.0;
}

const char* energy_column(EnergyUnits units) {
  return units == EnergyUnits::KeV ? "E_keV" : "E_over_m";
}

json metadata_json(double alpha_inv, ThetaVariant variant) {
  return json{{"alpha_inv", alpha_inv},
              {"tool_version", kToolVersion},
              {"theta_variant", theta_variant_name(variant)}};
}

}  // namespace

Table make_table(double Z, HalfInteger j, std::vector<double> nu_list, int n_count,
                 double alpha_inv, const SolverConfig& cfg, bool force_critical) {
  if (n_count < 1) throw std::invalid_argument("make_table: n_count must be >= 1");
  if (nu_list.empty()) nu_list = default_table_nus();
  Table table{Z, j, alpha_inv, force_critical, {}, {}};

  const Channel probe = make_channel(Z, j, -1, alpha_inv, force_critical);
  if (probe.region() == Region::Nonsingular) {
    table.notices.push_back(
        "nonsingular channel: the Hamiltonian is unique, so the table "
        "degenerates to the single Sommerfeld column (nu not applicable)");
    TableRow row{std::nan(""), {}};
    for (int zeta : {+1, -1}) {
      const Channel ch = make_channel(Z, j, zeta, alpha_inv, false);
      SolverConfig c = cfg;
      c.n_max = std::max(1, n_count - 1);
      const LevelSet ls = solve_levels(ch, c);
      for (int n = 0; n < n_count; ++n) {
        double res = 0.0;
        auto e = level_energy(ls, n, &res);
        row.entries.push_back(TableEntry{n, zeta, e, e ? std::optional<double>(res)
                                                      : std::nullopt});
      }
    }
    table.rows.push_back(std::move(row));
    return table;
  }

  SolverConfig c = cfg;
  c.n_max = std::max(1, n_count - 1);
  for (double nu : nu_list) {
    TableRow row{nu, {}};
    for (int zeta : {+1, -1}) {
      const Channel ch = make_channel(Z, j, zeta, alpha_inv, force_critical);
      const LevelSet ls = solve_levels(ch, ExtensionAngle(nu), c);
      for (int n = 0; n < n_count; ++n) {
        double res = 0.0;
        auto e = level_energy(ls, n, &res);
        row.entries.push_back(TableEntry{n, zeta, e, e ? std::optional<double>(res)
                                                      : std::nullopt});
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

Dataset table_dataset(const Table& table, const SolverConfig& cfg) {
  Dataset ds;
  ds.alpha_inv = table.alpha_inv;
  ds.theta_variant = cfg.theta_variant;
  ds.notices = table.notices;
  for (const TableRow& row : table.rows) {
    for (const TableEntry& e : row.entries) {
      const Channel ch(table.Z, table.j, e.zeta, table.alpha_inv,
                       table.force_critical);
      ds.rows.push_back(DataRow{ch.region(), table.Z, table.alpha_inv,
                                table.j.twice(), e.zeta, row.nu, e.n, e.energy,
                                e.residual});
    }
  }
  return ds;
}

Dataset scan_nu(const ScanSpec& spec, const SolverConfig& cfg) {
  if (spec.nu_grid.empty()) throw std::invalid_argument("scan_nu: empty nu grid");
  if (spec.zetas.empty()) throw std::invalid_argument("scan_nu: empty zeta list");
  Dataset ds;
  ds.alpha_inv = spec.alpha_inv;
  ds.theta_variant = cfg.theta_variant;
  SolverConfig c = cfg;
  c.n_max = spec.n_max;
  for (double nu : spec.nu_grid) {
    for (int zeta : spec.zetas) {
      const Channel ch =
          make_channel(spec.Z, spec.j, zeta, spec.alpha_inv, spec.force_critical);
      if (ch.region() == Region::Nonsingular)
        throw std::invalid_argument("scan_nu: nonsingular channel has no nu sweep");
      const LevelSet ls = solve_levels(ch, ExtensionAngle(nu), c);
      for (const Level& l : ls.levels)
        ds.rows.push_back(DataRow{ch.region(), spec.Z, spec.alpha_inv,
                                  spec.j.twice(), zeta, nu, l.n, l.energy,
                                  l.residual});
    }
  }
  return ds;
}

NuLowerCurve nu_lower_curve(double Z_from, double Z_to, int steps, HalfInteger j,
                            double alpha_inv) {
  if (steps < 1 || (steps == 1 && Z_from != Z_to))
    throw std::invalid_argument("nu_lower_curve: need steps >= 2 for a range");
  NuLowerCurve curve{j, alpha_inv, {}};
  bool in_segment = false;
  for (int i = 0; i < steps; ++i) {
    const double Z = steps == 1
                         ? Z_from
                         : Z_from + (Z_to - Z_from) * i / (steps - 1);
    const Channel ch(Z, j, -1, alpha_inv, false);
    if (ch.region() == Region::Nonsingular) {
      in_segment = false;  // gap: no extension parameter below Z_s
      continue;
    }
    if (!in_segment || curve.segments.back().region != ch.region()) {
      curve.segments.push_back(CurveSegment{ch.region(), {}});
      in_segment = true;
    }
    curve.segments.back().points.emplace_back(Z, nu_lower(ch));
  }
  return curve;
}

std::vector<RegionMapRow> region_map(double Z_max, HalfInteger j_max,
                                     double alpha_inv) {
  if (Z_max <= 0.0) throw std::invalid_argument("region_map: Z_max must be positive");
  std::vector<RegionMapRow> rows;
  for (int twice = 1; twice <= j_max.twice(); twice += 2) {
    const HalfInteger j(twice);
    const double zs = z_singular(j, alpha_inv);
    if (zs > Z_max) break;
    rows.push_back(RegionMapRow{twice, zs, z_critical(j, alpha_inv)});
  }
  return rows;
}

std::string to_csv(const Dataset& ds, EnergyUnits units) {
  std::ostringstream os;
  for (const std::string& note : ds.notices) os << "# " << note << "\n";
  os << "region,Z,alpha_inv,two_j,zeta,nu,n," << energy_column(units)
     << ",residual,nu_pi\n";
  const double scale = scale_for(units);
  for (const DataRow& r : ds.rows) {
    os << region_name(r.region) << ',' << fmt17(r.Z) << ',' << fmt17(r.alpha_inv)
       << ',' << r.two_j << ',' << r.zeta << ',';
    if (!std::isnan(r.nu)) os << fmt17(r.nu);
    os << ',' << r.n << ',';
    if (r.energy) os << fmt17(*r.energy * scale);
    os << ',';
    if (r.residual) os << fmt17(*r.residual);
    os << ',';
    if (!std::isnan(r.nu)) os << fmt17(r.nu / kPi);
    os << '\n';
  }
  return os.str();
}

std::string to_json(const Dataset& ds, EnergyUnits units) {
  json out;
  out["metadata"] = metadata_json(ds.alpha_inv, ds.theta_variant);
  if (!ds.notices.empty()) out["metadata"]["notices"] = ds.notices;
  out["rows"] = json::array();
  const double scale = scale_for(units);
  for (const DataRow& r : ds.rows) {
    json row;
    row["region"] = region_name(r.region);
    row["Z"] = r.Z;
    row["alpha_inv"] = r.alpha_inv;
    row["two_j"] = r.two_j;
    row["zeta"] = r.zeta;
    row["nu"] = std::isnan(r.nu) ? json() : json(r.nu);
    row["n"] = r.n;
    row[energy_column(units)] = r.energy ? json(*r.energy * scale) : json();
    row["residual"] = r.residual ? json(*r.residual) : json();
    row["nu_pi"] = std::isnan(r.nu) ? json() : json(r.nu / kPi);
    out["rows"].push_back(std::move(row));
  }
  return out.dump(2) + "\n";
}

std::string to_csv(const NuLowerCurve& curve) {
  std::ostringstream os;
  os << "region,Z,alpha_inv,two_j,nu_lower,nu_lower_pi\n";
  bool first = true;
  for (const CurveSegment& seg : curve.segments) {
    if (!first) os << "# gap: region boundary (nu changes meaning)\n";
    first = false;
    for (auto [Z, nu] : seg.points)
      os << region_name(seg.region) << ',' << fmt17(Z) << ','
         << fmt17(curve.alpha_inv) << ',' << curve.j.twice() << ',' << fmt17(nu)
         << ',' << fmt17(nu / kPi) << '\n';
  }
  return os.str();
}

std::string to_json(const NuLowerCurve& curve) {
  json out;
  out["metadata"] = {{"alpha_inv", curve.alpha_inv},
                     {"tool_version", kToolVersion},
                     {"two_j", curve.j.twice()}};
  out["segments"] = json::array();
  for (const CurveSegment& seg : curve.segments) {
    json s;
    s["region"] = region_name(seg.region);
    s["points"] = json::array();
    for (auto [Z, nu] : seg.points)
      s["points"].push_back({{"Z", Z}, {"nu_lower", nu}});
    out["segments"].push_back(std::move(s));
  }
  return out.dump(2) + "\n";
}

std::string to_csv(const std::vector<RegionMapRow>& rows, double alpha_inv) {
  std::ostringstream os;
  os << "two_j,Z_s,Z_c,alpha_inv\n";
  for (const RegionMapRow& r : rows)
    os << r.two_j << ',' << fmt17(r.z_s) << ',' << fmt17(r.z_c) << ','
       << fmt17(alpha_inv) << '\n';
  return os.str();
}

std::string to_json(const std::vector<RegionMapRow>& rows, double alpha_inv) {
  json out;
  out["metadata"] = {{"alpha_inv", alpha_inv}, {"tool_version", kToolVersion}};
  out["rows"] = json::array();
  for (const RegionMapRow& r : rows)
    out["rows"].push_back({{"two_j", r.two_j}, {"Z_s", r.z_s}, {"Z_c", r.z_c}});
  return out.dump(2) + "\n";
}

}  // namespace supercrit
