#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supercrit/channels.hpp"
#include "supercrit/spectra.hpp"

namespace supercrit {

inline constexpr const char* kToolVersion = "0.1.0";

enum class EnergyUnits { DimensionlessM, KeV };

/// One emitted level record. energy/residual empty means an ABSENT cell
/// (the lowest level does not exist for this nu); nu is NaN for
/// nonsingular channels, where the extension parameter does not apply.
struct DataRow {
  Region region;
  double Z;
  double alpha_inv;
  int two_j;
  int zeta;
  double nu;
  int n;
  std::optional<double> energy;
  std::optional<double> residual;
};

struct Dataset {
  double alpha_inv = kDefaultAlphaInv;
  ThetaVariant theta_variant = ThetaVariant::BracketOutsideGamma;
  std::vector<DataRow> rows;
  std::vector<std::string> notices;
};

struct TableEntry {
  int n;
  int zeta;
  std::optional<double> energy;  // empty = ABSENT cell
  std::optional<double> residual;
};

struct TableRow {
  double nu;
  std::vector<TableEntry> entries;
};

struct Table {
  double Z;
  HalfInteger j;
  double alpha_inv;
  bool force_critical = false;
  std::vector<TableRow> rows;
  std::vector<std::string> notices;
};

inline std::vector<double> default_table_nus();

/// Level table over a nu list (default the five canonical rows), both zeta,
/// indices 0..n_count-1. Nonsingular Z degenerates to one Sommerfeld row
/// with a notice.
Table make_table(double Z, HalfInteger j, std::vector<double> nu_list, int n_count,
                 double alpha_inv = kDefaultAlphaInv, const SolverConfig& cfg = {},
                 bool force_critical = false);

Dataset table_dataset(const Table& table, const SolverConfig& cfg = {});

struct ScanSpec {
  double Z;
  HalfInteger j;
  std::vector<int> zetas;        // subset of {+1, -1}
  std::vector<double> nu_grid;   // radians; nonempty
  int n_max = 5;
  double alpha_inv = kDefaultAlphaInv;
  bool force_critical = false;
};

/// nu sweep at fixed Z: one row per (nu, zeta, n) in grid order.
Dataset scan_nu(const ScanSpec& spec, const SolverConfig& cfg = {});

/// nu_{-m}(Z) sampled on [Z_from, Z_to]; contiguous runs within one region
/// become segments, so a range straddling a boundary yields several
/// segments with explicit gaps between them (nu changes meaning there).
struct CurveSegment {
  Region region;
  std::vector<std::pair<double, double>> points;  // (Z, nu_{-m})
};

struct NuLowerCurve {
  HalfInteger j;
  double alpha_inv;
  std::vector<CurveSegment> segments;
};

NuLowerCurve nu_lower_curve(double Z_from, double Z_to, int steps, HalfInteger j,
                            double alpha_inv = kDefaultAlphaInv);

struct RegionMapRow {
  int two_j;
  double z_s;
  double z_c;
};

/// (j, Z_s(j), Z_c(j)) for all j up to j_max whose singular curve starts
/// at or below Z_max (both bounds cap the map extent for plotting).
std::vector<RegionMapRow> region_map(double Z_max, HalfInteger j_max,
                                     double alpha_inv = kDefaultAlphaInv);

// Serialization. CSV columns: region,Z,alpha_inv,two_j,zeta,nu,n,E_over_m,
// residual plus a trailing nu_pi convenience column; 17 significant digits
// so the decimal text round-trips exactly. ABSENT cells are empty fields.
// JSON mirrors the same schema as an array of objects plus a metadata
// header (alpha_inv, tool version, theta variant).
std::string to_csv(const Dataset& ds, EnergyUnits units = EnergyUnits::DimensionlessM);
std::string to_json(const Dataset& ds, EnergyUnits units = EnergyUnits::DimensionlessM);
std::string to_csv(const NuLowerCurve& curve);
std::string to_json(const NuLowerCurve& curve);
std::string to_csv(const std::vector<RegionMapRow>& rows, double alpha_inv);
std::string to_json(const std::vector<RegionMapRow>& rows, double alpha_inv);

inline std::vector<double> default_table_nus() {
  constexpr double pi_2 = 1.5707963267948966;
  return {-pi_2, -pi_2 / 2, 0.0, pi_2 / 2, pi_2};
}

}  // namespace supercrit
