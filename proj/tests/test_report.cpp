#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "supercrit/report.hpp"

using namespace supercrit;

namespace {

const HalfInteger j12(1);

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream ss(s);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

const TableEntry& entry_at(const Table& t, double nu, int n, int zeta) {
  for (const TableRow& row : t.rows) {
    if (std::fabs(row.nu - nu) > 1e-12) continue;
    for (const TableEntry& e : row.entries)
      if (e.n == n && e.zeta == zeta) return e;
  }
  FAIL("entry not found");
  static TableEntry dummy{};
  return dummy;
}

}  // namespace

TEST_CASE("make_table reproduces known cells and completes quickly") {
  const auto t0 = std::chrono::steady_clock::now();
  const Table t = make_table(121, j12, {}, 5);
  const auto dt = std::chrono::steady_clock::now() - t0;
  CHECK(std::chrono::duration<double>(dt).count() < 1.0);

  REQUIRE(t.rows.size() == 5);
  for (const TableRow& row : t.rows) REQUIRE(row.entries.size() == 10);

  const double pi4 = M_PI / 4;
  CHECK(*entry_at(t, -pi4, 1, +1).energy == doctest::Approx(0.465810).epsilon(1e-5));
  CHECK(*entry_at(t, -M_PI / 2, 0, -1).energy ==
        doctest::Approx(-0.469411).epsilon(1e-5));
  CHECK(*entry_at(t, 0.0, 2, -1).energy == doctest::Approx(0.857150).epsilon(1e-5));

  // ABSENT pattern: nu_lower(121) < 0, so the lowest index survives only
  // at nu <= nu_lower; zeta=+1 has no n=0 at all in the subcritical region.
  CHECK(!entry_at(t, 0.0, 0, -1).energy.has_value());
  CHECK(entry_at(t, -pi4, 0, -1).energy.has_value());
  CHECK(!entry_at(t, pi4, 0, -1).energy.has_value());
  for (const TableRow& row : t.rows)
    CHECK(!entry_at(t, row.nu, 0, +1).energy.has_value());

  for (const TableRow& row : t.rows)
    for (const TableEntry& e : row.entries)
      if (e.residual) CHECK(*e.residual < 1e-10);
}

TEST_CASE("make_table critical ladder row") {
  const double zc = z_critical(j12, kDefaultAlphaInv);
  const Table t = make_table(zc, j12, {-M_PI / 2}, 5, kDefaultAlphaInv, {}, true);
  const double expected[] = {0.0, 0.707107, 0.894427, 0.948683, 0.970143};
  for (int n = 0; n <= 4; ++n)
    CHECK(*entry_at(t, -M_PI / 2, n, -1).energy ==
          doctest::Approx(expected[n]).epsilon(1e-6));
}

TEST_CASE("make_table degenerates with a notice for nonsingular Z") {
  const Table t = make_table(100, j12, {}, 4);
  REQUIRE(!t.notices.empty());
  REQUIRE(t.rows.size() == 1);
  CHECK(std::isnan(t.rows[0].nu));
  CHECK(*entry_at(t, t.rows[0].nu, 1, +1).energy ==
        doctest::Approx(sommerfeld_energy(Channel(100, j12, +1), 1)).epsilon(1e-12));
}

TEST_CASE("scan_nu dataset matches table slices and glues at the seam") {
  ScanSpec spec{138, j12, {+1, -1}, {}, 4, kDefaultAlphaInv, false};
  for (int i = 0; i <= 180; ++i)
    spec.nu_grid.push_back(-M_PI / 2 + M_PI * i / 180.0);
  const Dataset ds = scan_nu(spec);
  for (const DataRow& r : ds.rows) {
    CHECK(r.region == Region::Overcritical);
    REQUIRE(r.energy.has_value());
    CHECK(*r.residual < 1e-10);
  }
  auto find = [&](double nu, int zeta, int n) -> double {
    for (const DataRow& r : ds.rows)
      if (std::fabs(r.nu - nu) < 1e-12 && r.zeta == zeta && r.n == n)
        return *r.energy;
    FAIL("row not found");
    return 0.0;
  };
  CHECK(find(-M_PI / 2, -1, 0) == doctest::Approx(0.024086).epsilon(1e-5));
  CHECK(find(0.0, +1, 1) == doctest::Approx(0.839196).epsilon(1e-5));
  for (int n = 0; n <= 3; ++n)
    CHECK(find(-M_PI / 2, +1, n) ==
          doctest::Approx(find(M_PI / 2, +1, n + 1)).epsilon(1e-9));
}

TEST_CASE("nu_lower_curve: subcritical negativity and region splitting") {
  const NuLowerCurve sub = nu_lower_curve(119, 137, 37, j12);
  REQUIRE(sub.segments.size() == 1);
  CHECK(sub.segments[0].region == Region::Subcritical);
  CHECK(sub.segments[0].points.size() == 37);
  for (auto [Z, nu] : sub.segments[0].points) CHECK(nu < 0.0);

  const NuLowerCurve single = nu_lower_curve(138, 138, 1, j12);
  REQUIRE(single.segments.size() == 1);
  CHECK(single.segments[0].points[0].second ==
        doctest::Approx(0.215140584452).epsilon(1e-9));

  const NuLowerCurve straddle = nu_lower_curve(130, 145, 16, j12);
  REQUIRE(straddle.segments.size() == 2);
  CHECK(straddle.segments[0].region == Region::Subcritical);
  CHECK(straddle.segments[1].region == Region::Overcritical);

  CHECK_THROWS_AS(nu_lower_curve(119, 137, 1, j12), std::invalid_argument);
}

TEST_CASE("region_map values and monotonicity") {
  const auto rows = region_map(1000, HalfInteger(9), 137.04);
  REQUIRE(rows.size() >= 3);
  CHECK(rows[0].two_j == 1);
  CHECK(rows[0].z_s == doctest::Approx(118.68).epsilon(1e-4));
  CHECK(rows[0].z_c == doctest::Approx(137.04).epsilon(1e-10));
  CHECK(rows[1].z_s == doctest::Approx(265.37).epsilon(1e-4));
  CHECK(rows[1].z_c == doctest::Approx(274.08).epsilon(1e-10));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].z_s > rows[i - 1].z_s);
    CHECK(rows[i].z_c > rows[i - 1].z_c);
  }
  // Z_max caps the rows
  CHECK(region_map(200, HalfInteger(9), 137.04).size() == 1);
}

TEST_CASE("CSV schema and exact decimal round-trip") {
  const Table t = make_table(121, j12, {}, 3);
  const Dataset ds = table_dataset(t);
  const std::string csv = to_csv(ds);
  const auto lines = split_lines(csv);
  REQUIRE(!lines.empty());
  CHECK(lines[0] ==
        "region,Z,alpha_inv,two_j,zeta,nu,n,E_over_m,residual,nu_pi");

  std::size_t row_idx = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty() || lines[i][0] == '#') continue;
    const auto f = split_csv(lines[i]);
    REQUIRE(f.size() == 10);
    const DataRow& r = ds.rows[row_idx++];
    CHECK(f[0] == region_name(r.region));
    CHECK(std::strtod(f[1].c_str(), nullptr) == r.Z);
    CHECK(std::strtod(f[2].c_str(), nullptr) == r.alpha_inv);
    CHECK(std::stoi(f[3]) == r.two_j);
    CHECK(std::stoi(f[4]) == r.zeta);
    CHECK(std::strtod(f[5].c_str(), nullptr) == r.nu);
    CHECK(std::stoi(f[6]) == r.n);
    if (r.energy) {
      CHECK(std::strtod(f[7].c_str(), nullptr) == *r.energy);
      CHECK(std::strtod(f[8].c_str(), nullptr) == *r.residual);
    } else {
      CHECK(f[7].empty());  // ABSENT cells are empty, never sentinels
      CHECK(f[8].empty());
    }
  }
  CHECK(row_idx == ds.rows.size());
}

TEST_CASE("JSON mirrors the schema and round-trips") {
  const Table t = make_table(121, j12, {}, 3);
  const Dataset ds = table_dataset(t);
  const auto parsed = nlohmann::json::parse(to_json(ds));
  CHECK(parsed["metadata"]["alpha_inv"].get<double>() == ds.alpha_inv);
  CHECK(parsed["metadata"]["tool_version"].get<std::string>() == kToolVersion);
  CHECK(parsed["metadata"]["theta_variant"].get<std::string>() ==
        "bracket-outside-gamma");
  REQUIRE(parsed["rows"].size() == ds.rows.size());
  for (std::size_t i = 0; i < ds.rows.size(); ++i) {
    const auto& row = parsed["rows"][i];
    CHECK(row["region"].get<std::string>() == region_name(ds.rows[i].region));
    CHECK(row["n"].get<int>() == ds.rows[i].n);
    if (ds.rows[i].energy)
      CHECK(row["E_over_m"].get<double>() == *ds.rows[i].energy);
    else
      CHECK(row["E_over_m"].is_null());
  }
}

TEST_CASE("keV units rename the column and scale the values") {
  const Table t = make_table(121, j12, {0.0}, 2);
  const Dataset ds = table_dataset(t);
  const std::string csv = to_csv(ds, EnergyUnits::KeV);
  CHECK(split_lines(csv)[0] ==
        "region,Z,alpha_inv,two_j,zeta,nu,n,E_keV,residual,nu_pi");
  const auto parsed = nlohmann::json::parse(to_json(ds, EnergyUnits::KeV));
  bool checked = false;
  for (std::size_t i = 0; i < ds.rows.size(); ++i) {
    if (!ds.rows[i].energy) continue;
    CHECK(parsed["rows"][i]["E_keV"].get<double>() ==
          *ds.rows[i].energy * kElectronRestEnergyKeV);
    checked = true;
  }
  CHECK(checked);
}

TEST_CASE("nu_lower_curve serialization carries gap markers") {
  const NuLowerCurve straddle = nu_lower_curve(130, 145, 16, j12);
  const std::string csv = to_csv(straddle);
  CHECK(csv.find("# gap") != std::string::npos);
  const auto parsed = nlohmann::json::parse(to_json(straddle));
  CHECK(parsed["segments"].size() == 2);
}

TEST_CASE("deterministic emission") {
  const Table t = make_table(138, j12, {}, 4);
  CHECK(to_csv(table_dataset(t)) == to_csv(table_dataset(t)));
  CHECK(to_json(table_dataset(t)) == to_json(table_dataset(t)));
}
