#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace supercrit {

inline constexpr double kDefaultAlphaInv = 137.035999;
inline constexpr double kElectronRestEnergyKeV = 510.998950;

/// Half-odd-integer total angular momentum, stored as 2j.
class HalfInteger {
 public:
  explicit HalfInteger(int twice) : twice_(twice) {
    if (twice < 1 || twice % 2 == 0)
      throw std::invalid_argument("HalfInteger: 2j must be a positive odd integer");
  }
  int twice() const { return twice_; }
  double value() const { return 0.5 * twice_; }
  std::string str() const { return std::to_string(twice_) + "/2"; }

  friend bool operator==(HalfInteger a, HalfInteger b) { return a.twice_ == b.twice_; }

 private:
  int twice_;
};

enum class Region { Nonsingular, Subcritical, Critical, Overcritical };

const char* region_name(Region r);

/// Singular curve Z_s(j) = sqrt(j(j+1)) / alpha.
double z_singular(HalfInteger j, double alpha_inv);

/// Critical curve Z_c(j) = (j + 1/2) / alpha.
double z_critical(HalfInteger j, double alpha_inv);

/// Number of extension parameters Delta = 2 k(Z),
/// k(Z) = #{ j : Z > Z_s(j) }.
int num_extension_params(double Z, double alpha_inv = kDefaultAlphaInv);

/// One radial sector (Z, alpha, j, zeta). Physical Z are integers but real
/// values are accepted for curve scans. Energies are E/m throughout.
class Channel {
 public:
  Channel(double Z, HalfInteger j, int zeta,
          double alpha_inv = kDefaultAlphaInv, bool force_critical = false);

  double Z() const { return Z_; }
  double alpha_inv() const { return alpha_inv_; }
  HalfInteger j() const { return j_; }
  int zeta() const { return zeta_; }

  double q() const { return q_; }                 // Z * alpha, snapped if critical
  double k() const { return 0.5 * (j_.twice() + 1); }  // j + 1/2
  double kappa() const { return zeta_ * k(); }
  Region region() const { return region_; }

  /// gamma = sqrt((j+1/2)^2 - q^2); only defined off the overcritical region.
  double gamma_param() const;
  /// sigma = sqrt(q^2 - (j+1/2)^2); only defined in the overcritical region.
  double sigma_param() const;

  /// Lowest level index n0: 1 for zeta=+1 and 0 for zeta=-1 in the
  /// subcritical and critical regions, 0 for both in the overcritical one.
  int n_min() const;

 private:
  double Z_;
  double alpha_inv_;
  HalfInteger j_;
  int zeta_;
  double q_;
  Region region_;
};

Region classify(const Channel& channel);

/// Extension parameter nu on the circle of circumference pi. Values are
/// wrapped into [-pi/2, pi/2]; the two endpoints describe the same
/// Hamiltonian but index its levels with an offset of one, so an exact
/// endpoint input is preserved as given.
class ExtensionAngle {
 public:
  explicit ExtensionAngle(double nu_radians);
  double nu() const { return nu_; }

 private:
  double nu_;
};

/// Sommerfeld energy E/m = (n + gamma) / sqrt(q^2 + (n + gamma)^2),
/// n >= 1 for zeta=+1, n >= 0 for zeta=-1.
double sommerfeld_energy(const Channel& channel, int n);

/// Ladder energies (the nu = +-pi/2 spectrum): subcritical
/// (n - gamma)/sqrt(q^2 + (n - gamma)^2), critical n/sqrt((j+1/2)^2 + n^2).
double pole_ladder(const Channel& channel, int n);

/// Nonrelativistic binding energy -q^2 / (2 n^2), in units of m.
double nonrel_energy(const Channel& channel, int n);

}  // namespace supercrit
