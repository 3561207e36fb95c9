#pragma once

#include <string>
#include <vector>

#include "supercrit/channels.hpp"
#include "supercrit/signlog.hpp"

namespace supercrit {

enum class ThetaVariant {
  BracketOutsideGamma,  // Theta = arg G(B1) + arg G(B2) + arg(B3) + sigma ln(2 tau)
  AllInsideGamma,       // Theta = arg G(B1) + arg G(B2) + arg G(B3) + sigma ln(2 tau)
};

const char* theta_variant_name(ThetaVariant v);
ThetaVariant theta_variant_from_name(const std::string& name);

struct SolverConfig {
  int n_max = 5;              // highest level index to return
  double bisect_tol = 1e-13;  // bracket width target in E/m
  int scan_points = 4096;     // samples per bracket in oracle mode
  ThetaVariant theta_variant = ThetaVariant::BracketOutsideGamma;
};

struct Level {
  int n;
  double energy;    // E/m in [-1, 1)
  double residual;  // |phase residual| of the region's level equation
};

struct LevelSet {
  Channel channel;
  double nu;  // as given, in [-pi/2, pi/2]; NaN for nonsingular channels
  Region region;
  std::vector<Level> levels;               // energies strictly increasing with n
  std::vector<std::string> diagnostics;    // e.g. detected non-monotonicity
};

/// Numerical failure inside a solver (unresolved bracket, unresolvable
/// accumulation at E -> 1). Carries the channel and index context.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Subcritical level function f(E) in sign/log form. Zeros at the Sommerfeld
/// energies, poles on the ladder; f(-m) = Gamma(1+2 gamma) (2q)^{-2 gamma}.
SignLog f_subcritical(double E, const Channel& channel);

/// Critical level function g(E); the level equation is tan(nu) = g(E).
double g_critical(double E, const Channel& channel);

/// Overcritical phase Theta(E), continuous in E on (-1, 1) (never reduced
/// mod pi); roots of cos(Theta(E) - nu) = 0 are the levels.
double theta_overcritical(double E, const Channel& channel,
                          ThetaVariant variant = ThetaVariant::BracketOutsideGamma);

/// Limit of Theta(E) as E -> -1, in closed form.
double theta_at_lower_edge(const Channel& channel);

/// The extension angle nu_{-m} at which the lowest level reaches E = -m,
/// normalized into (-pi/2, pi/2]. Defined in the singular region only.
double nu_lower(const Channel& channel);

/// Discrete spectrum of the (channel, nu) Hamiltonian up to index n_max.
LevelSet solve_levels(const Channel& channel, ExtensionAngle nu,
                      const SolverConfig& cfg = {});

/// Sommerfeld spectrum for a nonsingular channel (no extension parameter).
LevelSet solve_levels(const Channel& channel, const SolverConfig& cfg = {});

/// Independent oracle: dense scan of the bounded phase-residual merit
/// function with bisection refinement. Same LevelSet contract as
/// solve_levels; singular regions only.
LevelSet brute_force_levels(const Channel& channel, ExtensionAngle nu,
                            const SolverConfig& cfg = {});

}  // namespace supercrit
