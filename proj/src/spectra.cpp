#include "supercrit/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "supercrit/specfun.hpp"

namespace supercrit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPsiOne = -specfun::kEulerGamma;  // psi(1)
constexpr double kResidualBound = 1e-10;
// Inter-pole brackets narrower than this cannot certify the residual bound
// at double precision (phase slope ~ pi / width vs. ulp-level root error).
constexpr double kMinBracketWidth = 4e-6;
constexpr double kEdgeOffset = 1e-12;  // lower search edge -1 + kEdgeOffset

double wrap_half_pi(double x) {
  double r = std::remainder(x, kPi);  // [-pi/2, pi/2]
  if (r <= -kPi / 2) r += kPi;
  return r;
}

double atan_signlog(const SignLog& h) {
  if (h.sign == 0) return 0.0;
  if (h.log_mag > 700.0) return h.sign * (kPi / 2);
  return std::atan(h.sign * std::exp(h.log_mag));
}

std::string channel_tag(const Channel& ch, double nu) {
  std::ostringstream os;
  os << "Z=" << ch.Z() << " j=" << ch.j().str() << " zeta=" << (ch.zeta() > 0 ? "+" : "-")
     << " nu=" << nu;
  return os.str();
}

// Bisection on a sign change of W, refined to the last representable
// interval; W(lo) and W(hi) must have opposite signs.
double bisect(const std::function<double(double)>& W, double lo, double hi, double wlo) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double wm = W(mid);
    if (wm == 0.0) return mid;
    if ((wm > 0) == (wlo > 0)) {
      lo = mid;
      wlo = wm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

const char* theta_variant_name(ThetaVariant v) {
  return v == ThetaVariant::BracketOutsideGamma ? "bracket-outside-gamma" : "all-inside-gamma";
}

ThetaVariant theta_variant_from_name(const std::string& name) {
  if (name == "bracket-outside-gamma") return ThetaVariant::BracketOutsideGamma;
  if (name == "all-inside-gamma") return ThetaVariant::AllInsideGamma;
  throw std::invalid_argument("unknown theta variant: " + name);
}

SignLog f_subcritical(double E, const Channel& channel) {
  if (channel.region() != Region::Subcritical)
    throw std::domain_error("f_subcritical: channel is not subcritical");
  if (!(E > -1.0 && E < 1.0))
    throw std::domain_error("f_subcritical: E must lie strictly inside (-1, 1)");
  const double q = channel.q(), g = channel.gamma_param(), kap = channel.kappa();
  const double tau = std::sqrt((1.0 - E) * (1.0 + E));
  const double a = q * E / tau;
  SignLog r = specfun::ln_gamma_signed_or_pole(1.0 + 2.0 * g) *
              specfun::ln_gamma_signed_or_pole(-g - a) /
              specfun::ln_gamma_signed_or_pole(g - a);
  r = r * SignLog::from_value(q * (1.0 - E) - (kap + g) * tau) /
      SignLog::from_value(q * (1.0 - E) - (kap - g) * tau);
  return r * SignLog::from_log(1, -2.0 * g * std::log(2.0 * tau));
}

double g_critical(double E, const Channel& channel) {
  if (channel.region() != Region::Critical)
    throw std::domain_error("g_critical: channel is not critical");
  if (!(E > -1.0 && E < 1.0))
    throw std::domain_error("g_critical: E must lie strictly inside (-1, 1)");
  const double k = channel.k();
  const int zeta = channel.zeta();
  const double tau = std::sqrt((1.0 - E) * (1.0 + E));
  if (E == 0.0) {
    if (zeta < 0) return std::numeric_limits<double>::infinity();  // ladder pole E_0 = 0
    return std::log(2.0) - kPsiOne + 1.0 / (2.0 * k);
  }
  // psi(-kE/tau) is shifted once so the 1/E pieces combine exactly:
  //   g = ln(2 tau) + psi(1 - kE/tau) + (tau - zeta)/(2kE) + zeta/(2k) - 2 psi(1)
  // and for zeta=+1, (tau-1)/E = -E/(1+tau) removes the cancellation.
  const double arg = 1.0 - k * E / tau;
  if (arg <= 0.0 && arg == std::floor(arg))
    return std::numeric_limits<double>::infinity();  // exact ladder hit
  const double T = zeta > 0 ? -E / (2.0 * k * (1.0 + tau)) : (tau + 1.0) / (2.0 * k * E);
  return std::log(2.0 * tau) + specfun::digamma(arg) + T + zeta / (2.0 * k) - 2.0 * kPsiOne;
}

double theta_overcritical(double E, const Channel& channel, ThetaVariant variant) {
  if (channel.region() != Region::Overcritical)
    throw std::domain_error("theta_overcritical: channel is not overcritical");
  if (!(E > -1.0 && E < 1.0))
    throw std::domain_error("theta_overcritical: E must lie strictly inside (-1, 1)");
  const double q = channel.q(), k = channel.k(), sig = channel.sigma_param();
  const int zeta = channel.zeta();
  const double tau = std::sqrt((1.0 - E) * (1.0 + E));
  const double a = q * E / tau;
  const std::complex<double> B3(tau * k - zeta * q * (1.0 - E), -tau * zeta * sig);
  double th = specfun::arg_gamma_continuous(0.0, -2.0 * sig) +
              specfun::arg_gamma_continuous(-a, sig) + sig * std::log(2.0 * tau);
  th += variant == ThetaVariant::BracketOutsideGamma ? std::arg(B3)
                                                     : specfun::arg_gamma_continuous(B3);
  return th;
}

double theta_at_lower_edge(const Channel& channel) {
  const double q = channel.q(), sig = channel.sigma_param();
  const double base =
      specfun::arg_gamma_continuous(0.0, -2.0 * sig) + sig * std::log(2.0 * q);
  // arg B3 -> -pi (zeta=+1, B3 -> -2q with Im -> 0^-) or 0 (zeta=-1).
  return channel.zeta() > 0 ? base - kPi : base;
}

double nu_lower(const Channel& channel) {
  const double q = channel.q();
  switch (channel.region()) {
    case Region::Subcritical: {
      const double g = channel.gamma_param();
      const double lg = specfun::ln_gamma_signed(1.0 + 2.0 * g).log_mag -
                        specfun::ln_gamma_signed(1.0 - 2.0 * g).log_mag -
                        2.0 * g * std::log(2.0 * q);
      return std::atan(-std::exp(lg));
    }
    case Region::Critical:
      return std::atan(std::log(2.0 * q) - 2.0 * kPsiOne + channel.zeta() / q);
    case Region::Overcritical: {
      const double sig = channel.sigma_param();
      return wrap_half_pi(kPi / 2 + specfun::arg_gamma_continuous(0.0, -2.0 * sig) +
                          sig * std::log(2.0 * q));
    }
    case Region::Nonsingular:
      break;
  }
  throw std::domain_error("nu_lower: no extension parameter in the nonsingular region");
}

namespace {

// ---------------------------------------------------------------------------
// Region-specific phase residuals (the merit functions). A level satisfies
// its equation iff the phase is 0 mod pi; the wrapped phase is the bounded,
// pole-free residual stored in LevelSet.

double phase_subcritical(double E, const Channel& ch, double nu) {
  const SignLog h = f_subcritical(E, ch) /
                    specfun::ln_gamma_signed(1.0 - 2.0 * ch.gamma_param());
  return wrap_half_pi(atan_signlog(h) + nu);
}

double phase_critical(double E, const Channel& ch, double nu) {
  return wrap_half_pi(std::atan(g_critical(E, ch)) - nu);
}

double phase_overcritical(double E, const Channel& ch, double nu, ThetaVariant v) {
  return wrap_half_pi(theta_overcritical(E, ch, v) - nu - kPi / 2);
}

double phase_signed(double E, const Channel& ch, double nu, ThetaVariant v) {
  switch (ch.region()) {
    case Region::Subcritical: return phase_subcritical(E, ch, nu);
    case Region::Critical: return phase_critical(E, ch, nu);
    default: return phase_overcritical(E, ch, nu, v);
  }
}

double phase_residual(double E, const Channel& ch, double nu, ThetaVariant v) {
  return std::fabs(phase_signed(E, ch, nu, v));
}

void check_resolvable(const Channel& ch, int n_max, double bracket_width) {
  if (bracket_width < kMinBracketWidth) {
    std::ostringstream os;
    os << "solve_levels: n_max=" << n_max
       << " lies beyond the numerically resolvable accumulation at E -> 1 "
       << "(bracket width " << bracket_width << " < " << kMinBracketWidth << ") for "
       << channel_tag(ch, std::nan(""));
    throw SolverError(os.str());
  }
}

void push_level(LevelSet& out, const Channel& ch, double nu, ThetaVariant v, int n,
                double E) {
  const double res = E <= -1.0 ? 0.0 : phase_residual(E, ch, nu, v);
  if (res >= kResidualBound) {
    // Near the accumulation point the phase slope exceeds 1e6, so even a
    // root converged to one ulp of E can leave a residual above the bound.
    // Accept such roots (they are exact to machine representation) with a
    // diagnostic; throw only when the root is genuinely unconverged.
    const double lo = std::nextafter(E, -2.0), hi = std::nextafter(E, 2.0);
    const double slope =
        std::fabs(phase_signed(hi, ch, nu, v) - phase_signed(lo, ch, nu, v)) /
        (hi - lo);
    if (res > 2.0 * slope * (hi - lo)) {
      std::ostringstream os;
      os << "solve_levels: residual " << res << " exceeds " << kResidualBound
         << " at n=" << n << " E=" << E << " for " << channel_tag(ch, nu);
      throw SolverError(os.str());
    }
    std::ostringstream os;
    os << "residual " << res << " at n=" << n
       << " is above " << kResidualBound
       << " but at the double-precision limit (phase slope " << slope << ")";
    out.diagnostics.push_back(os.str());
  }
  out.levels.push_back(Level{n, E, res});
}

// Sample points clustered logarithmically toward both ends of [lo, hi].
std::vector<double> clustered_points(double lo, double hi, int interior) {
  std::vector<double> pts;
  const double w = hi - lo;
  for (int k = 14; k >= 1; --k) pts.push_back(lo + w * std::pow(10.0, -k));
  for (int i = 1; i < interior; ++i) pts.push_back(lo + w * i / interior);
  for (int k = 1; k <= 14; ++k) pts.push_back(hi - w * std::pow(10.0, -k));
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  pts.insert(pts.begin(), lo);
  return pts;
}

// Root of W in (lo, hi): direct endpoint bisection, with a clustered scan
// as fallback when the root hugs an endpoint. Returns NaN if no sign change
// is found anywhere.
double find_root(const std::function<double(double)>& W, double lo, double hi) {
  double wlo = W(lo), whi = W(hi);
  if (wlo == 0.0) return lo;
  if (whi == 0.0) return hi;
  if ((wlo > 0) != (whi > 0)) return bisect(W, lo, hi, wlo);
  const auto pts = clustered_points(lo, hi, 24);
  double prev = pts.front(), wprev = wlo;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double w = W(pts[i]);
    if (w == 0.0) return pts[i];
    if ((w > 0) != (wprev > 0)) return bisect(W, prev, pts[i], wprev);
    prev = pts[i];
    wprev = w;
  }
  return std::nan("");
}

// Shared solver for the subcritical and critical regions, where the levels
// interlace a closed-form pole ladder.
LevelSet solve_ladder_region(const Channel& ch, ExtensionAngle nu_angle,
                             const SolverConfig& cfg) {
  const double nu = nu_angle.nu();
  LevelSet out{ch, nu, ch.region(), {}, {}};
  const int n0 = ch.n_min();
  check_resolvable(ch, cfg.n_max,
                   pole_ladder(ch, cfg.n_max + 1) - pole_ladder(ch, cfg.n_max));

  if (std::fabs(nu) == kPi / 2) {
    // nu = -pi/2 and +pi/2 are the same Hamiltonian; the ladder energies
    // carry index n at -pi/2 and n+1 at +pi/2.
    const int shift = nu < 0 ? 0 : 1;
    for (int n = n0 + shift; n <= cfg.n_max; ++n)
      out.levels.push_back(Level{n, pole_ladder(ch, n - shift), 0.0});
    return out;
  }

  const double t = std::tan(nu);
  const bool subcritical = ch.region() == Region::Subcritical;
  // Level equation as a signed function: subcritical sin(nu) + cos(nu) h = 0
  // i.e. t + h = 0; critical tan(nu) = g i.e. g - t = 0.
  auto W = [&](double E) {
    if (subcritical) {
      const SignLog h = f_subcritical(E, ch) /
                        specfun::ln_gamma_signed(1.0 - 2.0 * ch.gamma_param());
      return t + h.value();
    }
    return g_critical(E, ch) - t;
  };

  const double nu_m = nu_lower(ch);
  if (nu <= nu_m) {
    const double hi = pole_ladder(ch, n0);
    const double E = find_root(W, -1.0 + kEdgeOffset, hi - (hi + 1.0) * 1e-10);
    // No sign change means the root sits below the search edge, which only
    // happens with nu at nu_{-m} itself: the level is at E = -m.
    push_level(out, ch, nu, cfg.theta_variant, n0, std::isnan(E) ? -1.0 : E);
  }
  for (int n = n0; n < cfg.n_max; ++n) {
    const double a = pole_ladder(ch, n), b = pole_ladder(ch, n + 1);
    const double inset = std::max(1e-15, (b - a) * 1e-9);
    const double E = find_root(W, a + inset, b - inset);
    if (std::isnan(E))
      throw SolverError("solve_levels: lost the root in bracket (" + std::to_string(a) +
                        ", " + std::to_string(b) + ") for " + channel_tag(ch, nu));
    push_level(out, ch, nu, cfg.theta_variant, n + 1, E);
  }
  return out;
}

LevelSet solve_overcritical(const Channel& ch, ExtensionAngle nu_angle,
                            const SolverConfig& cfg) {
  const double nu = nu_angle.nu();
  LevelSet out{ch, nu, ch.region(), {}, {}};
  const double q = ch.q();
  check_resolvable(ch, cfg.n_max, q * q / std::pow(std::max(1, cfg.n_max), 3));

  const double theta_m = theta_at_lower_edge(ch);
  const double nu_m = nu_lower(ch);
  auto D = [&](double E) { return theta_m - theta_overcritical(E, ch, cfg.theta_variant); };

  // Theta should decrease monotonically; surface any violation.
  {
    double prev = -std::numeric_limits<double>::infinity();
    for (double x : clustered_points(-1.0 + kEdgeOffset, 1.0 - 1e-9, 96)) {
      const double d = D(x);
      if (d < prev - 1e-9)
        out.diagnostics.push_back("theta_overcritical: non-monotone near E=" +
                                  std::to_string(x));
      prev = d;
    }
  }

  double lo = -1.0 + kEdgeOffset, dlo = D(lo);
  double hi = 1.0 - 1e-9, dhi = D(hi);
  for (int n = 0; n <= cfg.n_max; ++n) {
    // Index equation: Theta(-m) - Theta(E_n) = pi n + nu_m - nu.
    const double target = kPi * n + nu_m - nu;
    if (target < 0.0) continue;  // lowest level absent for nu > nu_{-m}
    if (dlo >= target) {
      // Root at or below the search edge: the nu = nu_{-m} boundary case.
      push_level(out, ch, nu, cfg.theta_variant, n, target == 0.0 ? -1.0 : lo);
      continue;
    }
    if (dhi <= target) {
      std::ostringstream os;
      os << "solve_levels: level n=" << n << " beyond the resolvable range near E=1 for "
         << channel_tag(ch, nu);
      throw SolverError(os.str());
    }
    auto W = [&](double E) { return D(E) - target; };
    const double E = bisect(W, lo, hi, dlo - target);
    push_level(out, ch, nu, cfg.theta_variant, n, E);
    lo = E;  // D is monotone: the next root lies above
    dlo = D(lo);
  }
  return out;
}

}  // namespace

LevelSet solve_levels(const Channel& channel, const SolverConfig& cfg) {
  if (channel.region() != Region::Nonsingular)
    throw std::invalid_argument(
        "solve_levels: singular-region channels require an extension angle nu");
  LevelSet out{channel, std::nan(""), Region::Nonsingular, {}, {}};
  for (int n = channel.n_min(); n <= cfg.n_max; ++n)
    out.levels.push_back(Level{n, sommerfeld_energy(channel, n), 0.0});
  return out;
}

LevelSet solve_levels(const Channel& channel, ExtensionAngle nu, const SolverConfig& cfg) {
  if (cfg.n_max < 1 || cfg.bisect_tol <= 0.0 || cfg.scan_points < 1)
    throw std::invalid_argument("solve_levels: invalid SolverConfig");
  switch (channel.region()) {
    case Region::Nonsingular:
      throw std::invalid_argument(
          "solve_levels: the nonsingular extension is unique; nu is not applicable");
    case Region::Subcritical:
    case Region::Critical:
      return solve_ladder_region(channel, nu, cfg);
    case Region::Overcritical:
      return solve_overcritical(channel, nu, cfg);
  }
  throw std::logic_error("unreachable");
}

LevelSet brute_force_levels(const Channel& channel, ExtensionAngle nu,
                            const SolverConfig& cfg) {
  if (channel.region() == Region::Nonsingular)
    throw std::invalid_argument("brute_force_levels: singular-region channels only");
  const double nu_v = nu.nu();
  LevelSet out{channel, nu_v, channel.region(), {}, {}};

  auto merit = [&](double E) {
    switch (channel.region()) {
      case Region::Subcritical: return phase_subcritical(E, channel, nu_v);
      case Region::Critical: return phase_critical(E, channel, nu_v);
      default: return phase_overcritical(E, channel, nu_v, cfg.theta_variant);
    }
  };

  const double lo = -1.0 + 1e-9, hi = 1.0 - 1e-9;
  const long total = static_cast<long>(cfg.scan_points) * (cfg.n_max + 2);
  std::vector<double> roots;
  // A sign change counts as a root only when the merit actually passes
  // through a small value at the located point (a wrap jump of the mod-pi
  // reduction flips sign at magnitude pi/2 and must be discarded).
  auto W = [&](double E) { return merit(E); };
  auto push_root = [&](double r) {
    if (std::fabs(merit(r)) < 1e-6) roots.push_back(r);
  };

  // Sample pairs where the endpoints alias interior movement (midpoint off
  // the endpoint average, or a large swing) are subdivided until roots and
  // wrap jumps separate.
  auto refine = [&](auto&& self, double a, double b, double ma, double mb,
                    int depth) -> void {
    const bool sign_change = (mb > 0) != (ma > 0);
    if (sign_change && std::fabs(mb - ma) < 0.5) {
      push_root(bisect(W, a, b, ma));
      return;
    }
    if (depth >= 30 || b - a < 1e-15) {
      if (sign_change) push_root(bisect(W, a, b, ma));
      return;
    }
    const double mid = 0.5 * (a + b), mm = merit(mid);
    if (sign_change || std::fabs(mb - ma) > 0.3 ||
        std::fabs(mm - 0.5 * (ma + mb)) > 0.03) {
      self(self, a, mid, ma, mm, depth + 1);
      self(self, mid, b, mm, mb, depth + 1);
    }
  };
  bool have_prev = false;
  double eprev = 0.0, mprev = 0.0;
  auto feed = [&](double e) {
    const double m = merit(e);
    if (have_prev && e > eprev) refine(refine, eprev, e, mprev, m, 0);
    eprev = e;
    mprev = m;
    have_prev = true;
  };

  if (channel.region() == Region::Overcritical) {
    // The phase is monotone and its oscillation slows only polynomially, so
    // uniform sampling suffices. The scan stops where only levels beyond
    // n_max accumulate (1 - E ~ q^2 / 2n^2), keeping the sample density per
    // oscillation bounded; surplus high roots are truncated during labeling.
    const double q = channel.q();
    const double d_top = 0.25 * q * q / ((cfg.n_max + 6.0) * (cfg.n_max + 6.0));
    const double hi_eff = std::min(hi, 1.0 - d_top);
    for (long i = 0; i <= total; ++i)
      feed(lo + (hi_eff - lo) * static_cast<double>(i) / static_cast<double>(total));
  } else {
    // Ladder regions: the root of bracket n approaches the lower pole like
    // |residue| / tan(nu), far below any fixed uniform resolution, and the
    // whole swing of the merit through the wrap can sit inside a single
    // decade of distance from the pole. The scan therefore works per pole
    // bracket, with quarter-decade geometric samples toward both bracket
    // ends down to 1e-14 of the bracket width plus a uniform interior.
    // Samples run contiguously across brackets so a root pinned exactly
    // onto a pole is still straddled.
    const int per_bracket = std::max(16, cfg.scan_points / 8);
    double a = lo;
    for (int n = channel.n_min(); n <= cfg.n_max; ++n) {
      const double b = pole_ladder(channel, n);
      const double inset = std::max(1e-15, (b - a) * 1e-12);
      const double al = a + inset, bl = b - inset, w = bl - al;
      std::vector<double> pts{al};
      for (int k = 56; k >= 1; --k) pts.push_back(al + w * std::pow(10.0, -0.25 * k));
      for (int i = 1; i < per_bracket; ++i) pts.push_back(al + w * i / per_bracket);
      for (int k = 1; k <= 56; ++k) pts.push_back(bl - w * std::pow(10.0, -0.25 * k));
      pts.push_back(bl);
      std::sort(pts.begin(), pts.end());
      for (double e : pts) feed(e);
      a = b;
    }
  }

  const int n0 = channel.n_min();
  const int n_start = nu_v <= nu_lower(channel) ? n0 : n0 + 1;
  int n = n_start;
  for (double e : roots) {
    if (n > cfg.n_max) break;
    out.levels.push_back(Level{n++, e, std::fabs(merit(e))});
  }
  return out;
}

}  // namespace supercrit
