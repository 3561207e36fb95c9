#include "supercrit/channels.hpp"

#include <cmath>
#include <numbers>

namespace supercrit {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kCriticalSnapTol = 1e-6;  // |q - (j+1/2)| allowed under force_critical
}  // namespace

const char* region_name(Region r) {
  switch (r) {
    case Region::Nonsingular: return "nonsingular";
    case Region::Subcritical: return "subcritical";
    case Region::Critical: return "critical";
    case Region::Overcritical: return "overcritical";
  }
  return "?";
}

double z_singular(HalfInteger j, double alpha_inv) {
  if (alpha_inv <= 0.0) throw std::invalid_argument("z_singular: alpha_inv must be positive");
  const double jj = j.value();
  return std::sqrt(jj * (jj + 1.0)) * alpha_inv;
}

double z_critical(HalfInteger j, double alpha_inv) {
  if (alpha_inv <= 0.0) throw std::invalid_argument("z_critical: alpha_inv must be positive");
  return (j.value() + 0.5) * alpha_inv;
}

int num_extension_params(double Z, double alpha_inv) {
  if (Z <= 0.0) throw std::invalid_argument("num_extension_params: Z must be positive");
  if (alpha_inv <= 0.0)
    throw std::invalid_argument("num_extension_params: alpha_inv must be positive");
  // k(Z) = #{ integers l >= 1 : l < sqrt(1/4 + (Z alpha)^2) }, strict at ties.
  const double qa = Z / alpha_inv;
  const double s = std::sqrt(0.25 + qa * qa);
  double fl = std::floor(s);
  int k = static_cast<int>(fl);
  if (fl == s) k -= 1;  // l = s itself is excluded by the strict inequality
  return 2 * k;
}

Channel::Channel(double Z, HalfInteger j, int zeta, double alpha_inv, bool force_critical)
    : Z_(Z), alpha_inv_(alpha_inv), j_(j), zeta_(zeta) {
  if (!(Z > 0.0)) throw std::invalid_argument("Channel: Z must be positive");
  if (!(alpha_inv > 0.0)) throw std::invalid_argument("Channel: alpha_inv must be positive");
  if (zeta != 1 && zeta != -1) throw std::invalid_argument("Channel: zeta must be +1 or -1");
  q_ = Z / alpha_inv;
  const double kk = k();
  if (force_critical) {
    if (std::fabs(q_ - kk) > kCriticalSnapTol)
      throw std::invalid_argument("Channel: force_critical but |q - (j+1/2)| > 1e-6");
    q_ = kk;
    region_ = Region::Critical;
  } else if (q_ == kk) {
    region_ = Region::Critical;
  } else if (q_ > kk) {
    region_ = Region::Overcritical;
  } else if (Z > z_singular(j, alpha_inv)) {
    region_ = Region::Subcritical;
  } else {
    region_ = Region::Nonsingular;
  }
}

double Channel::gamma_param() const {
  if (region_ == Region::Overcritical)
    throw std::domain_error("gamma is imaginary in the overcritical region");
  const double kk = k();
  return std::sqrt((kk - q_) * (kk + q_));
}

double Channel::sigma_param() const {
  if (region_ != Region::Overcritical)
    throw std::domain_error("sigma is only defined in the overcritical region");
  const double kk = k();
  return std::sqrt((q_ - kk) * (q_ + kk));
}

int Channel::n_min() const {
  if (region_ == Region::Overcritical) return 0;
  return zeta_ > 0 ? 1 : 0;
}

Region classify(const Channel& channel) { return channel.region(); }

ExtensionAngle::ExtensionAngle(double nu_radians) {
  if (!std::isfinite(nu_radians))
    throw std::invalid_argument("ExtensionAngle: nu must be finite");
  double nu = std::remainder(nu_radians, kPi);  // [-pi/2, pi/2]
  // Normalize to (-pi/2, pi/2], but keep an exact -pi/2 input as given:
  // it is the same extension as +pi/2 with level indices shifted by one.
  if (nu == -kPi / 2 && nu_radians != -kPi / 2) nu = kPi / 2;
  nu_ = nu;
}

double sommerfeld_energy(const Channel& channel, int n) {
  if (channel.region() == Region::Overcritical)
    throw std::domain_error("sommerfeld_energy: overcritical channel");
  if (n < channel.n_min())
    throw std::domain_error("sommerfeld_energy: index below the allowed range for this zeta");
  const double q = channel.q();
  const double x = n + channel.gamma_param();
  return x / std::sqrt(q * q + x * x);
}

double pole_ladder(const Channel& channel, int n) {
  const Region r = channel.region();
  if (r != Region::Subcritical && r != Region::Critical)
    throw std::domain_error("pole_ladder: only defined in the subcritical/critical regions");
  if (n < 0) throw std::domain_error("pole_ladder: n must be nonnegative");
  const double q = channel.q();
  const double x = n - channel.gamma_param();  // gamma = 0 on the critical curve
  return x / std::sqrt(q * q + x * x);
}

double nonrel_energy(const Channel& channel, int n) {
  if (n < 1) throw std::domain_error("nonrel_energy: n must be >= 1");
  const double q = channel.q();
  return -q * q / (2.0 * static_cast<double>(n) * n);
}

}  // namespace supercrit
