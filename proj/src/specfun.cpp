#include "supercrit/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace supercrit::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

// Lanczos approximation, g = 607/128, 15 terms (Pugh/Godfrey coefficients).
// Gives ln Gamma to ~1e-15 relative on the positive half line.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

// ln Gamma(x) for x >= 0.5.
double lgamma_positive(double x) {
  double sum = kLanczos[0];
  for (int i = 1; i < 15; ++i) sum += kLanczos[i] / (x + i - 1);
  const double base = x + kLanczosG - 0.5;
  return 0.5 * std::log(2.0 * kPi) + (x - 0.5) * std::log(base) - base +
         std::log(sum);
}

}  // namespace

double sin_pi(double x) {
  double r = x - 2.0 * std::floor(x / 2.0);  // r in [0, 2)
  // Fold into [0, 0.5] where sin(pi r) is evaluated directly.
  double s = 1.0;
  if (r >= 1.0) {
    s = -1.0;
    r -= 1.0;
  }
  if (r > 0.5) r = 1.0 - r;
  return s * std::sin(kPi * r);
}

SignLog ln_gamma_signed_or_pole(double x) noexcept {
  if (is_nonpositive_integer(x)) return SignLog::pole();
  if (x >= 0.5) return SignLog::from_log(1, lgamma_positive(x));
  // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x)); 1 - x >= 0.5.
  const double s = sin_pi(x);
  const double lg = std::log(kPi) - std::log(std::fabs(s)) - lgamma_positive(1.0 - x);
  return SignLog::from_log(s > 0.0 ? 1 : -1, lg);
}

SignLog ln_gamma_signed(double x) {
  if (!std::isfinite(x)) throw std::domain_error("ln_gamma_signed: non-finite argument");
  if (is_nonpositive_integer(x))
    throw std::domain_error("ln_gamma_signed: pole at non-positive integer");
  return ln_gamma_signed_or_pole(x);
}

double digamma(double x) {
  if (!std::isfinite(x)) throw std::domain_error("digamma: non-finite argument");
  if (is_nonpositive_integer(x))
    throw std::domain_error("digamma: pole at non-positive integer");
  if (x < 0.0) {
    // psi(x) = psi(1-x) - pi*cot(pi*x); reduce the cotangent argument.
    const double r = x - std::floor(x);
    return digamma(1.0 - x) - kPi / std::tan(kPi * r);
  }
  double acc = 0.0;
  while (x < 12.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  // Asymptotic series psi(x) ~ ln x - 1/2x - sum B_{2n} / (2n x^{2n}).
  const double inv = 1.0 / x, inv2 = inv * inv;
  double series = -inv2 * (1.0 / 12.0 +
                  inv2 * (-1.0 / 120.0 +
                  inv2 * (1.0 / 252.0 +
                  inv2 * (-1.0 / 240.0 +
                  inv2 * (1.0 / 132.0 +
                  inv2 * (-691.0 / 32760.0 +
                  inv2 * (1.0 / 12.0)))))));
  return acc + std::log(x) - 0.5 * inv + series;
}

namespace {

// Im of the Stirling series for log Gamma(w), valid for Re(w) >= 8.
double arg_gamma_stirling(std::complex<double> w) {
  const std::complex<double> lw = std::log(w);
  std::complex<double> r = (w - 0.5) * lw - w;
  // Bernoulli tail B_{2n} / ((2n-1)(2n) w^{2n-1}).
  static constexpr double coef[] = {
      1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0,
      1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
  };
  const std::complex<double> w2 = w * w;
  std::complex<double> p = 1.0 / w;
  for (double c : coef) {
    r += c * p;
    p /= w2;
  }
  return r.imag();
}

}  // namespace

double arg_gamma_continuous(std::complex<double> z) {
  if (z.imag() == 0.0)
    throw std::domain_error("arg_gamma_continuous: imaginary part must be nonzero");
  // Schwarz reflection, applied up front so the antisymmetry is exact.
  if (z.imag() < 0.0) return -arg_gamma_continuous(std::conj(z));
  double shift = 0.0;
  if (z.real() < 8.0) {
    // arg Gamma(z) = arg Gamma(z+N) - sum arg(z+k); each principal arg is
    // continuous because Im z != 0.
    const long n = static_cast<long>(std::ceil(8.0 - z.real()));
    for (long k = 0; k < n; ++k)
      shift += std::atan2(z.imag(), z.real() + static_cast<double>(k));
    z += static_cast<double>(n);
  }
  return arg_gamma_stirling(z) - shift;
}

double arg_gamma_continuous(double x, double y) {
  return arg_gamma_continuous(std::complex<double>(x, y));
}

}  // namespace supercrit::specfun
