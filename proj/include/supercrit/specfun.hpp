#pragma once

#include <complex>

#include "supercrit/signlog.hpp"

namespace supercrit::specfun {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008;

/// sign(Gamma(x)) and ln|Gamma(x)| for real x off the poles.
/// Throws std::domain_error at non-positive integers.
SignLog ln_gamma_signed(double x);

/// Same, but poles come back as SignLog::pole() instead of throwing.
/// Used by the level equations, where a ladder energy hit exactly is a
/// legitimate query.
SignLog ln_gamma_signed_or_pole(double x) noexcept;

/// psi(x) = Gamma'(x)/Gamma(x) on the real line off the poles.
double digamma(double x);

/// The standard (Stirling) branch of arg Gamma(x + iy), continuous in x
/// along the whole real line for fixed y != 0, equal to the asymptotic
/// series value for x >= 8. Not reduced mod 2*pi.
double arg_gamma_continuous(double x, double y);

/// Standard-branch arg Gamma(z) for complex z with Im z != 0.
double arg_gamma_continuous(std::complex<double> z);

/// sin(pi*x) with the argument reduced before evaluation, so the sign and
/// magnitude stay exact for large |x|.
double sin_pi(double x);

}  // namespace supercrit::specfun
