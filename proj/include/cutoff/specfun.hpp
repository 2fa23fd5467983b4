#ifndef CUTOFF_SPECFUN_HPP
#define CUTOFF_SPECFUN_HPP

// Special functions needed by the exponent formulas: the modified Bessel
// function I0 (plain, scaled and in log form), the exponential-integral
// combination log(x) - Ei(-x), the upper incomplete gamma function, and the
// complete elliptic integral of the first kind.
//
// Every function is also evaluable through its defining integral (see
// *_definition below); the closed evaluations are cross-checked against those
// integrals in the test suite.

namespace cutoff::specfun {

// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.5772156649015328606;

struct SpecFunConfig {
    double rel_tol = 1e-12; // relative accuracy target
    int max_terms = 500;    // series / continued-fraction term cap
    bool quad_fallback = true; // evaluate the defining integral if the
                               // primary scheme fails to converge

    void validate() const;
};

const SpecFunConfig& default_config();

// I0(xi).  Even in xi.  Overflows to +inf for xi > ~713 (use log_bessel_i0).
double bessel_i0(double xi, const SpecFunConfig& cfg = default_config());

// exp(-|xi|) * I0(xi); stays finite for all xi.
double bessel_i0_scaled(double xi, const SpecFunConfig& cfg = default_config());

// log I0(xi) for xi >= 0; finite up to xi ~ 1e300.
double log_bessel_i0(double xi, const SpecFunConfig& cfg = default_config());

// log(xi) - Ei(-xi) for xi >= 0, continuously extended to -gamma at xi = 0.
double log_minus_ei(double xi, const SpecFunConfig& cfg = default_config());

// Upper incomplete gamma Gamma(alpha, xi) for alpha > 0, xi >= 0.
double inc_gamma(double alpha, double xi, const SpecFunConfig& cfg = default_config());

// Complete elliptic integral of the first kind, modulus convention:
// K(k) = \int_0^1 dt / (sqrt(1-t^2) sqrt(1-k^2 t^2)), 0 <= k < 1.
double elliptic_k(double k, const SpecFunConfig& cfg = default_config());

// K(sqrt(1 - kp^2)) computed directly from the complementary modulus kp,
// which avoids the cancellation in 1-k^2 when k is close to 1.  0 < kp <= 1.
double elliptic_k_complement(double kp, const SpecFunConfig& cfg = default_config());

} // namespace cutoff::specfun

#endif
