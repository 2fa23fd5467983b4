#include "cutoff/specfun.hpp"
#include "cutoff/errors.hpp"
#include "cutoff/quadrature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cutoff::specfun {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kTwoPi = 2.0 * kPi;

// Crossover between the ascending power series and the asymptotic expansion
// of I0.  At 18 both sides deliver full double accuracy.
constexpr double kI0SeriesCutoff = 18.0;

[[noreturn]] void domain_fail(const char* what)
{
    throw std::domain_error(what);
}

// Ascending series I0(x) = sum_k ((x/2)^2)^k / (k!)^2, |x| <= cutoff.
double i0_series(double ax, const SpecFunConfig& cfg, bool* ok)
{
    const double q = 0.25 * ax * ax;
    double term = 1.0, sum = 1.0;
    *ok = false;
    for (int k = 1; k <= cfg.max_terms; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < cfg.rel_tol * sum) {
            *ok = true;
            break;
        }
    }
    return sum;
}

// Asymptotic expansion of the scaled function exp(-x) I0(x) for large x:
// (2 pi x)^{-1/2} * sum_k a_k / x^k with a_0 = 1, a_{k+1} = a_k (2k+1)^2 / (8(k+1)).
double i0_scaled_asymptotic(double ax, const SpecFunConfig& cfg, bool* ok)
{
    double term = 1.0, sum = 1.0;
    *ok = false;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < cfg.max_terms; ++k) {
        const double factor = (2.0 * k + 1.0) * (2.0 * k + 1.0) / (8.0 * (k + 1.0) * ax);
        term *= factor;
        if (std::abs(term) >= prev) break; // divergent tail reached
        prev = std::abs(term);
        sum += term;
        if (std::abs(term) < cfg.rel_tol * sum) {
            *ok = true;
            break;
        }
    }
    return sum / std::sqrt(kTwoPi * ax);
}

double i0_definition(double x)
{
    quad::QuadSpec spec;
    spec.abs_tol = 1e-13;
    spec.rel_tol = 1e-13;
    quad::QuadResult r = quad::integrate_interval(
        [x](double theta) { return std::exp(x * std::cos(theta)); }, -kPi, kPi, spec);
    return quad::require(r, "bessel_i0 definition integral") / kTwoPi;
}

// log(x) + E1(x) via the ascending series, stable for x <= 8:
// E1(x) = -gamma - log x + sum_{k>=1} (-1)^{k+1} x^k / (k k!).
double log_minus_ei_series(double x, const SpecFunConfig& cfg, bool* ok)
{
    double term = 1.0, sum = 0.0;
    *ok = false;
    for (int k = 1; k <= cfg.max_terms; ++k) {
        term *= x / k;
        const double add = ((k & 1) ? term : -term) / k;
        sum += add;
        if (std::abs(term) / k < cfg.rel_tol * std::max(1.0, std::abs(sum))) {
            *ok = true;
            break;
        }
    }
    return -euler_gamma + sum;
}

// E1(x) by the modified Lentz continued fraction, for x >= ~1:
// E1(x) = exp(-x) / (x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(...)))).
double e1_continued_fraction(double x, const SpecFunConfig& cfg, bool* ok)
{
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    *ok = false;
    for (int i = 1; i <= cfg.max_terms; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = a * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < cfg.rel_tol) {
            *ok = true;
            break;
        }
    }
    return h * std::exp(-x);
}

// Regularized-by-hand lower series: gamma_lower(a,x) = x^a e^{-x} sum_n x^n / (a (a+1) ... (a+n)).
double gamma_lower_series(double a, double x, const SpecFunConfig& cfg, bool* ok)
{
    double denom = a;
    double term = 1.0 / a;
    double sum = term;
    *ok = false;
    for (int n = 1; n <= cfg.max_terms; ++n) {
        denom += 1.0;
        term *= x / denom;
        sum += term;
        if (std::abs(term) < cfg.rel_tol * std::abs(sum)) {
            *ok = true;
            break;
        }
    }
    return sum * std::exp(a * std::log(x) - x);
}

// Upper incomplete gamma by the Lentz continued fraction, for x >= a + 1.
double gamma_upper_cf(double a, double x, const SpecFunConfig& cfg, bool* ok)
{
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    *ok = false;
    for (int i = 1; i <= cfg.max_terms; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < cfg.rel_tol) {
            *ok = true;
            break;
        }
    }
    return h * std::exp(a * std::log(x) - x);
}

double inc_gamma_definition(double a, double x)
{
    // \int_x^\infty t^{a-1} e^{-t} dt, shifted to the half line.
    quad::QuadSpec spec;
    spec.abs_tol = 1e-13;
    spec.rel_tol = 1e-12;
    if (x == 0.0) {
        // Integrable singularity at 0 when a < 1.
        spec.tail.coef = (a > 1.0) ? std::pow(2.0 * (a - 1.0) / std::exp(1.0), a - 1.0) : 1.0;
        spec.tail.rate = (a > 1.0) ? 0.5 : 1.0;
        quad::QuadResult r = quad::integrate_halfline(
            [a](double t) { return t > 0.0 ? std::exp((a - 1.0) * std::log(t) - t) : 0.0; },
            spec);
        return quad::require(r, "inc_gamma definition integral");
    }
    spec.tail.coef = std::exp(-x) * ((a > 1.0) ? std::pow(2.0 * (a - 1.0) / std::exp(1.0), a - 1.0)
                                               : std::max(1.0, std::pow(x, a - 1.0)));
    spec.tail.rate = (a > 1.0) ? 0.5 : 1.0;
    quad::QuadResult r = quad::integrate_halfline(
        [a, x](double u) { return std::exp((a - 1.0) * std::log(x + u) - (x + u)); }, spec);
    return quad::require(r, "inc_gamma definition integral");
}

// Arithmetic-geometric mean of (a, b), a >= b > 0.
double agm(double a, double b)
{
    for (int i = 0; i < 64; ++i) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        if (std::abs(a - b) <= 4.0 * std::numeric_limits<double>::epsilon() * an) break;
        a = an;
        b = bn;
    }
    return 0.5 * (a + b);
}

} // namespace

void SpecFunConfig::validate() const
{
    if (!(rel_tol > 0.0)) throw std::invalid_argument("SpecFunConfig: rel_tol must be > 0");
    if (max_terms < 1) throw std::invalid_argument("SpecFunConfig: max_terms must be >= 1");
}

const SpecFunConfig& default_config()
{
    static const SpecFunConfig cfg{};
    return cfg;
}

double bessel_i0(double xi, const SpecFunConfig& cfg)
{
    cfg.validate();
    if (!std::isfinite(xi)) domain_fail("bessel_i0: argument must be finite");
    const double ax = std::abs(xi);
    bool ok = false;
    if (ax <= kI0SeriesCutoff) {
        const double v = i0_series(ax, cfg, &ok);
        if (ok) return v;
        if (cfg.quad_fallback) return i0_definition(ax);
        throw accuracy_error("bessel_i0: series did not converge", v, std::abs(v));
    }
    const double scaled = i0_scaled_asymptotic(ax, cfg, &ok);
    if (!ok && cfg.quad_fallback && ax < 700.0) return i0_definition(ax);
    return scaled * std::exp(ax); // overflows to +inf for ax > ~713
}

double bessel_i0_scaled(double xi, const SpecFunConfig& cfg)
{
    cfg.validate();
    if (!std::isfinite(xi)) domain_fail("bessel_i0_scaled: argument must be finite");
    const double ax = std::abs(xi);
    bool ok = false;
    if (ax <= kI0SeriesCutoff) {
        const double v = i0_series(ax, cfg, &ok);
        if (!ok && cfg.quad_fallback) return i0_definition(ax) * std::exp(-ax);
        return v * std::exp(-ax);
    }
    return i0_scaled_asymptotic(ax, cfg, &ok);
}

double log_bessel_i0(double xi, const SpecFunConfig& cfg)
{
    cfg.validate();
    if (!(xi >= 0.0)) domain_fail("log_bessel_i0: argument must be >= 0");
    if (!std::isfinite(xi)) domain_fail("log_bessel_i0: argument must be finite");
    bool ok = false;
    if (xi <= kI0SeriesCutoff) {
        const double v = i0_series(xi, cfg, &ok);
        if (!ok && cfg.quad_fallback) return std::log(i0_definition(xi));
        return std::log(v);
    }
    return xi + std::log(i0_scaled_asymptotic(xi, cfg, &ok));
}

double log_minus_ei(double xi, const SpecFunConfig& cfg)
{
    cfg.validate();
    if (!(xi >= 0.0)) domain_fail("log_minus_ei: argument must be >= 0");
    if (!std::isfinite(xi)) domain_fail("log_minus_ei: argument must be finite");
    if (xi == 0.0) return -euler_gamma;
    bool ok = false;
    if (xi <= 8.0) {
        const double v = log_minus_ei_series(xi, cfg, &ok);
        if (ok) return v;
    } else {
        const double e1 = e1_continued_fraction(xi, cfg, &ok);
        if (ok) return std::log(xi) + e1;
    }
    if (cfg.quad_fallback) {
        // log(xi) + \int_xi^\infty e^{-t}/t dt
        quad::QuadSpec spec;
        spec.abs_tol = 1e-14;
        spec.rel_tol = 1e-13;
        spec.tail.coef = std::exp(-xi) / xi;
        spec.tail.rate = 1.0;
        quad::QuadResult r = quad::integrate_halfline(
            [xi](double u) { return std::exp(-(xi + u)) / (xi + u); }, spec);
        return std::log(xi) + quad::require(r, "log_minus_ei definition integral");
    }
    throw accuracy_error("log_minus_ei: evaluation did not converge", std::log(xi), 1.0);
}

double inc_gamma(double alpha, double xi, const SpecFunConfig& cfg)
{
    cfg.validate();
    if (!(alpha > 0.0)) domain_fail("inc_gamma: alpha must be > 0");
    if (!(xi >= 0.0)) domain_fail("inc_gamma: xi must be >= 0");
    if (!std::isfinite(alpha) || !std::isfinite(xi))
        domain_fail("inc_gamma: arguments must be finite");
    if (xi == 0.0) return std::tgamma(alpha);
    bool ok = false;
    if (xi < alpha + 1.0) {
        const double lower = gamma_lower_series(alpha, xi, cfg, &ok);
        if (ok) return std::tgamma(alpha) - lower;
    } else {
        const double upper = gamma_upper_cf(alpha, xi, cfg, &ok);
        if (ok) return upper;
    }
    if (cfg.quad_fallback) return inc_gamma_definition(alpha, xi);
    throw accuracy_error("inc_gamma: evaluation did not converge", 0.0, 1.0);
}

double elliptic_k(double k, const SpecFunConfig& cfg)
{
    cfg.validate();
    if (!(k >= 0.0) || !(k < 1.0)) domain_fail("elliptic_k: modulus must satisfy 0 <= k < 1");
    const double kp = std::sqrt((1.0 - k) * (1.0 + k));
    return 0.5 * kPi / agm(1.0, kp);
}

double elliptic_k_complement(double kp, const SpecFunConfig& cfg)
{
    cfg.validate();
    if (!(kp > 0.0) || !(kp <= 1.0))
        domain_fail("elliptic_k_complement: complementary modulus must satisfy 0 < kp <= 1");
    return 0.5 * kPi / agm(1.0, kp);
}

} // namespace cutoff::specfun
