#ifndef CUTOFF_QUADRATURE_HPP
#define CUTOFF_QUADRATURE_HPP

#include <functional>

namespace cutoff::quad {

// Exponential tail envelope asserted by the caller of integrate_halfline:
// |f(t)| <= coef * exp(-rate * t) for all t >= 1 (truncation never happens
// below t = 1).  The truncation point T is chosen so that the certified tail
// mass coef/rate * exp(-rate*T) falls below half the absolute tolerance.
struct TailPolicy {
    double coef = 1.0;
    double rate = 1.0;
};

struct QuadSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 4000;
    TailPolicy tail{};

    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
    int subdivisions = 0;
};

using Integrand = std::function<double(double)>;
using RadialIntegrand = std::function<double(double, double)>; // (radius, angle)

// Adaptive Gauss-Kronrod (7,15) over [a, b].  Tolerates integrable endpoint
// singularities (the rule never evaluates the endpoints).
QuadResult integrate_interval(const Integrand& f, double a, double b,
                              const QuadSpec& spec = QuadSpec{});

// \int_0^\infty f, truncated at the point where spec.tail certifies the
// remaining mass below abs_tol/2.  The tail bound is added to the reported
// error estimate.
QuadResult integrate_halfline(const Integrand& f, const QuadSpec& spec = QuadSpec{});

// \int_0^{2pi} \int_0^\infty g(rho, theta) rho drho dtheta.  With
// circularly_symmetric set, evaluates 2*pi times the radial integral of
// g(rho, 0) * rho.  spec.tail refers to the radial integrand including the
// rho factor (and the 2*pi factor in the symmetric case).
QuadResult integrate_radial_complex(const RadialIntegrand& g,
                                    const QuadSpec& spec = QuadSpec{},
                                    bool circularly_symmetric = false);

// Unwraps a QuadResult, throwing cutoff::accuracy_error if not converged.
double require(const QuadResult& r, const char* what = "quadrature");

} // namespace cutoff::quad

#endif
