#include "cutoff/quadrature.hpp"
#include "cutoff/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace cutoff::quad {

void QuadSpec::validate() const
{
    if (!(abs_tol > 0.0) && !(rel_tol > 0.0))
        throw std::invalid_argument("QuadSpec: abs_tol or rel_tol must be positive");
    if (max_subdivisions < 1)
        throw std::invalid_argument("QuadSpec: max_subdivisions must be >= 1");
    if (!(tail.coef >= 0.0) || !(tail.rate > 0.0))
        throw std::invalid_argument("QuadSpec: tail envelope needs coef >= 0 and rate > 0");
}

namespace {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule
// (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
    double integral;
    double error;
    double resabs; // integral of |f|
};

PanelEstimate gk15(const Integrand& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double halflen = 0.5 * (b - a);

    bool nonfinite_sample = false;
    auto eval = [&](double t) {
        const double v = f(t);
        if (!std::isfinite(v)) {
            nonfinite_sample = true;
            return 0.0;
        }
        return v;
    };

    double fv1[7], fv2[7];
    const double fc = eval(center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    for (int j = 0; j < 3; ++j) {
        const int jtw = 2 * j + 1;
        const double absc = halflen * kXgk[jtw];
        fv1[jtw] = eval(center - absc);
        fv2[jtw] = eval(center + absc);
        const double fsum = fv1[jtw] + fv2[jtw];
        resg += kWg[j] * fsum;
        resk += kWgk[jtw] * fsum;
        resabs += kWgk[jtw] * (std::abs(fv1[jtw]) + std::abs(fv2[jtw]));
    }
    for (int j = 0; j < 4; ++j) {
        const int jtwm1 = 2 * j;
        const double absc = halflen * kXgk[jtwm1];
        fv1[jtwm1] = eval(center - absc);
        fv2[jtwm1] = eval(center + absc);
        const double fsum = fv1[jtwm1] + fv2[jtwm1];
        resk += kWgk[jtwm1] * fsum;
        resabs += kWgk[jtwm1] * (std::abs(fv1[jtwm1]) + std::abs(fv2[jtwm1]));
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    const double integral = resk * halflen;
    resabs *= std::abs(halflen);
    resasc *= std::abs(halflen);
    double err = std::abs((resk - resg) * halflen);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / eps50)
        err = std::max(err, eps50 * resabs);
    // A sample that was not finite poisons the panel: force refinement (or an
    // honest non-converged result if the panel is already at machine width).
    if (nonfinite_sample) err = std::numeric_limits<double>::infinity();
    return {integral, err, resabs};
}

struct Panel {
    double a, b;
    double integral;
    double error;
    long order; // insertion order, for deterministic tie-breaking
};

struct PanelLess {
    bool operator()(const Panel& lhs, const Panel& rhs) const
    {
        if (lhs.error != rhs.error) return lhs.error < rhs.error;
        return lhs.order > rhs.order;
    }
};

} // namespace

QuadResult integrate_interval(const Integrand& f, double a, double b, const QuadSpec& spec)
{
    spec.validate();
    if (!(a < b)) throw std::invalid_argument("integrate_interval: requires a < b");
    if (!std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("integrate_interval: endpoints must be finite");

    std::priority_queue<Panel, std::vector<Panel>, PanelLess> heap;
    long order = 0;
    PanelEstimate first = gk15(f, a, b);
    heap.push(Panel{a, b, first.integral, first.error, order++});
    double total = first.integral;
    double total_err = first.error;
    int splits = 0;

    auto tolerance = [&](double value) {
        return std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
    };

    while (total_err > tolerance(total) && splits < spec.max_subdivisions) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval at machine resolution; put it back and stop splitting.
            heap.push(worst);
            break;
        }
        PanelEstimate left = gk15(f, worst.a, mid);
        PanelEstimate right = gk15(f, mid, worst.b);
        total += left.integral + right.integral - worst.integral;
        total_err += left.error + right.error - worst.error;
        heap.push(Panel{worst.a, mid, left.integral, left.error, order++});
        heap.push(Panel{mid, worst.b, right.integral, right.error, order++});
        ++splits;
    }

    // Recompute the totals from the final partition to undo accumulation
    // error in the incremental updates.
    total = 0.0;
    total_err = 0.0;
    while (!heap.empty()) {
        total += heap.top().integral;
        total_err += heap.top().error;
        heap.pop();
    }

    QuadResult out;
    out.value = total;
    out.error_estimate = total_err;
    out.subdivisions = splits;
    out.converged = total_err <= tolerance(total);
    return out;
}

QuadResult integrate_halfline(const Integrand& f, const QuadSpec& spec)
{
    spec.validate();
    const double tail_target = 0.5 * spec.abs_tol;
    // coef/rate * exp(-rate*T) <= tail_target
    double T = 1.0;
    if (spec.tail.coef > 0.0) {
        T = std::log(spec.tail.coef / (spec.tail.rate * tail_target)) / spec.tail.rate;
        T = std::max(T, 1.0);
    }
    if (!std::isfinite(T))
        throw std::invalid_argument("integrate_halfline: tail policy yields unusable cutoff");

    QuadSpec inner = spec;
    inner.abs_tol = 0.5 * spec.abs_tol;
    inner.rel_tol = 0.5 * spec.rel_tol;
    QuadResult r = integrate_interval(f, 0.0, T, inner);
    const double tail_bound = spec.tail.coef / spec.tail.rate * std::exp(-spec.tail.rate * T);
    r.error_estimate += tail_bound;
    r.converged = r.error_estimate <= std::max(spec.abs_tol, spec.rel_tol * std::abs(r.value));
    return r;
}

QuadResult integrate_radial_complex(const RadialIntegrand& g, const QuadSpec& spec,
                                    bool circularly_symmetric)
{
    spec.validate();
    constexpr double two_pi = 6.283185307179586476925286766559;

    if (circularly_symmetric) {
        return integrate_halfline(
            [&g](double rho) { return two_pi * rho * g(rho, 0.0); }, spec);
    }

    // Iterated integral: the inner angular integral runs at a tighter
    // tolerance so that the outer radial pass dominates the error budget.
    QuadSpec angular = spec;
    angular.abs_tol = std::max(1e-15, 0.02 * spec.abs_tol);
    angular.rel_tol = std::max(1e-14, 0.1 * spec.rel_tol);

    const Integrand radial = [&](double rho) {
        QuadResult inner = integrate_interval(
            [&g, rho](double theta) { return g(rho, theta); }, 0.0, two_pi, angular);
        return rho * inner.value;
    };
    return integrate_halfline(radial, spec);
}

double require(const QuadResult& r, const char* what)
{
    if (!r.converged) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "%s did not reach tolerance (error estimate %.3e)",
                      what, r.error_estimate);
        throw accuracy_error(msg, r.value, r.error_estimate);
    }
    return r.value;
}

} // namespace cutoff::quad
