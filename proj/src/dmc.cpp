#include "cutoff/dmc.hpp"
#include "cutoff/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace cutoff::dmc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogFloor = -690.0; // exp() underflow guard

double logsumexp(const std::vector<double>& v)
{
    double mx = kNegInf;
    for (double x : v) mx = std::max(mx, x);
    if (mx == kNegInf) return kNegInf;
    double s = 0.0;
    for (double x : v) s += std::exp(x - mx);
    return mx + std::log(s);
}

// log W(y|x)^{1/(1+rho)} as a flat row-major table; -inf for zero entries.
std::vector<double> log_kernel(double rho, const Dmc& w)
{
    const double e = 1.0 / (1.0 + rho);
    std::vector<double> lk(w.num_inputs() * w.num_outputs(), kNegInf);
    for (std::size_t x = 0; x < w.num_inputs(); ++x)
        for (std::size_t y = 0; y < w.num_outputs(); ++y)
            if (w(x, y) > 0.0) lk[x * w.num_outputs() + y] = e * std::log(w(x, y));
    return lk;
}

struct GoldenResult {
    double x = 0.0;
    double value = 0.0;
};

// Golden-section maximization of f on [a, b]; assumes unimodality (checked
// downstream by certificates where it matters).
template <class F> GoldenResult golden_max(F&& f, double a, double b, int iters = 120)
{
    constexpr double invphi = 0.6180339887498948482;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters && (b - a) > 1e-14 * (1.0 + std::abs(a) + std::abs(b)); ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return (f1 >= f2) ? GoldenResult{x1, f1} : GoldenResult{x2, f2};
}

void check_input_law(const ProbVec& q, const Dmc& w, const char* where)
{
    if (q.size() != w.num_inputs()) {
        char msg[128];
        std::snprintf(msg, sizeof msg, "%s: input law has %zu entries, channel has %zu inputs",
                      where, q.size(), w.num_inputs());
        throw std::invalid_argument(msg);
    }
}

void check_rho(double rho, const char* where, bool strictly_positive = false)
{
    if (!std::isfinite(rho) || rho < 0.0 || (strictly_positive && rho == 0.0)) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "%s: rho must be %s, got %g", where,
                      strictly_positive ? "> 0" : ">= 0", rho);
        throw std::invalid_argument(msg);
    }
}

// log alpha(y) = log sum_x q(x) e^{tilt(x)} W(y|x)^{1/(1+rho)}.
std::vector<double> log_alpha(const std::vector<double>& logq, const std::vector<double>& tilt,
                              const std::vector<double>& lk, std::size_t n, std::size_t m)
{
    std::vector<double> la(m, kNegInf);
    std::vector<double> terms(n);
    for (std::size_t y = 0; y < m; ++y) {
        for (std::size_t x = 0; x < n; ++x) terms[x] = logq[x] + tilt[x] + lk[x * m + y];
        la[y] = logsumexp(terms);
    }
    return la;
}

// -log sum_y exp((1+rho) log alpha(y)).
double e0_from_log_alpha(double rho, const std::vector<double>& la)
{
    std::vector<double> scaled(la.size());
    for (std::size_t y = 0; y < la.size(); ++y) scaled[y] = (1.0 + rho) * la[y];
    return -logsumexp(scaled);
}

std::vector<double> to_log(const ProbVec& q)
{
    std::vector<double> lq(q.size());
    for (std::size_t i = 0; i < q.size(); ++i)
        lq[i] = q[i] > 0.0 ? std::log(q[i]) : kNegInf;
    return lq;
}

ProbVec from_log(std::vector<double> lq)
{
    const double z = logsumexp(lq);
    std::vector<double> w(lq.size());
    for (std::size_t i = 0; i < lq.size(); ++i) w[i] = std::exp(lq[i] - z);
    // Renormalize in linear space to meet the ProbVec sum invariant exactly.
    double s = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& v : w) v /= s;
    return ProbVec(std::move(w));
}

// Euclidean projection onto the probability simplex.
void project_simplex(std::vector<double>& v)
{
    std::vector<double> u(v);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0, theta = 0.0;
    int k = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        css += u[i];
        const double t = (css - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) {
            theta = t;
            k = static_cast<int>(i + 1);
        }
    }
    (void)k;
    for (double& x : v) x = std::max(0.0, x - theta);
    double s = std::accumulate(v.begin(), v.end(), 0.0);
    for (double& x : v) x /= s;
}

} // namespace

// ---------------------------------------------------------------------------
// Dmc / CostSpec / ConditionalLaw
// ---------------------------------------------------------------------------

Dmc::Dmc(std::size_t num_inputs, std::size_t num_outputs, std::vector<double> transition)
    : n_(num_inputs), m_(num_outputs), w_(std::move(transition))
{
    if (n_ == 0 || m_ == 0) throw std::invalid_argument("Dmc: alphabets must be nonempty");
    if (w_.size() != n_ * m_) throw std::invalid_argument("Dmc: transition size mismatch");
    for (std::size_t x = 0; x < n_; ++x) {
        double sum = 0.0;
        for (std::size_t y = 0; y < m_; ++y) {
            const double p = w_[x * m_ + y];
            if (!(p >= 0.0) || !std::isfinite(p)) {
                char msg[96];
                std::snprintf(msg, sizeof msg, "entry at row %zu, column %zu is %g, must be >= 0",
                              x + 1, y + 1, p);
                throw std::invalid_argument(msg);
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-12) {
            char msg[96];
            std::snprintf(msg, sizeof msg, "row %zu sums to %.6g", x + 1, sum);
            throw std::invalid_argument(msg);
        }
    }
}

Dmc Dmc::from_rows(const std::vector<std::vector<double>>& rows)
{
    if (rows.empty()) throw std::invalid_argument("Dmc: no rows");
    const std::size_t m = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * m);
    for (const auto& r : rows) {
        if (r.size() != m) throw std::invalid_argument("Dmc: ragged rows");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return Dmc(rows.size(), m, std::move(flat));
}

Dmc Dmc::bsc(double crossover)
{
    if (!(crossover >= 0.0) || !(crossover <= 1.0))
        throw std::invalid_argument("Dmc::bsc: crossover must be in [0,1]");
    return Dmc(2, 2, {1.0 - crossover, crossover, crossover, 1.0 - crossover});
}

Dmc Dmc::noiseless_binary()
{
    return Dmc(2, 2, {1.0, 0.0, 0.0, 1.0});
}

void CostSpec::validate(std::size_t num_inputs) const
{
    if (cost.size() != num_inputs)
        throw std::invalid_argument("CostSpec: cost vector length does not match input alphabet");
    for (double g : cost)
        if (!(g >= 0.0) || !std::isfinite(g))
            throw std::invalid_argument("CostSpec: costs must be finite and >= 0");
    if (!(budget >= 0.0) || !std::isfinite(budget))
        throw std::invalid_argument("CostSpec: budget must be finite and >= 0");
}

double CostSpec::expected_cost(const ProbVec& q) const
{
    double s = 0.0;
    for (std::size_t x = 0; x < q.size(); ++x) s += q[x] * cost[x];
    return s;
}

double CostSpec::min_cost() const
{
    return *std::min_element(cost.begin(), cost.end());
}

double CostSpec::max_cost() const
{
    return *std::max_element(cost.begin(), cost.end());
}

void ConditionalLaw::validate() const
{
    if (v.size() != num_inputs * num_outputs)
        throw std::invalid_argument("ConditionalLaw: size mismatch");
    for (std::size_t x = 0; x < num_inputs; ++x) {
        double sum = 0.0;
        for (std::size_t y = 0; y < num_outputs; ++y) {
            if (!(v[x * num_outputs + y] >= 0.0))
                throw std::invalid_argument("ConditionalLaw: negative entry");
            sum += v[x * num_outputs + y];
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("ConditionalLaw: rows must be stochastic");
    }
}

// ---------------------------------------------------------------------------
// Primal evaluations
// ---------------------------------------------------------------------------

double eg0(double rho, const ProbVec& q, const Dmc& w)
{
    check_rho(rho, "eg0");
    check_input_law(q, w, "eg0");
    const auto lk = log_kernel(rho, w);
    const std::vector<double> no_tilt(w.num_inputs(), 0.0);
    return e0_from_log_alpha(rho, log_alpha(to_log(q), no_tilt, lk, w.num_inputs(), w.num_outputs()));
}

double e0_tilted(double rho, const ProbVec& q, double r, const Dmc& w, const CostSpec& cost)
{
    check_rho(rho, "e0_tilted");
    check_input_law(q, w, "e0_tilted");
    cost.validate(w.num_inputs());
    if (!(r >= 0.0)) throw std::invalid_argument("e0_tilted: r must be >= 0");
    const auto lk = log_kernel(rho, w);
    std::vector<double> tilt(w.num_inputs());
    for (std::size_t x = 0; x < w.num_inputs(); ++x) tilt[x] = r * (cost.cost[x] - cost.budget);
    return e0_from_log_alpha(rho, log_alpha(to_log(q), tilt, lk, w.num_inputs(), w.num_outputs()));
}

TiltedMax eg0_modified(double rho, const ProbVec& q, const Dmc& w, const CostSpec& cost)
{
    check_rho(rho, "eg0_modified");
    check_input_law(q, w, "eg0_modified");
    cost.validate(w.num_inputs());
    const double eg = cost.expected_cost(q);
    if (eg > cost.budget + 1e-9) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "eg0_modified: input law violates the cost constraint (E[g]=%.12g > %.12g)",
                      eg, cost.budget);
        throw std::invalid_argument(msg);
    }
    if (eg < cost.budget - 1e-9) return {eg0(rho, q, w), 0.0};

    // Constraint met with equality: line-search the tilt.
    auto phi = [&](double r) { return e0_tilted(rho, q, r, w, cost); };
    double spread = 0.0;
    for (std::size_t x = 0; x < q.size(); ++x)
        spread = std::max(spread, std::abs(cost.cost[x] - cost.budget));
    if (spread == 0.0) return {eg0(rho, q, w), 0.0}; // tilt has no effect
    const double r_cap = 650.0 / spread;

    double r_hi = 1.0;
    while (r_hi < r_cap && phi(std::min(2.0 * r_hi, r_cap)) > phi(r_hi)) r_hi *= 2.0;
    r_hi = std::min(2.0 * r_hi, r_cap);
    GoldenResult g = golden_max(phi, 0.0, r_hi);
    const double at_zero = eg0(rho, q, w);
    if (at_zero >= g.value) return {at_zero, 0.0};
    return {g.value, g.x};
}

// ---------------------------------------------------------------------------
// Dual form: inner minimization over output laws
// ---------------------------------------------------------------------------

DualMin eck0_dual(double rho, const ProbVec& q, const Dmc& w)
{
    check_rho(rho, "eck0_dual", /*strictly_positive=*/true);
    check_input_law(q, w, "eck0_dual");

    const std::size_t n = w.num_inputs(), m = w.num_outputs();
    const double s = rho / (1.0 + rho);
    const auto lk = log_kernel(rho, w);

    // Restrict the output law to outputs reachable under W with positive
    // input mass; elsewhere the optimal R is 0.
    std::vector<std::size_t> support;
    for (std::size_t y = 0; y < m; ++y) {
        double mass = 0.0;
        for (std::size_t x = 0; x < n; ++x) mass += q[x] * w(x, y);
        if (mass > 0.0) support.push_back(y);
    }
    if (support.empty()) throw std::invalid_argument("eck0_dual: channel has no reachable output");

    const std::size_t ms = support.size();
    std::vector<double> logR(ms, -std::log(static_cast<double>(ms)));

    // F(R) = -(1+rho) sum_x q(x) log sum_y A(x,y) R(y)^s  with A = W^{1/(1+rho)}.
    std::vector<double> logD(n);
    auto eval = [&](const std::vector<double>& lr, std::vector<double>& ld) {
        double val = 0.0;
        std::vector<double> terms(ms);
        for (std::size_t x = 0; x < n; ++x) {
            if (q[x] == 0.0) {
                ld[x] = kNegInf;
                continue;
            }
            for (std::size_t j = 0; j < ms; ++j) terms[j] = lk[x * m + support[j]] + s * lr[j];
            ld[x] = logsumexp(terms);
            val += q[x] * ld[x];
        }
        return -(1.0 + rho) * val;
    };

    double value = eval(logR, logD);
    DualMin out;
    out.converged = false;
    int iter = 0;
    const int cap = 100000;
    double gap = kInf;
    for (; iter < cap; ++iter) {
        // T(y) = sum_x q(x) A(x,y) / D(x); fixed point R* ∝ T^{1+rho}.
        std::vector<double> logT(ms, kNegInf);
        std::vector<double> terms(n);
        for (std::size_t j = 0; j < ms; ++j) {
            for (std::size_t x = 0; x < n; ++x)
                terms[x] = (q[x] > 0.0) ? std::log(q[x]) + lk[x * m + support[j]] - logD[x]
                                        : kNegInf;
            logT[j] = logsumexp(terms);
        }

        // Convexity certificate: F(R) - F(R*) <= <grad, R> - min_y grad(y).
        // grad(y) = -(1+rho) s R(y)^{s-1} T(y).
        double inner = 0.0, min_grad = kInf;
        for (std::size_t j = 0; j < ms; ++j) {
            const double grad = -(1.0 + rho) * s * std::exp((s - 1.0) * logR[j] + logT[j]);
            inner += std::exp(logR[j]) * grad;
            min_grad = std::min(min_grad, grad);
        }
        gap = inner - min_grad;
        if (gap <= 1e-10 * std::max(1.0, std::abs(value))) {
            out.converged = true;
            break;
        }

        // Damped fixed-point step in log space, kept monotone.
        std::vector<double> logR_fp(ms);
        for (std::size_t j = 0; j < ms; ++j) logR_fp[j] = (1.0 + rho) * logT[j];
        const double z = logsumexp(logR_fp);
        for (std::size_t j = 0; j < ms; ++j) logR_fp[j] -= z;

        double tau = 1.0;
        bool moved = false;
        std::vector<double> cand(ms), candD(n);
        for (int halving = 0; halving < 45; ++halving) {
            for (std::size_t j = 0; j < ms; ++j)
                cand[j] = (1.0 - tau) * logR[j] + tau * logR_fp[j];
            const double cz = logsumexp(cand);
            for (std::size_t j = 0; j < ms; ++j) cand[j] -= cz;
            const double cval = eval(cand, candD);
            if (cval <= value) {
                logR.swap(cand);
                logD.swap(candD);
                const double improvement = value - cval;
                value = cval;
                moved = true;
                if (improvement < 1e-15 * std::max(1.0, std::abs(value)) && gap < 1e-8) iter = cap;
                break;
            }
            tau *= 0.5;
        }
        if (!moved) break; // no descent direction left at double precision
    }

    std::vector<double> r_weights(m, 0.0);
    for (std::size_t j = 0; j < ms; ++j) r_weights[support[j]] = std::exp(logR[j]);
    double sum = std::accumulate(r_weights.begin(), r_weights.end(), 0.0);
    for (double& v : r_weights) v /= sum;

    out.value = value;
    out.minimizer = ProbVec(std::move(r_weights));
    out.iterations = std::min(iter, cap);
    out.certificate_gap = gap;
    if (!out.converged && gap <= 1e-9 * std::max(1.0, std::abs(value))) out.converged = true;
    return out;
}

double eck0_primal_oracle(double rho, const ProbVec& q, const Dmc& w, int starts,
                          std::uint64_t seed)
{
    check_rho(rho, "eck0_primal_oracle", true);
    check_input_law(q, w, "eck0_primal_oracle");
    const std::size_t n = w.num_inputs(), m = w.num_outputs();
    if (n * m > 64)
        throw std::invalid_argument("eck0_primal_oracle: alphabet product exceeds the 64 cap");

    const double floor_v = 1e-300;

    // Objective G(V) = D(V||W|Q) + rho I(Q,V); rows of V live on the support
    // of the corresponding W row.
    auto objective = [&](const std::vector<double>& v) {
        std::vector<double> pv(m, 0.0);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < m; ++y) pv[y] += q[x] * v[x * m + y];
        double g = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            if (q[x] == 0.0) continue;
            for (std::size_t y = 0; y < m; ++y) {
                const double vv = v[x * m + y];
                if (vv <= 0.0) continue;
                g += q[x] * vv * (std::log(vv / w(x, y)) + rho * std::log(vv / pv[y]));
            }
        }
        return g;
    };

    auto gradient = [&](const std::vector<double>& v, std::vector<double>& grad) {
        std::vector<double> pv(m, 0.0);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < m; ++y) pv[y] += q[x] * v[x * m + y];
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = 0; y < m; ++y) {
                if (w(x, y) == 0.0 || q[x] == 0.0) {
                    grad[x * m + y] = 0.0;
                    continue;
                }
                const double vv = std::max(v[x * m + y], floor_v);
                const double pvy = std::max(pv[y], floor_v);
                grad[x * m + y] =
                    q[x] * (std::log(vv / w(x, y)) + 1.0 + rho * std::log(vv / pvy));
            }
        }
    };

    // Projection of each row onto the simplex over the W-support.
    auto project_rows = [&](std::vector<double>& v) {
        std::vector<double> row;
        for (std::size_t x = 0; x < n; ++x) {
            row.clear();
            std::vector<std::size_t> idx;
            for (std::size_t y = 0; y < m; ++y)
                if (w(x, y) > 0.0) {
                    idx.push_back(y);
                    row.push_back(v[x * m + y]);
                }
            project_simplex(row);
            for (std::size_t y = 0; y < m; ++y) v[x * m + y] = 0.0;
            for (std::size_t j = 0; j < idx.size(); ++j) v[x * m + idx[j]] = row[j];
        }
    };

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double best = kInf;
    const std::size_t nm = n * m;

    for (int start = 0; start <= starts; ++start) {
        std::vector<double> v(nm, 0.0);
        if (start == 0) {
            v = w.flat(); // V = W is always feasible
        } else {
            for (std::size_t x = 0; x < n; ++x) {
                double sum = 0.0;
                for (std::size_t y = 0; y < m; ++y) {
                    if (w(x, y) > 0.0) {
                        v[x * m + y] = -std::log(std::max(unif(rng), 1e-12));
                        sum += v[x * m + y];
                    }
                }
                for (std::size_t y = 0; y < m; ++y) v[x * m + y] /= sum;
            }
        }

        double g = objective(v);
        std::vector<double> grad(nm), cand(nm);
        double step = 1.0;
        for (int iter = 0; iter < 20000; ++iter) {
            gradient(v, grad);
            bool accepted = false;
            for (int bt = 0; bt < 60; ++bt) {
                for (std::size_t i = 0; i < nm; ++i) cand[i] = v[i] - step * grad[i];
                project_rows(cand);
                const double gc = objective(cand);
                double lin = 0.0, sq = 0.0;
                for (std::size_t i = 0; i < nm; ++i) {
                    const double d = cand[i] - v[i];
                    lin += grad[i] * d;
                    sq += d * d;
                }
                if (gc <= g + lin + 0.5 * sq / step + 1e-15) {
                    const double delta = g - gc;
                    v.swap(cand);
                    g = gc;
                    accepted = true;
                    if (delta < 1e-14 && sq < 1e-20) iter = 20000;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) break;
            step = std::min(step * 1.5, 1e3);
        }
        best = std::min(best, g);
    }
    return best;
}

double dual_upper_bound(double rho, const ProbVec& r_out, const Dmc& w)
{
    CostSpec no_cost{std::vector<double>(w.num_inputs(), 0.0), 0.0};
    return dual_upper_bound(rho, r_out, w, no_cost, 0.0);
}

double dual_upper_bound(double rho, const ProbVec& r_out, const Dmc& w, const CostSpec& cost,
                        double tilt_r)
{
    check_rho(rho, "dual_upper_bound");
    cost.validate(w.num_inputs());
    if (r_out.size() != w.num_outputs())
        throw std::invalid_argument("dual_upper_bound: output law size mismatch");
    if (!(tilt_r >= 0.0)) throw std::invalid_argument("dual_upper_bound: tilt must be >= 0");

    const std::size_t n = w.num_inputs(), m = w.num_outputs();
    const double s = rho / (1.0 + rho);
    const auto lk = log_kernel(rho, w);
    double best = kNegInf;
    std::vector<double> terms;
    for (std::size_t x = 0; x < n; ++x) {
        terms.clear();
        for (std::size_t y = 0; y < m; ++y) {
            if (r_out[y] > 0.0 && w(x, y) > 0.0)
                terms.push_back(lk[x * m + y] + s * std::log(r_out[y]));
        }
        const double tilt = tilt_r * (cost.cost[x] - cost.budget);
        const double inner = terms.empty() ? kNegInf : logsumexp(terms);
        // First index wins ties (strict > keeps the earliest maximizer).
        const double h = -(1.0 + rho) * (tilt + inner);
        if (h > best) best = h;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Alternating maximization over the input law
// ---------------------------------------------------------------------------

namespace {

struct AscentState {
    std::vector<double> logq;
    double primal = kNegInf;
    double gap = kInf;
    int iterations = 0;
};

// Unconstrained Arimoto ascent: Q' ∝ Q c(x)^{-1/rho},
// c(x) = sum_y A(x,y) alpha(y)^rho.  Monotone by the majorize-minimize
// construction; the duality gap (1+rho)(log S - min_x log c) certifies global
// optimality at convergence.
AscentState maximize_unconstrained(double rho, const Dmc& w, int max_iter)
{
    const std::size_t n = w.num_inputs(), m = w.num_outputs();
    const auto lk = log_kernel(rho, w);
    const std::vector<double> no_tilt(n, 0.0);

    AscentState st;
    st.logq.assign(n, -std::log(static_cast<double>(n)));

    std::vector<double> logc(n);
    double prev = kNegInf;
    for (int iter = 0; iter < max_iter; ++iter) {
        st.iterations = iter + 1;
        const auto la = log_alpha(st.logq, no_tilt, lk, n, m);
        std::vector<double> scaled(m);
        for (std::size_t y = 0; y < m; ++y) scaled[y] = (1.0 + rho) * la[y];
        const double logS = logsumexp(scaled);
        st.primal = -logS;

        double min_logc = kInf;
        std::vector<double> terms;
        for (std::size_t x = 0; x < n; ++x) {
            terms.clear();
            for (std::size_t y = 0; y < m; ++y)
                if (lk[x * m + y] != kNegInf) terms.push_back(lk[x * m + y] + rho * la[y]);
            logc[x] = terms.empty() ? kInf : logsumexp(terms);
            min_logc = std::min(min_logc, logc[x]);
        }
        st.gap = (1.0 + rho) * (logS - min_logc);

        const bool value_settled = std::abs(st.primal - prev) < 1e-12;
        if (st.gap < 1e-8 && value_settled) break;
        prev = st.primal;

        for (std::size_t x = 0; x < n; ++x)
            st.logq[x] = std::max(st.logq[x] - logc[x] / rho, kLogFloor);
        const double z = logsumexp(st.logq);
        for (std::size_t x = 0; x < n; ++x) st.logq[x] -= z;
    }
    return st;
}

// Constrained inner step: minimize the separable majorizer
//   sum_x Q(x)^{1+rho} b(x)   s.t.  sum Q = 1, sum Q g = budget, Q >= 0
// whose KKT solution is Q(x) = (max(0, lambda + nu g(x)) / ((1+rho) b(x)))^{1/rho}.
class MajorizerSolver {
  public:
    MajorizerSolver(double rho, std::vector<double> logb, const std::vector<double>& g,
                    double budget)
        : rho_(rho), logb_(std::move(logb)), g_(g), budget_(budget)
    {}

    // Returns log Q.
    std::vector<double> solve() const
    {
        double lo = -1.0, hi = 1.0;
        const int growth_cap = 200;
        double f_lo = cost_residual(lo), f_hi = cost_residual(hi);
        int guard = 0;
        while (f_lo > 0.0 && guard++ < growth_cap) {
            lo *= 2.0;
            f_lo = cost_residual(lo);
        }
        guard = 0;
        while (f_hi < 0.0 && guard++ < growth_cap) {
            hi *= 2.0;
            f_hi = cost_residual(hi);
        }
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (cost_residual(mid) >= 0.0)
                hi = mid;
            else
                lo = mid;
        }
        return log_q_for(0.5 * (lo + hi));
    }

  private:
    // log Q(x) at multipliers (lambda(nu), nu), where lambda(nu) normalizes.
    std::vector<double> log_q_for(double nu) const
    {
        const double lambda = solve_lambda(nu);
        std::vector<double> lq(g_.size(), kNegInf);
        for (std::size_t x = 0; x < g_.size(); ++x) {
            const double num = lambda + nu * g_[x];
            if (num > 0.0) lq[x] = (std::log(num) - std::log1p(rho_) - logb_[x]) / rho_;
        }
        const double z = logsumexp(lq);
        for (double& v : lq) v -= z;
        return lq;
    }

    double cost_residual(double nu) const
    {
        const auto lq = log_q_for(nu);
        double eg = 0.0;
        for (std::size_t x = 0; x < g_.size(); ++x) eg += std::exp(lq[x]) * g_[x];
        return eg - budget_;
    }

    // Unnormalized mass sum_x Q(x; lambda, nu) is strictly increasing in
    // lambda; bisect for mass 1.  Only the ratio matters downstream (log_q_for
    // renormalizes), but lambda fixes which entries clamp to zero.
    double solve_lambda(double nu) const
    {
        double lo = kInf;
        for (double g : g_) lo = std::min(lo, -nu * g);
        double width = 1.0;
        double hi = lo + width;
        while (mass(hi, nu) < 1.0 && width < 1e300) {
            width *= 4.0;
            hi = lo + width;
        }
        for (int i = 0; i < 300; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mass(mid, nu) >= 1.0)
                hi = mid;
            else
                lo = mid;
        }
        return 0.5 * (lo + hi);
    }

    double mass(double lambda, double nu) const
    {
        double s = 0.0;
        for (std::size_t x = 0; x < g_.size(); ++x) {
            const double num = lambda + nu * g_[x];
            if (num > 0.0) s += std::exp((std::log(num) - std::log1p(rho_) - logb_[x]) / rho_);
        }
        return s;
    }

    double rho_;
    std::vector<double> logb_;
    const std::vector<double>& g_;
    double budget_;
};

// Maximizes E0(rho, Q, r) over {Q : E_Q[g] = budget} for fixed tilt r by
// majorize-minimize steps that respect the cost hyperplane.
AscentState maximize_constrained_fixed_r(double rho, const Dmc& w, const CostSpec& cost, double r,
                                         std::vector<double> logq_init, int max_iter)
{
    const std::size_t n = w.num_inputs(), m = w.num_outputs();
    const auto lk = log_kernel(rho, w);
    std::vector<double> tilt(n);
    for (std::size_t x = 0; x < n; ++x) tilt[x] = r * (cost.cost[x] - cost.budget);

    AscentState st;
    st.logq = std::move(logq_init);

    double prev = kNegInf;
    for (int iter = 0; iter < max_iter; ++iter) {
        st.iterations = iter + 1;
        const auto la = log_alpha(st.logq, tilt, lk, n, m);
        std::vector<double> scaled(m);
        for (std::size_t y = 0; y < m; ++y) scaled[y] = (1.0 + rho) * la[y];
        const double logS = logsumexp(scaled);
        st.primal = -logS;

        std::vector<double> logc(n);
        double min_logc = kInf;
        std::vector<double> terms;
        for (std::size_t x = 0; x < n; ++x) {
            terms.clear();
            for (std::size_t y = 0; y < m; ++y)
                if (lk[x * m + y] != kNegInf) terms.push_back(lk[x * m + y] + rho * la[y]);
            logc[x] = (terms.empty() ? kInf : logsumexp(terms)) + tilt[x];
            min_logc = std::min(min_logc, logc[x]);
        }
        st.gap = (1.0 + rho) * (logS - min_logc);

        if (std::abs(st.primal - prev) < 1e-14 && iter > 2) break;
        prev = st.primal;

        // b(x) = Q(x)^{-rho} c(x)
        std::vector<double> logb(n);
        for (std::size_t x = 0; x < n; ++x)
            logb[x] = -rho * std::max(st.logq[x], kLogFloor) + logc[x];
        MajorizerSolver solver(rho, std::move(logb), cost.cost, cost.budget);
        st.logq = solver.solve();
    }
    return st;
}

// Normalized tilt-stationarity residual sum_x Q(x)(g(x)-budget) c(x) / sum_x Q(x) c(x),
// where c(x) = e^{r(g(x)-budget)} sum_y A(x,y) alpha(y)^rho.  Proportional to
// -dE0/dr, so it crosses zero from below at the optimal tilt.
double tilt_residual(double rho, const Dmc& w, const CostSpec& cost, double r,
                     const std::vector<double>& logq)
{
    const std::size_t n = w.num_inputs(), m = w.num_outputs();
    const auto lk = log_kernel(rho, w);
    std::vector<double> tilt(n);
    for (std::size_t x = 0; x < n; ++x) tilt[x] = r * (cost.cost[x] - cost.budget);
    const auto la = log_alpha(logq, tilt, lk, n, m);

    double num = 0.0, den = 0.0;
    std::vector<double> terms;
    for (std::size_t x = 0; x < n; ++x) {
        terms.clear();
        for (std::size_t y = 0; y < m; ++y)
            if (lk[x * m + y] != kNegInf) terms.push_back(lk[x * m + y] + rho * la[y]);
        if (terms.empty()) continue;
        const double cx = std::exp(logsumexp(terms) + tilt[x] + std::max(logq[x], kLogFloor));
        num += (cost.cost[x] - cost.budget) * cx;
        den += cx;
    }
    return den > 0.0 ? num / den : 0.0;
}

std::vector<double> feasible_start(const Dmc& w, const CostSpec& cost)
{
    const std::size_t n = w.num_inputs();
    const double gmin = cost.min_cost(), gmax = cost.max_cost();
    if (cost.budget < gmin - 1e-12 || cost.budget > gmax + 1e-12)
        throw std::invalid_argument(
            "optimize_e0: no input law meets the cost budget with equality");
    ProbVec uni = ProbVec::uniform(n);
    const double mu = cost.expected_cost(uni);
    std::vector<double> q(uni.weights());
    if (std::abs(mu - cost.budget) > 1e-15) {
        // Mix with the extreme-cost vertex that moves the mean to the budget.
        const bool up = cost.budget > mu;
        std::size_t vertex = 0;
        double extreme = up ? gmin : gmax;
        for (std::size_t x = 0; x < n; ++x) {
            const double g = cost.cost[x];
            if ((up && g > extreme) || (!up && g < extreme)) {
                extreme = g;
                vertex = x;
            }
        }
        const double t = (cost.budget - mu) / (extreme - mu);
        for (std::size_t x = 0; x < n; ++x) q[x] *= (1.0 - t);
        q[vertex] += t;
    }
    std::vector<double> lq(n);
    for (std::size_t x = 0; x < n; ++x) lq[x] = q[x] > 0.0 ? std::log(q[x]) : kLogFloor;
    return lq;
}

} // namespace

E0Result optimize_e0(double rho, const Dmc& w)
{
    check_rho(rho, "optimize_e0");
    const std::size_t n = w.num_inputs();
    if (rho == 0.0) {
        E0Result res;
        res.value = 0.0;
        res.optimizing_input = ProbVec::uniform(n);
        res.optimizing_output = ProbVec::uniform(w.num_outputs());
        res.converged = true;
        return res;
    }

    AscentState st = maximize_unconstrained(rho, w, 100000);

    E0Result res;
    res.value = st.primal;
    res.optimizing_input = from_log(st.logq);
    res.tilt_r = 0.0;
    res.iterations = st.iterations;
    res.duality_gap = st.gap;
    res.converged = st.gap < 1e-8;

    // R*(y) ∝ alpha(y)^{1+rho}.
    const auto lk = log_kernel(rho, w);
    const std::vector<double> no_tilt(n, 0.0);
    const auto la = log_alpha(st.logq, no_tilt, lk, n, w.num_outputs());
    std::vector<double> lr(w.num_outputs());
    for (std::size_t y = 0; y < w.num_outputs(); ++y) lr[y] = (1.0 + rho) * la[y];
    res.optimizing_output = from_log(std::move(lr));
    return res;
}

E0Result optimize_e0(double rho, const Dmc& w, const CostSpec& cost)
{
    check_rho(rho, "optimize_e0");
    cost.validate(w.num_inputs());

    // Case split: solve unconstrained first; if its optimizer meets the
    // budget the constraint is inactive.
    E0Result unconstrained = optimize_e0(rho, w);
    if (rho == 0.0) return unconstrained;
    if (cost.expected_cost(unconstrained.optimizing_input) <= cost.budget + 1e-9)
        return unconstrained;

    const std::size_t n = w.num_inputs(), m = w.num_outputs();

    double spread = 0.0;
    for (double g : cost.cost) spread = std::max(spread, std::abs(g - cost.budget));
    const double r_cap = (spread > 0.0) ? 650.0 / spread : 0.0;

    std::vector<double> warm = feasible_start(w, cost);
    const int inner_iters = 4000;

    auto value_at = [&](double r) {
        AscentState st = maximize_constrained_fixed_r(rho, w, cost, r, warm, inner_iters);
        warm = st.logq; // warm-start the next evaluation
        return st;
    };

    // Bracket the tilt by doubling, then refine by golden section.
    double best_r = 0.0;
    AscentState best_state = value_at(0.0);
    if (r_cap > 0.0) {
        double r_prev = 0.0, v_prev = best_state.primal;
        double r_cur = std::min(0.125, r_cap);
        while (true) {
            AscentState st = value_at(r_cur);
            if (st.primal > best_state.primal) {
                best_state = st;
                best_r = r_cur;
            }
            if (st.primal < v_prev || r_cur >= r_cap) break;
            v_prev = st.primal;
            r_prev = r_cur;
            r_cur = std::min(2.0 * r_cur, r_cap);
        }
        (void)r_prev;
        const double lo = std::max(0.0, best_r * 0.25);
        const double hi = std::min(r_cap, std::max(best_r * 4.0, 0.25));
        GoldenResult g = golden_max(
            [&](double r) { return value_at(r).primal; }, lo, hi, 90);
        if (g.value > best_state.primal) {
            best_state = value_at(g.x);
            best_r = g.x;
        }

        // The certificate gap is linear in |r - r*| while the objective is
        // quadratically flat, so polish the tilt by a sign change of the
        // stationarity residual rather than by value comparisons.
        auto residual_at = [&](double r) {
            AscentState st = maximize_constrained_fixed_r(rho, w, cost, r, warm, inner_iters);
            warm = st.logq;
            return tilt_residual(rho, w, cost, r, st.logq);
        };
        double ra = best_r, rb = best_r;
        if (residual_at(ra) < 0.0) {
            rb = std::min(r_cap, std::max(2.0 * ra, 0.125));
            int guard = 0;
            while (residual_at(rb) < 0.0 && rb < r_cap && guard++ < 60)
                rb = std::min(r_cap, 2.0 * rb);
        } else {
            int guard = 0;
            while (ra > 1e-14 && residual_at(0.5 * ra) > 0.0 && guard++ < 60) ra *= 0.5;
            ra = (guard > 60 || ra <= 1e-14) ? 0.0 : 0.5 * ra;
            if (ra == 0.0 && residual_at(0.0) >= 0.0) rb = 0.0; // optimum at the boundary
        }
        if (ra < rb) {
            for (int i = 0; i < 80; ++i) {
                const double mid = 0.5 * (ra + rb);
                if (residual_at(mid) >= 0.0)
                    rb = mid;
                else
                    ra = mid;
            }
        }
        {
            const double r_refined = 0.5 * (ra + rb);
            AscentState st =
                maximize_constrained_fixed_r(rho, w, cost, r_refined, warm, inner_iters);
            warm = st.logq;
            if (st.primal >= best_state.primal - 1e-10) {
                best_state = st;
                best_r = r_refined;
            }
        }
    }

    // Final polish at the chosen tilt with a tighter iteration budget.
    AscentState final_state =
        maximize_constrained_fixed_r(rho, w, cost, best_r, best_state.logq, 40000);

    E0Result res;
    res.value = final_state.primal;
    res.optimizing_input = from_log(final_state.logq);
    res.tilt_r = best_r;
    res.iterations = final_state.iterations;
    res.duality_gap = final_state.gap;
    res.converged = final_state.gap < 1e-8;

    const auto lk = log_kernel(rho, w);
    std::vector<double> tilt(n);
    for (std::size_t x = 0; x < n; ++x) tilt[x] = best_r * (cost.cost[x] - cost.budget);
    const auto la = log_alpha(final_state.logq, tilt, lk, n, m);
    std::vector<double> lr(m);
    for (std::size_t y = 0; y < m; ++y) lr[y] = (1.0 + rho) * la[y];
    res.optimizing_output = from_log(std::move(lr));
    return res;
}

double cutoff_rate(const Dmc& w)
{
    return optimize_e0(1.0, w).value;
}

double cutoff_rate(const Dmc& w, const CostSpec& cost)
{
    return optimize_e0(1.0, w, cost).value;
}

double random_coding_exponent(double rate, const Dmc& w, const std::optional<CostSpec>& cost)
{
    if (!(rate >= 0.0)) throw std::invalid_argument("random_coding_exponent: rate must be >= 0");
    auto e0 = [&](double rho) {
        return cost ? optimize_e0(rho, w, *cost).value : optimize_e0(rho, w).value;
    };
    auto objective = [&](double rho) { return e0(rho) - rho * rate; };
    GoldenResult g = golden_max(objective, 0.0, 1.0, 80);
    double best = std::max(0.0, g.value); // rho = 0 always yields 0
    best = std::max(best, objective(1.0));
    return best;
}

SpherePackingResult sphere_packing_exponent(double rate, const Dmc& w)
{
    if (!(rate > 0.0)) throw std::invalid_argument("sphere_packing_exponent: rate must be > 0");
    auto objective = [&](double rho) { return optimize_e0(rho, w).value - rho * rate; };

    constexpr double rho_cap = 1048576.0; // 2^20
    double prev = 0.0; // objective at rho = 0
    double rho = 1.0;
    double best = 0.0;
    while (rho <= rho_cap) {
        const double v = objective(rho);
        best = std::max(best, v);
        if (v < prev) break; // bracketed: maximum lies below this rho
        prev = v;
        rho *= 2.0;
    }
    if (rho > rho_cap) {
        // Still strictly increasing at the cap: treat as divergent.
        return {kInf, true};
    }
    const double lo = rho / 4.0 >= 1.0 ? rho / 4.0 : 0.0;
    GoldenResult g = golden_max(objective, lo, rho, 90);
    best = std::max(best, g.value);
    return {std::max(best, 0.0), false};
}

// ---------------------------------------------------------------------------
// Duality verification
// ---------------------------------------------------------------------------

namespace {

// Maximizes the concave map Q -> E_CK,0(rho, Q) by entropic mirror ascent on
// supergradients from the inner minimization, with a Frank-Wolfe style
// certificate: for any output law R, max_Q E_CK,0 <= max_x h_R(x).
struct CkMaxResult {
    double value = 0.0;
    double certificate = 0.0;
};

CkMaxResult maximize_eck0(double rho, const Dmc& w, double target_gap, int max_iter)
{
    const std::size_t n = w.num_inputs(), m = w.num_outputs();
    const double s = rho / (1.0 + rho);
    const auto lk = log_kernel(rho, w);

    std::vector<double> logq(n, -std::log(static_cast<double>(n)));
    double eta = 1.0 / (rho * (1.0 + rho));
    eta = std::clamp(eta, 1e-3, 10.0);

    double lb = kNegInf, ub = kInf;
    auto f_of = [&](const std::vector<double>& lq) {
        return eck0_dual(rho, from_log(lq), w);
    };

    DualMin cur = f_of(logq);
    lb = cur.value;
    std::vector<double> h(n);
    for (int iter = 0; iter < max_iter; ++iter) {
        // Supergradient h(x) = -(1+rho) log sum_y A(x,y) R(y)^{s}.
        std::vector<double> terms;
        for (std::size_t x = 0; x < n; ++x) {
            terms.clear();
            for (std::size_t y = 0; y < m; ++y)
                if (cur.minimizer[y] > 0.0 && lk[x * m + y] != kNegInf)
                    terms.push_back(lk[x * m + y] + s * std::log(cur.minimizer[y]));
            h[x] = -(1.0 + rho) * (terms.empty() ? kNegInf : logsumexp(terms));
        }
        ub = std::min(ub, *std::max_element(h.begin(), h.end()));
        if (ub - lb <= target_gap) break;

        bool improved = false;
        for (int bt = 0; bt < 25; ++bt) {
            std::vector<double> cand(n);
            for (std::size_t x = 0; x < n; ++x) cand[x] = logq[x] + eta * h[x];
            const double z = logsumexp(cand);
            for (std::size_t x = 0; x < n; ++x) cand[x] = std::max(cand[x] - z, kLogFloor);
            DualMin next = f_of(cand);
            if (next.value >= lb - 1e-13) {
                logq.swap(cand);
                cur = std::move(next);
                lb = std::max(lb, cur.value);
                improved = true;
                eta = std::min(eta * 1.25, 50.0);
                break;
            }
            eta *= 0.5;
        }
        if (!improved) break;
    }
    return {lb, ub - lb};
}

} // namespace

DualityReport verify_lagrange_duality(std::size_t num_inputs, std::size_t num_outputs, double rho,
                                      int trials, std::uint64_t seed)
{
    check_rho(rho, "verify_lagrange_duality", true);
    if (trials < 1) throw std::invalid_argument("verify_lagrange_duality: trials must be >= 1");
    if (num_inputs < 2 || num_outputs < 2)
        throw std::invalid_argument("verify_lagrange_duality: alphabets must have size >= 2");

    DualityReport report;
    report.num_inputs = num_inputs;
    report.num_outputs = num_outputs;
    report.seed = seed;
    report.max_gap = 0.0;
    report.min_pointwise_margin = kInf;

    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        Dmc w = Dmc::random_channel(num_inputs, num_outputs, rng);

        DualityTrial trial;
        trial.rho = rho;
        trial.primal_value = optimize_e0(rho, w).value;
        CkMaxResult ck = maximize_eck0(rho, w, 1e-7, 4000);
        trial.dual_value = ck.value;
        trial.dual_certificate = ck.certificate;
        trial.gap = std::abs(trial.primal_value - trial.dual_value);

        // Pointwise E_CK,0 >= E_G,0 on random input laws.
        trial.jazz_margin = kInf;
        for (int probe = 0; probe < 3; ++probe) {
            std::vector<double> raw(num_inputs);
            for (double& v : raw) {
                double u;
                do {
                    u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                } while (u <= 0.0);
                v = -std::log(u);
            }
            ProbVec q = ProbVec::normalized(std::move(raw));
            const double margin = eck0_dual(rho, q, w).value - eg0(rho, q, w);
            trial.jazz_margin = std::min(trial.jazz_margin, margin);
        }

        report.max_gap = std::max(report.max_gap, trial.gap);
        report.min_pointwise_margin = std::min(report.min_pointwise_margin, trial.jazz_margin);
        report.trials.push_back(trial);
    }
    return report;
}

} // namespace cutoff::dmc
