#ifndef CUTOFF_DMC_HPP
#define CUTOFF_DMC_HPP

// Exponent computations for finite discrete memoryless channels: the
// random-coding exponent function E0 in its primal (input-law) and dual
// (output-law) forms, with and without an input cost constraint, plus the
// derived random-coding / sphere-packing exponents and the cut-off rate.

#include "cutoff/prob.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace cutoff::dmc {

// Row-stochastic transition matrix W(y|x) over finite alphabets.
class Dmc {
  public:
    Dmc(std::size_t num_inputs, std::size_t num_outputs, std::vector<double> transition);

    static Dmc from_rows(const std::vector<std::vector<double>>& rows);
    static Dmc bsc(double crossover);
    static Dmc noiseless_binary();
    // Rows drawn uniformly from the simplex (flat Dirichlet); deterministic
    // for a fixed generator state.
    template <class Rng> static Dmc random_channel(std::size_t n, std::size_t m, Rng& rng);

    std::size_t num_inputs() const noexcept { return n_; }
    std::size_t num_outputs() const noexcept { return m_; }
    double operator()(std::size_t x, std::size_t y) const noexcept { return w_[x * m_ + y]; }
    const std::vector<double>& flat() const noexcept { return w_; }

  private:
    std::size_t n_ = 0, m_ = 0;
    std::vector<double> w_;
};

// Per-input cost g(x) >= 0 with budget Upsilon >= 0.
struct CostSpec {
    std::vector<double> cost;
    double budget = 0.0;

    void validate(std::size_t num_inputs) const;
    double expected_cost(const ProbVec& q) const;
    double min_cost() const;
    double max_cost() const;
};

// Conditional law V(y|x) used by the primal oracle.
struct ConditionalLaw {
    std::size_t num_inputs = 0, num_outputs = 0;
    std::vector<double> v; // row-major, rows stochastic

    void validate() const;
    double operator()(std::size_t x, std::size_t y) const noexcept
    {
        return v[x * num_outputs + y];
    }
};

struct E0Result {
    double value = 0.0;          // nats
    ProbVec optimizing_input;    // Q*
    ProbVec optimizing_output;   // R* induced by Q* (and r*)
    double tilt_r = 0.0;         // 0 when the cost constraint is absent/inactive
    int iterations = 0;
    bool converged = false;
    double duality_gap = 0.0;    // dual upper bound minus primal value
};

// E_{G,0}(rho, Q): the basic exponent sum.
double eg0(double rho, const ProbVec& q, const Dmc& w);

// Cost-tilted exponent E_0(rho, Q, r) with weight e^{r (g(x) - budget)}.
double e0_tilted(double rho, const ProbVec& q, double r, const Dmc& w, const CostSpec& cost);

struct TiltedMax {
    double value = 0.0;
    double r = 0.0;
};

// sup_{r >= 0} E_0(rho, Q, r) when the cost constraint is met with equality;
// plain eg0 when it is strictly slack.  Requires E_Q[g] <= budget.
TiltedMax eg0_modified(double rho, const ProbVec& q, const Dmc& w, const CostSpec& cost);

struct DualMin {
    double value = 0.0;          // E_{CK,0}(rho, Q)
    ProbVec minimizer;           // optimal output law R
    int iterations = 0;
    bool converged = false;
    double certificate_gap = 0.0; // convexity gap bound at the returned R
};

// E_{CK,0}(rho, Q): inner convex minimization over output laws.  rho > 0.
DualMin eck0_dual(double rho, const ProbVec& q, const Dmc& w);

// Independent route to E_{CK,0} through the conditional-law form
// min_V { D(V||W|Q) + rho I(Q,V) }, solved by projected descent from
// `starts` random starts (plus V = W).  Restricted to N*M <= 64.
double eck0_primal_oracle(double rho, const ProbVec& q, const Dmc& w, int starts = 32,
                          std::uint64_t seed = 1);

// max_x { -(1+rho) log sum_y W(y|x)^{1/(1+rho)} R(y)^{rho/(1+rho)} }: an upper
// bound on E0(rho) for every output law R.  The tilted overload additionally
// weights by e^{tilt_r (g(x)-budget)} and upper-bounds the cost-constrained
// E0(rho, budget) for every R and every tilt_r >= 0.
double dual_upper_bound(double rho, const ProbVec& r_out, const Dmc& w);
double dual_upper_bound(double rho, const ProbVec& r_out, const Dmc& w, const CostSpec& cost,
                        double tilt_r);

// max_Q E0 (alternating maximization, duality-gap certified).  The
// cost-constrained overload implements the active/inactive case split.
E0Result optimize_e0(double rho, const Dmc& w);
E0Result optimize_e0(double rho, const Dmc& w, const CostSpec& cost);

double cutoff_rate(const Dmc& w);
double cutoff_rate(const Dmc& w, const CostSpec& cost);

// E_r(R) = max_{0<=rho<=1} { E0(rho) - rho R }.
double random_coding_exponent(double rate, const Dmc& w,
                              const std::optional<CostSpec>& cost = std::nullopt);

struct SpherePackingResult {
    double value = 0.0;
    bool infinite = false;
};

// E_sp(R) = max_{rho>=0} { E0(rho) - rho R }, with divergence detection.
SpherePackingResult sphere_packing_exponent(double rate, const Dmc& w);

struct DualityTrial {
    double rho = 0.0;
    double primal_value = 0.0;     // max_Q E_{G,0}
    double dual_value = 0.0;       // max_Q E_{CK,0}
    double dual_certificate = 0.0; // residual of the dual maximization
    double gap = 0.0;              // |primal - dual|
    double jazz_margin = 0.0;      // min over spot checks of E_CK,0(Q) - E_G,0(Q)
};

struct DualityReport {
    std::size_t num_inputs = 0, num_outputs = 0;
    std::uint64_t seed = 0;
    std::vector<DualityTrial> trials;
    double max_gap = 0.0;
    double min_pointwise_margin = 0.0;
};

// For `trials` random channels, maximizes both E0 forms over the input law by
// independent routes and reports the gaps, plus pointwise
// E_CK,0 >= E_G,0 spot checks on random input laws.
DualityReport verify_lagrange_duality(std::size_t num_inputs, std::size_t num_outputs, double rho,
                                      int trials, std::uint64_t seed);

template <class Rng> Dmc Dmc::random_channel(std::size_t n, std::size_t m, Rng& rng)
{
    std::vector<double> rows(n * m);
    for (std::size_t x = 0; x < n; ++x) {
        double sum = 0.0;
        for (std::size_t y = 0; y < m; ++y) {
            // Exponential(1) draws normalize to a flat Dirichlet row.
            double u = 0.0;
            do {
                u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            } while (u <= 0.0);
            rows[x * m + y] = -std::log(u);
            sum += rows[x * m + y];
        }
        for (std::size_t y = 0; y < m; ++y) rows[x * m + y] /= sum;
    }
    return Dmc(n, m, std::move(rows));
}

} // namespace cutoff::dmc

#endif
