#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cutoff/channel_io.hpp"
#include "cutoff/dmc.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

using namespace cutoff;
using namespace cutoff::dmc;

namespace {

const double kLog2 = std::log(2.0);
// R0 of a BSC: log 2 - log(1 + 2 sqrt(p(1-p))).
double bsc_r0(double p)
{
    return kLog2 - std::log(1.0 + 2.0 * std::sqrt(p * (1.0 - p)));
}

} // namespace

TEST_CASE("eg0: zero at rho = 0, closed forms at rho = 1")
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 5; ++t) {
        Dmc w = Dmc::random_channel(3, 4, rng);
        ProbVec q(oracles::random_simplex_point(3, rng));
        CHECK(std::abs(eg0(0.0, q, w)) < 1e-12);
    }

    CHECK(eg0(1.0, ProbVec::uniform(2), Dmc::noiseless_binary()) ==
          doctest::Approx(kLog2).epsilon(1e-14));

    // Direct hand summation: -log(0.5 (1 + 2 sqrt(0.09))) = 0.22314355131420976.
    const double direct =
        oracles::direct_eg0(1.0, {0.5, 0.5}, Dmc::bsc(0.1));
    CHECK(direct == doctest::Approx(0.22314355131420976).epsilon(1e-14));
    CHECK(eg0(1.0, ProbVec::uniform(2), Dmc::bsc(0.1)) ==
          doctest::Approx(direct).epsilon(1e-13));

    CHECK_THROWS_AS(eg0(1.0, ProbVec::uniform(3), Dmc::bsc(0.1)), std::invalid_argument);
    CHECK_THROWS_AS(eg0(-0.5, ProbVec::uniform(2), Dmc::bsc(0.1)), std::invalid_argument);
}

TEST_CASE("e0_tilted: reduces to eg0 at r = 0; constant cost is tilt-free")
{
    std::mt19937_64 rng(23);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + t % 3, m = 2 + (t / 3) % 3;
        Dmc w = Dmc::random_channel(n, m, rng);
        ProbVec q(oracles::random_simplex_point(n, rng));
        const double rho = 0.1 + 0.15 * (t % 7);
        CostSpec cost{std::vector<double>(n, 1.0), 2.0};
        for (std::size_t x = 0; x < n; ++x) cost.cost[x] = 0.25 * (x + 1);
        CHECK(e0_tilted(rho, q, 0.0, w, cost) == doctest::Approx(eg0(rho, q, w)).epsilon(1e-14));
    }

    // g identically equal to the budget: the exponent weight vanishes.
    Dmc w = Dmc::bsc(0.1);
    CostSpec flat{{0.7, 0.7}, 0.7};
    ProbVec q({0.4, 0.6});
    const double base = e0_tilted(1.0, q, 0.0, w, flat);
    for (double r : {0.5, 1.0, 3.0})
        CHECK(e0_tilted(1.0, q, r, w, flat) == doctest::Approx(base).epsilon(1e-14));

    // Independent direct-summation oracle.
    CostSpec cost{{0.0, 1.0}, 0.5};
    const double direct = oracles::direct_e0_tilted(1.0, {0.5, 0.5}, 0.2, w, {0.0, 1.0}, 0.5);
    CHECK(e0_tilted(1.0, ProbVec::uniform(2), 0.2, w, cost) ==
          doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("eg0_modified: case split and tilt search")
{
    Dmc w = Dmc::bsc(0.1);

    // Inactive: huge budget.
    CostSpec slack{{0.0, 1.0}, 100.0};
    ProbVec q({0.3, 0.7});
    TiltedMax inactive = eg0_modified(1.0, q, w, slack);
    CHECK(inactive.value == doctest::Approx(eg0(1.0, q, w)).epsilon(1e-14));
    CHECK(inactive.r == 0.0);

    // Constant cost equal to the budget.
    CostSpec flat{{0.7, 0.7}, 0.7};
    TiltedMax constant = eg0_modified(1.0, q, w, flat);
    CHECK(constant.value == doctest::Approx(eg0(1.0, q, w)).epsilon(1e-14));

    // Active case against a grid + golden-section oracle.
    CostSpec cost{{0.0, 1.0}, 0.7};
    TiltedMax active = eg0_modified(1.0, q, w, cost);
    double best = -1.0, best_r = 0.0;
    for (double r = 0.0; r <= 5.0 + 1e-12; r += 0.01) {
        const double v = oracles::direct_e0_tilted(1.0, {0.3, 0.7}, r, w, {0.0, 1.0}, 0.7);
        if (v > best) {
            best = v;
            best_r = r;
        }
    }
    // Golden refinement of the oracle around the best grid point.
    {
        double a = std::max(0.0, best_r - 0.01), b = best_r + 0.01;
        for (int i = 0; i < 200; ++i) {
            const double x1 = b - 0.6180339887498949 * (b - a);
            const double x2 = a + 0.6180339887498949 * (b - a);
            const double f1 = oracles::direct_e0_tilted(1.0, {0.3, 0.7}, x1, w, {0.0, 1.0}, 0.7);
            const double f2 = oracles::direct_e0_tilted(1.0, {0.3, 0.7}, x2, w, {0.0, 1.0}, 0.7);
            if (f1 < f2)
                a = x1;
            else
                b = x2;
            best = std::max(best, std::max(f1, f2));
        }
    }
    CHECK(active.value == doctest::Approx(best).epsilon(1e-10));
    CHECK(active.value >= eg0(1.0, q, w) - 1e-12); // the modification only tightens

    // Violated precondition.
    CostSpec tight{{0.0, 1.0}, 0.2};
    CHECK_THROWS_AS(eg0_modified(1.0, q, w, tight), std::invalid_argument);
}

TEST_CASE("eck0_dual: closed forms and grid oracles")
{
    // Noiseless binary channel: symmetric, minimizer uniform, value log 2.
    DualMin noiseless = eck0_dual(1.0, ProbVec::uniform(2), Dmc::noiseless_binary());
    CHECK(noiseless.converged);
    CHECK(noiseless.value == doctest::Approx(kLog2).epsilon(1e-9));
    CHECK(noiseless.minimizer[0] == doctest::Approx(0.5).epsilon(1e-6));

    // BSC(0.1): at the (uniform) optimizing input law the dual form meets the
    // primal one.  Fine grid over R = (t, 1-t).
    Dmc w = Dmc::bsc(0.1);
    DualMin bsc = eck0_dual(1.0, ProbVec::uniform(2), w);
    CHECK(bsc.converged);
    double grid_min = 1e300;
    for (double t = 0.0; t <= 1.0 + 1e-12; t += 1e-4) {
        grid_min = std::min(grid_min,
                            oracles::direct_dual_objective(1.0, {0.5, 0.5}, w, {t, 1.0 - t}));
    }
    CHECK(bsc.value == doctest::Approx(grid_min).epsilon(1e-8));
    CHECK(bsc.value == doctest::Approx(0.22314355131420976).epsilon(1e-8));

    // Random 3x3 channel against a simplex grid with step 1e-3.
    std::mt19937_64 rng(5);
    Dmc w3 = Dmc::random_channel(3, 3, rng);
    ProbVec q3(oracles::random_simplex_point(3, rng));
    DualMin dual3 = eck0_dual(0.7, q3, w3);
    CHECK(dual3.converged);
    double grid3 = 1e300;
    const std::vector<double> qv = q3.weights();
    for (double a = 0.0; a <= 1.0 + 1e-12; a += 1e-3) {
        for (double b = 0.0; b <= 1.0 - a + 1e-12; b += 1e-3) {
            grid3 = std::min(grid3,
                             oracles::direct_dual_objective(0.7, qv, w3, {a, b, 1.0 - a - b}));
        }
    }
    CHECK(dual3.value <= grid3 + 1e-9);            // true min is below any grid value
    CHECK(dual3.value == doctest::Approx(grid3).epsilon(1e-5));

    CHECK_THROWS_AS(eck0_dual(0.0, ProbVec::uniform(2), w), std::invalid_argument);
}

TEST_CASE("eck0_primal_oracle agrees with the dual route")
{
    Dmc w = Dmc::bsc(0.1);
    ProbVec q = ProbVec::uniform(2);

    // Feasible point V = W caps the minimum at rho * I(Q, W).
    const double feas = 1.0 * oracles::mutual_information({0.5, 0.5}, w);
    const double primal = eck0_primal_oracle(1.0, q, w, 8, 7);
    CHECK(primal <= feas + 1e-10);

    CHECK(eck0_primal_oracle(1.0, ProbVec::uniform(2), Dmc::noiseless_binary(), 8, 7) ==
          doctest::Approx(kLog2).epsilon(1e-6));

    CHECK(primal == doctest::Approx(eck0_dual(1.0, q, w).value).epsilon(1e-5));

    // Size cap.
    std::mt19937_64 rng(3);
    Dmc big = Dmc::random_channel(9, 8, rng);
    CHECK_THROWS_AS(eck0_primal_oracle(1.0, ProbVec::uniform(9), big), std::invalid_argument);
}

TEST_CASE("eck0_dual vs primal oracle on random small channels")
{
    std::mt19937_64 rng(91);
    for (int t = 0; t < 4; ++t) {
        Dmc w = Dmc::random_channel(3, 3, rng);
        ProbVec q(oracles::random_simplex_point(3, rng));
        const double rho = (t % 2 == 0) ? 0.7 : 1.0;
        const double dual = eck0_dual(rho, q, w).value;
        const double primal = eck0_primal_oracle(rho, q, w, 16, 1000 + t);
        CHECK(dual == doctest::Approx(primal).epsilon(1e-5));
    }
}

TEST_CASE("dual_upper_bound: tightness and strictness")
{
    CHECK(dual_upper_bound(1.0, ProbVec::uniform(2), Dmc::noiseless_binary()) ==
          doctest::Approx(kLog2).epsilon(1e-14));

    Dmc w = Dmc::bsc(0.1);
    const double tight = dual_upper_bound(1.0, ProbVec::uniform(2), w);
    CHECK(tight == doctest::Approx(0.22314355131420976).epsilon(1e-13));

    const double loose = dual_upper_bound(1.0, ProbVec({0.9, 0.1}), w);
    CHECK(loose > 0.22314355131420976 + 1e-3);
}

TEST_CASE("optimize_e0: unconstrained instances")
{
    E0Result noiseless = optimize_e0(1.0, Dmc::noiseless_binary());
    CHECK(noiseless.converged);
    CHECK(noiseless.value == doctest::Approx(kLog2).epsilon(1e-9));
    CHECK(noiseless.optimizing_input[0] == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(noiseless.tilt_r == 0.0);

    // 1-D grid oracle over Q = (t, 1-t) for the BSC.
    Dmc w = Dmc::bsc(0.1);
    double grid_best = -1e300;
    for (double t = 0.0; t <= 1.0 + 1e-12; t += 1e-4)
        grid_best = std::max(grid_best, oracles::direct_eg0(1.0, {t, 1.0 - t}, w));
    E0Result bsc = optimize_e0(1.0, w);
    CHECK(bsc.converged);
    CHECK(bsc.value == doctest::Approx(grid_best).epsilon(1e-8));
    CHECK(bsc.duality_gap < 1e-8);
}

TEST_CASE("optimize_e0: cost-constrained binary instance vs (Q, r) grid oracle")
{
    Dmc w = Dmc::bsc(0.1);
    CostSpec cost{{0.0, 1.0}, 0.25};

    // Exhaustive oracle over the feasible polytope: for E_Q[g] < budget the
    // exponent is the untilted one; on the boundary t = budget the tilt is
    // maximized over its own grid (then refined).
    double oracle = -1e300;
    for (double t = 0.0; t <= 0.25 + 1e-12; t += 1e-3) {
        const std::vector<double> q{1.0 - t, t};
        if (t < 0.25 - 1e-9) {
            oracle = std::max(oracle, oracles::direct_eg0(1.0, q, w));
        } else {
            for (double r = 0.0; r <= 5.0 + 1e-12; r += 1e-2)
                oracle = std::max(oracle,
                                  oracles::direct_e0_tilted(1.0, q, r, w, {0.0, 1.0}, 0.25));
        }
    }
    // Refine the boundary tilt by golden section.
    {
        double a = 0.0, b = 5.0;
        const std::vector<double> q{0.75, 0.25};
        for (int i = 0; i < 300; ++i) {
            const double x1 = b - 0.6180339887498949 * (b - a);
            const double x2 = a + 0.6180339887498949 * (b - a);
            const double f1 = oracles::direct_e0_tilted(1.0, q, x1, w, {0.0, 1.0}, 0.25);
            const double f2 = oracles::direct_e0_tilted(1.0, q, x2, w, {0.0, 1.0}, 0.25);
            if (f1 < f2)
                a = x1;
            else
                b = x2;
            oracle = std::max(oracle, std::max(f1, f2));
        }
    }

    E0Result res = optimize_e0(1.0, w, cost);
    CHECK(res.value == doctest::Approx(oracle).epsilon(1e-7));
    CHECK(res.converged);
    CHECK(res.tilt_r > 0.0);
    CHECK(cost.expected_cost(res.optimizing_input) == doctest::Approx(0.25).epsilon(1e-7));
}

TEST_CASE("optimize_e0: inactive cost returns the unconstrained solution")
{
    Dmc w = Dmc::bsc(0.1);
    CostSpec cost{{0.0, 1.0}, 0.9}; // unconstrained optimum is uniform: E[g] = 0.5 < 0.9
    E0Result res = optimize_e0(1.0, w, cost);
    CHECK(res.tilt_r == 0.0);
    CHECK(res.value == doctest::Approx(optimize_e0(1.0, w).value).epsilon(1e-12));
}

TEST_CASE("cutoff_rate: BSC closed form")
{
    for (double p : {0.05, 0.1, 0.2})
        CHECK(cutoff_rate(Dmc::bsc(p)) == doctest::Approx(bsc_r0(p)).epsilon(1e-6));
    CHECK(cutoff_rate(Dmc::noiseless_binary()) == doctest::Approx(kLog2).epsilon(1e-9));
    CHECK(std::abs(cutoff_rate(Dmc::bsc(0.5))) < 1e-9);
}

TEST_CASE("random_coding_exponent")
{
    Dmc w = Dmc::bsc(0.1);

    // Above the capacity-side rate the maximizer is rho = 0.
    CHECK(random_coding_exponent(0.45, w) == doctest::Approx(0.0).epsilon(1e-9));

    // At rate 0 the maximizer is rho = 1 (E0 concave nondecreasing).
    CHECK(random_coding_exponent(0.0, w) ==
          doctest::Approx(optimize_e0(1.0, w).value).epsilon(1e-9));

    // Dense rho grid oracle at R = 0.1: for the BSC the uniform law is
    // optimal at every rho (checked coarsely below), so E0(rho) reduces to
    // the direct sum at the uniform law.
    for (double rho : {0.25, 0.6, 1.0}) {
        double best = -1e300;
        for (double t = 0.0; t <= 1.0 + 1e-12; t += 1e-3)
            best = std::max(best, oracles::direct_eg0(rho, {t, 1.0 - t}, w));
        CHECK(best == doctest::Approx(oracles::direct_eg0(rho, {0.5, 0.5}, w)).epsilon(1e-9));
    }
    double oracle = -1e300;
    for (double rho = 0.0; rho <= 1.0 + 1e-12; rho += 1e-4)
        oracle = std::max(oracle, oracles::direct_eg0(rho, {0.5, 0.5}, w) - rho * 0.1);
    CHECK(random_coding_exponent(0.1, w) == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("sphere_packing_exponent")
{
    Dmc w = Dmc::bsc(0.1);
    SpherePackingResult above = sphere_packing_exponent(0.45, w);
    CHECK_FALSE(above.infinite);
    CHECK(above.value == doctest::Approx(0.0).epsilon(1e-9));

    // Grid + refinement oracle at R = 0.3 (uniform law optimal for the BSC).
    SpherePackingResult mid = sphere_packing_exponent(0.3, w);
    CHECK_FALSE(mid.infinite);
    double oracle = -1e300;
    for (double rho = 0.0; rho <= 16.0 + 1e-12; rho += 1e-3)
        oracle = std::max(oracle, oracles::direct_eg0(rho, {0.5, 0.5}, w) - rho * 0.3);
    CHECK(mid.value == doctest::Approx(oracle).epsilon(1e-5));

    // Noiseless channel below capacity: E0(rho) = rho log 2 grows linearly.
    SpherePackingResult inf_case = sphere_packing_exponent(0.3, Dmc::noiseless_binary());
    CHECK(inf_case.infinite);
}

TEST_CASE("verify_lagrange_duality: random 3x4 channels")
{
    DualityReport report = verify_lagrange_duality(3, 4, 1.0, 20, 424242);
    CHECK(report.trials.size() == 20);
    for (const auto& trial : report.trials) {
        CHECK(trial.gap <= 1e-5);
        CHECK(trial.jazz_margin >= -1e-10);
    }
    CHECK(report.max_gap <= 1e-5);
    CHECK(report.min_pointwise_margin >= -1e-10);

    CHECK_THROWS_AS(verify_lagrange_duality(3, 4, 1.0, 0, 1), std::invalid_argument);
}

TEST_CASE("pointwise dual dominance (random spot checks)")
{
    std::mt19937_64 rng(77);
    for (int t = 0; t < 6; ++t) {
        Dmc w = (t == 0) ? Dmc::bsc(0.1) : Dmc::random_channel(3, 4, rng);
        const std::size_t n = w.num_inputs();
        ProbVec q(oracles::random_simplex_point(n, rng));
        const double rho = (t % 3 == 0) ? 1.0 : 0.5;
        CHECK(eck0_dual(rho, q, w).value >= eg0(rho, q, w) - 1e-10);
    }
}

TEST_CASE("E0 is nondecreasing and concave in rho")
{
    std::mt19937_64 rng(13);
    for (Dmc w : {Dmc::bsc(0.1), Dmc::random_channel(3, 4, rng)}) {
        std::vector<double> values;
        std::vector<double> grid;
        for (double rho = 0.0; rho <= 2.0 + 1e-12; rho += 0.25) {
            grid.push_back(rho);
            values.push_back(optimize_e0(rho, w).value);
        }
        for (std::size_t i = 1; i < values.size(); ++i)
            CHECK(values[i] >= values[i - 1] - 1e-9);
        for (std::size_t i = 1; i + 1 < values.size(); ++i) {
            const double second = values[i + 1] - 2.0 * values[i] + values[i - 1];
            CHECK(second <= 1e-9);
        }
    }
}

TEST_CASE("tilted chain inequalities")
{
    std::mt19937_64 rng(29);
    for (int t = 0; t < 5; ++t) {
        Dmc w = Dmc::random_channel(3, 3, rng);
        CostSpec cost{{0.0, 0.5, 1.0}, 0.0};
        // Budget equal to the expected cost of a random feasible law.
        std::vector<double> qv = oracles::random_simplex_point(3, rng);
        for (std::size_t x = 0; x < 3; ++x) cost.budget += qv[x] * cost.cost[x];
        ProbVec q(qv);
        const double rho = 0.5 + 0.25 * t;

        // The modification can only tighten.
        TiltedMax mod = eg0_modified(rho, q, w, cost);
        CHECK(mod.value >= eg0(rho, q, w) - 1e-12);

        // The constant-composition form dominates the modified one.
        CHECK(eck0_dual(rho, q, w).value >= mod.value - 1e-8);
    }
}

TEST_CASE("constrained maxima of both forms coincide (grid-search outer oracle)")
{
    // Binary instance: the feasible set is the single law (0.7, 0.3).
    {
        Dmc w = Dmc::bsc(0.1);
        CostSpec cost{{0.0, 1.0}, 0.3};
        const double via_primal = optimize_e0(1.0, w, cost).value;
        const double via_dual = eck0_dual(1.0, ProbVec({0.7, 0.3}), w).value;
        CHECK(via_primal == doctest::Approx(via_dual).epsilon(1e-5));
    }

    // Ternary instance: one free parameter on the constraint slice.
    {
        std::mt19937_64 rng(101);
        Dmc w = Dmc::random_channel(3, 3, rng);
        CostSpec cost{{0.0, 0.5, 1.0}, 0.4};
        double dual_best = -1e300;
        for (int i = 0; i <= 200; ++i) {
            // E[g] = 0.5 q1 + q2 = 0.4  ->  q1 = 0.8 - 2 q2, q2 in [0, 0.4].
            const double q2 = 0.4 * i / 200.0;
            const double q1 = std::max(0.0, 0.8 - 2.0 * q2);
            const double q0 = std::max(0.0, 1.0 - q1 - q2);
            std::vector<double> q{q0, q1, q2};
            const double total = q0 + q1 + q2;
            for (double& v : q) v /= total;
            dual_best = std::max(dual_best, eck0_dual(1.0, ProbVec(q), w).value);
        }
        const double via_primal = optimize_e0(1.0, w, cost).value;
        CHECK(via_primal == doctest::Approx(dual_best).epsilon(1e-5));
    }
}

TEST_CASE("optimizer tightness: dual bound matches primal value, per-letter condition holds")
{
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 2 + t % 3, m = 2 + (t + 1) % 3;
        Dmc w = Dmc::random_channel(n, m, rng);
        const double rho = (t % 2 == 0) ? 1.0 : 0.5;

        E0Result res;
        CostSpec cost;
        bool constrained = (t % 3 == 2);
        if (constrained) {
            cost.cost.resize(n);
            for (std::size_t x = 0; x < n; ++x) cost.cost[x] = static_cast<double>(x);
            E0Result unconstrained = optimize_e0(rho, w);
            const double unconstrained_cost = cost.expected_cost(unconstrained.optimizing_input);
            cost.budget = 0.5 * unconstrained_cost; // force the constraint active
            res = optimize_e0(rho, w, cost);
        } else {
            cost.cost.assign(n, 0.0);
            cost.budget = 0.0;
            res = optimize_e0(rho, w);
        }
        REQUIRE(res.converged);

        const double dual = dual_upper_bound(rho, res.optimizing_output, w, cost, res.tilt_r);
        CHECK(std::abs(dual - res.value) <= 1e-8);

        // Per-letter condition: sum_y alpha^rho(y) e^{r(g(x)-budget)} W^{1/(1+rho)}
        // >= sum_y alpha^{1+rho}(y) for every x.
        std::vector<double> alpha(m, 0.0);
        for (std::size_t y = 0; y < m; ++y)
            for (std::size_t x = 0; x < n; ++x)
                alpha[y] += res.optimizing_input[x] *
                            std::exp(res.tilt_r * (cost.cost[x] - cost.budget)) *
                            std::pow(w(x, y), 1.0 / (1.0 + rho));
        double S = 0.0;
        for (std::size_t y = 0; y < m; ++y) S += std::pow(alpha[y], 1.0 + rho);
        for (std::size_t x = 0; x < n; ++x) {
            double cx = 0.0;
            for (std::size_t y = 0; y < m; ++y)
                cx += std::pow(alpha[y], rho) *
                      std::exp(res.tilt_r * (cost.cost[x] - cost.budget)) *
                      std::pow(w(x, y), 1.0 / (1.0 + rho));
            CHECK(cx >= S - 1e-9);
        }
    }
}

TEST_CASE("channel JSON: round trip and validation messages")
{
    Dmc w = Dmc::bsc(0.1);
    CostSpec cost{{0.0, 1.0}, 0.5};
    const std::string text = channel_to_json(w, cost);
    ChannelFile parsed = parse_channel_json(text);
    CHECK(parsed.channel.num_inputs() == 2);
    CHECK(parsed.channel(0, 1) == doctest::Approx(0.1).epsilon(1e-15));
    REQUIRE(parsed.cost.has_value());
    CHECK(parsed.cost->budget == 0.5);

    // Non-stochastic rows are named precisely.
    const std::string bad = R"({"transition": [[0.9, 0.07], [0.1, 0.9]]})";
    try {
        parse_channel_json(bad);
        CHECK(false);
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("row 1 sums to 0.97") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_channel_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS(parse_channel_json(R"({"transition": [[1.0, 0.0]], "cost": [0.0]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_channel_json(R"({"transition": [[0.5, 0.5]], "cost": [0.0, 1.0],
                                           "budget": 0.5})"),
                    std::invalid_argument);
}
