#include "cutoff/prob.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace cutoff {

namespace {

void check_weights(const std::vector<double>& w)
{
    if (w.empty()) throw std::invalid_argument("ProbVec: empty weight vector");
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!(w[i] >= 0.0) || !std::isfinite(w[i])) {
            char msg[96];
            std::snprintf(msg, sizeof msg, "ProbVec: entry %zu is %g, must be >= 0", i, w[i]);
            throw std::invalid_argument(msg);
        }
    }
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-12) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "ProbVec: weights sum to %.17g, not 1", sum);
        throw std::invalid_argument(msg);
    }
}

} // namespace

ProbVec::ProbVec(std::vector<double> weights) : w_(std::move(weights))
{
    check_weights(w_);
}

ProbVec ProbVec::uniform(std::size_t n)
{
    if (n == 0) throw std::invalid_argument("ProbVec::uniform: n must be >= 1");
    return ProbVec(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

ProbVec ProbVec::normalized(std::vector<double> raw)
{
    double sum = 0.0;
    for (double v : raw) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("ProbVec::normalized: entries must be finite and >= 0");
        sum += v;
    }
    if (!(sum > 0.0)) throw std::invalid_argument("ProbVec::normalized: total mass must be > 0");
    for (double& v : raw) v /= sum;
    return ProbVec(std::move(raw));
}

} // namespace cutoff
