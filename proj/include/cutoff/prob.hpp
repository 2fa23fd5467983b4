#ifndef CUTOFF_PROB_HPP
#define CUTOFF_PROB_HPP

#include <cstddef>
#include <vector>

namespace cutoff {

// Probability distribution over a finite alphabet.  Entries are >= 0 and sum
// to 1 within 1e-12; both are enforced at construction.
class ProbVec {
  public:
    ProbVec() = default;
    explicit ProbVec(std::vector<double> weights);

    static ProbVec uniform(std::size_t n);
    // Scales a nonnegative vector with positive total mass to sum 1.
    static ProbVec normalized(std::vector<double> raw);

    std::size_t size() const noexcept { return w_.size(); }
    double operator[](std::size_t i) const noexcept { return w_[i]; }
    const std::vector<double>& weights() const noexcept { return w_; }

  private:
    std::vector<double> w_;
};

} // namespace cutoff

#endif
