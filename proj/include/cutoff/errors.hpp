#ifndef CUTOFF_ERRORS_HPP
#define CUTOFF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cutoff {

// Raised when an adaptive routine exhausts its subdivision/iteration budget
// before reaching the requested tolerance.  Carries the best estimate so the
// caller can decide whether it is still usable.
class accuracy_error : public std::runtime_error {
  public:
    accuracy_error(const std::string& what, double best_estimate, double error_estimate)
        : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate)
    {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

  private:
    double best_estimate_;
    double error_estimate_;
};

// Raised when a parameter combination violates a feasibility constraint that
// is not a plain precondition (e.g. the output-density positivity factor).
class infeasible_parameters : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace cutoff

#endif
