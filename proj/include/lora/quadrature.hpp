#pragma once

#include <functional>
#include <stdexcept>

namespace lora {

struct QuadratureSettings {
  double abs_tol = 1e-8;
  double rel_tol = 1e-8;
  int max_subdivisions = 200;
};

struct IntegralResult {
  double value = 0.0;
  double abs_error = 0.0;  ///< estimated absolute error of `value`
  int subdivisions = 0;
  bool converged = false;  ///< abs_error met the requested tolerance
};

/// Raised when an integral cannot be computed to the accuracy its caller's
/// contract requires; carries the error estimate that was achieved.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved_tolerance() const { return achieved_; }

 private:
  double achieved_;
};

/// Globally adaptive Gauss-Kronrod 7/15 on [a, b]: repeatedly bisects the
/// interval with the largest error estimate until the summed estimate meets
/// max(abs_tol, rel_tol*|value|) or max_subdivisions is exhausted. Never
/// throws on non-convergence; callers check `converged` / `abs_error`
/// against their own contracts.
IntegralResult integrate(const std::function<double(double)>& f, double a, double b,
                         const QuadratureSettings& settings = {});

}  // namespace lora
