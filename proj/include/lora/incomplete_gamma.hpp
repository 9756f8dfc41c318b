#pragma once

namespace lora {

/// Upper incomplete gamma Gamma(a, x) = integral_x^inf t^(a-1) e^(-t) dt,
/// non-regularized. Series expansion for x < a+1, Lentz continued fraction
/// otherwise; relative accuracy better than 1e-12 for a in [1, 3] and
/// x in [0, 700]. Throws std::domain_error for a <= 0 or x < 0.
double upper_incomplete_gamma(double a, double x);

}  // namespace lora
