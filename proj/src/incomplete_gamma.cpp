#include "lora/incomplete_gamma.hpp"

#include <cmath>
#include <stdexcept>

namespace lora {

namespace {

// Lower incomplete gamma by series: gamma(a,x) = x^a e^-x sum x^n / (a..(a+n)).
double lower_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 500; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
  }
  return sum * std::exp(a * std::log(x) - x);
}

// Upper incomplete gamma by modified Lentz continued fraction; converges
// quickly for x >= a+1.
double upper_fraction(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-17) break;
  }
  return std::exp(a * std::log(x) - x) * h;
}

}  // namespace

double upper_incomplete_gamma(double a, double x) {
  if (!(a > 0)) throw std::domain_error("upper_incomplete_gamma: a must be > 0");
  if (!(x >= 0)) throw std::domain_error("upper_incomplete_gamma: x must be >= 0");
  if (x == 0.0) return std::tgamma(a);
  if (x < a + 1.0) return std::tgamma(a) - lower_series(a, x);
  return upper_fraction(a, x);
}

}  // namespace lora
