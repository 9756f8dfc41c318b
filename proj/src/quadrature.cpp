#include "lora/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace lora {

namespace {

// 15-point Kronrod nodes on [-1,1] (positive half) with weights, and the
// embedded 7-point Gauss weights. Standard QUADPACK dqk15 constants.
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

struct Panel {
  double a, b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// One Gauss-Kronrod 7/15 evaluation with the QUADPACK error heuristic.
Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(center - half * kXgk[i]);
    fv[14 - i] = f(center + half * kXgk[i]);
  }
  fv[7] = f(center);

  double resk = kWgk[7] * fv[7];
  double resg = kWg[3] * fv[7];
  double resabs = kWgk[7] * std::fabs(fv[7]);
  for (int i = 0; i < 7; ++i) {
    const double sum = fv[i] + fv[14 - i];
    resk += kWgk[i] * sum;
    resabs += kWgk[i] * (std::fabs(fv[i]) + std::fabs(fv[14 - i]));
    if (i % 2 == 1) resg += kWg[i / 2] * sum;
  }
  const double mean = resk * 0.5;
  double resasc = kWgk[7] * std::fabs(fv[7] - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kWgk[i] * (std::fabs(fv[i] - mean) + std::fabs(fv[14 - i] - mean));
  resasc *= std::fabs(half);
  resabs *= std::fabs(half);

  double err = std::fabs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps50 = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
  if (eps50 > std::numeric_limits<double>::min()) err = std::max(err, eps50);

  return Panel{a, b, resk * half, err};
}

}  // namespace

IntegralResult integrate(const std::function<double(double)>& f, double a, double b,
                         const QuadratureSettings& settings) {
  IntegralResult res;
  if (a == b) {
    res.converged = true;
    return res;
  }

  std::priority_queue<Panel> panels;
  panels.push(gk15(f, a, b));
  double total = panels.top().value;
  double err = panels.top().error;

  int splits = 0;
  auto tolerance = [&] { return std::max(settings.abs_tol, settings.rel_tol * std::fabs(total)); };
  while (err > tolerance() && splits < settings.max_subdivisions) {
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // interval exhausted at machine resolution
      panels.push(worst);
      break;
    }
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++splits;
  }

  res.value = total;
  res.abs_error = err;
  res.subdivisions = splits;
  res.converged = err <= tolerance();
  return res;
}

}  // namespace lora
