#include "pt_horizon/quartic.hpp"

#include <algorithm>
#include <vector>

namespace pt_horizon {
namespace {

// Real roots of c0 + c1 t + c2 t^2 inside (0, 1), ascending.
std::vector<double> quadratic_roots_in_unit(double c0, double c1, double c2) {
  std::vector<double> roots;
  const double scale = std::abs(c0) + std::abs(c1) + std::abs(c2);
  if (scale == 0.0) return roots;
  if (std::abs(c2) <= 1e-14 * scale) {
    if (c1 != 0.0) roots.push_back(-c0 / c1);
  } else {
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc >= 0.0) {
      const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
      roots.push_back(q / c2);
      if (q != 0.0) roots.push_back(c0 / q);
    }
  }
  std::erase_if(roots, [](double t) { return !(t > 0.0 && t < 1.0); });
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Root of a monotone g on [lo, hi] with g(lo), g(hi) of opposite sign.
double bisect(const Quartic& g, double lo, double hi) {
  double glo = g(lo);
  for (int it = 0; it < 80 && hi - lo > 1e-17; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double min_on_unit_interval(const Quartic& f) {
  double best = std::min(f(0.0), f(1.0));

  const Quartic d1 = f.derivative();
  const Quartic d2 = d1.derivative();

  std::vector<double> breaks = {0.0};
  for (double t : quadratic_roots_in_unit(d2[0], d2[1], d2[2])) breaks.push_back(t);
  breaks.push_back(1.0);

  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = breaks[i];
    const double hi = breaks[i + 1];
    const double dlo = d1(lo);
    const double dhi = d1(hi);
    if (dlo == 0.0) best = std::min(best, f(lo));
    if (dhi == 0.0) best = std::min(best, f(hi));
    if ((dlo < 0.0 && dhi > 0.0) || (dlo > 0.0 && dhi < 0.0)) {
      best = std::min(best, f(bisect(d1, lo, hi)));
    }
  }
  return best;
}

}  // namespace pt_horizon
