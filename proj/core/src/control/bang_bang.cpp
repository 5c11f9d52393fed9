#include "mlpf/control/bang_bang.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mlpf/core/errors.hpp"

namespace mlpf::control {

namespace {

// phi(L) = L a - S (1 - e^{-L b}); negative just right of 0 iff S b > a.
double gain_equation(double lam, double a, double b, double slope) {
  return lam * a + slope * std::expm1(-lam * b);
}

double positive_root(double a, double b, double slope, const char* branch) {
  double lo = 1e-8;
  if (!(gain_equation(lo, a, b, slope) < 0.0)) {
    std::ostringstream os;
    os << "gain synthesis: no positive root for the " << branch << " branch (slope " << slope
       << " does not exceed its minimum " << a / b << ")";
    throw Error(ErrorKind::NoPositiveRoot, os.str());
  }
  double hi = std::max(slope * b, 1.0);
  int grow = 0;
  while (!(gain_equation(hi, a, b, slope) > 0.0)) {
    hi *= 2.0;
    if (++grow > 200 || !std::isfinite(hi)) {
      throw Error(ErrorKind::NoPositiveRoot,
                  std::string("gain synthesis: could not bracket the ") + branch + " root");
    }
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double val = gain_equation(mid, a, b, slope);
    if (std::abs(val) <= 1e-13 || hi - lo <= 1e-15 * hi) return mid;
    (val < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double s_min(double q_star, double alpha, double b_max, double q_max) {
  if (!(alpha > 0.0) || !(q_star > 0.0) || !(q_star < q_max)) {
    std::ostringstream os;
    os << "S_min requires 0 < Q* < Q_max and alpha > 0 (Q* = " << q_star << ", Q_max = " << q_max
       << ", alpha = " << alpha << ")";
    throw Error(ErrorKind::Domain, os.str());
  }
  const double feed = q_star / alpha;
  return std::max((b_max - feed) / q_star, feed / (q_max - q_star));
}

std::pair<double, double> solve_gains(double q_star, double alpha, double b_max, double q_max,
                                      double slope) {
  if (!(alpha > 0.0) || !(q_star > 0.0) || !(q_star < q_max)) {
    throw Error(ErrorKind::Domain, "gain synthesis requires 0 < Q* < Q_max and alpha > 0");
  }
  const double feed = q_star / alpha;
  const double left = positive_root(b_max - feed, q_star, slope, "left");
  const double right = positive_root(feed, q_max - q_star, slope, "right");
  return {left, right};
}

std::pair<double, double> gain_residuals(const BangBangGains& g) {
  const double feed = g.setpoint_input();
  return {gain_equation(g.lambda_left, g.b_max - feed, g.q_star, g.slope),
          gain_equation(g.lambda_right, feed, g.q_max - g.q_star, g.slope)};
}

BangBangGains make_gains(double q_star, double mu, double alpha, double b_max, double q_max,
                         double slope_offset) {
  if (!(mu > 0.0) || !(q_max > 0.0) || !(b_max > 0.0)) {
    throw Error(ErrorKind::Domain, "mu, Q_max and B_max must be positive");
  }
  if (q_star > std::min(q_max, mu)) {
    std::ostringstream os;
    os << "setpoint Q* = " << q_star << " exceeds min(Q_max, mu) = " << std::min(q_max, mu);
    throw Error(ErrorKind::Domain, os.str());
  }
  if (b_max > std::min(q_max, mu) / alpha * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "B_max = " << b_max << " exceeds min(Q_max, mu)/alpha = " << std::min(q_max, mu) / alpha;
    throw Error(ErrorKind::Domain, os.str());
  }
  BangBangGains g;
  g.q_star = q_star;
  g.mu = mu;
  g.alpha = alpha;
  g.b_max = b_max;
  g.q_max = q_max;
  g.slope = s_min(q_star, alpha, b_max, q_max) + slope_offset;
  std::tie(g.lambda_left, g.lambda_right) = solve_gains(q_star, alpha, b_max, q_max, g.slope);
  return g;
}

double bang_bang_left(double q, const BangBangGains& g) {
  // (1 - e^a)/(1 - e^b) = expm1(a)/expm1(b); written so Q = 0 gives ratio 1 exactly.
  const double ratio = std::expm1(g.lambda_left * (q - g.q_star)) /
                       std::expm1(g.lambda_left * (0.0 - g.q_star));
  return g.b_max * ratio + g.setpoint_input() * (1.0 - ratio);
}

double bang_bang_right(double q, const BangBangGains& g) {
  const double ratio = std::expm1(-g.lambda_right * (q - g.q_star)) /
                       std::expm1(-g.lambda_right * (g.q_max - g.q_star));
  return g.setpoint_input() * (1.0 - ratio);
}

bool out_of_range(double q, const BangBangGains& g) { return q < 0.0 || q > g.q_max; }

double bang_bang(double q, const BangBangGains& g) {
  q = std::clamp(q, 0.0, g.q_max);
  if (q < g.q_star) return bang_bang_left(q, g);
  if (q > g.q_star) return bang_bang_right(q, g);
  return g.setpoint_input();
}

}  // namespace mlpf::control
