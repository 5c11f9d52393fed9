#include "mlpf/predictor/march.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "mlpf/core/errors.hpp"

namespace mlpf::predictor {

namespace {

enum class Rule { Actuator, Target };

double scaled_change(double next, double prev) {
  return std::abs(next - prev) / std::max(1.0, std::abs(next));
}

// Forward spatial marching of the coupled predictor system. Node k is
// computed from nodes 0..k-1 with trapezoid quadrature; the diagonal term
// makes each node implicit in (p1, p2, p3, sigma), which is resolved by
// fixed-point iteration seeded with the previous node.
class Marcher {
 public:
  Marcher(const PlantModel& plant, const Grid& grid, double state, const HistoryBuffer& hist,
          double t, const MarchOptions& opts)
      : plant_(plant), grid_(grid), hist_(hist), t_(t), state_(state), opts_(opts) {
    const std::size_t n = grid.nodes();
    p1_.assign(n, 0.0);
    p2_.assign(n, 0.0);
    p3_.assign(n, 0.0);
    sig_.assign(n, 0.0);
    il_.assign(n, 0.0);
    flow_.assign(n, 0.0);
    h3_.assign(n, 0.0);
    cum3_.assign(n, 0.0);
    integral_.assign(n, 0.0);
    kxx_.assign(n, 1.0);
    recovered_.assign(n, 0.0);
    friction_nodes_.assign(n, 0.0);
    rev_.assign(n, 0.0);
    if (plant.has_friction) {
      for (std::size_t m = 0; m < n; ++m) friction_nodes_[m] = plant.c(grid.node(m));
    }
  }

  PredictorBundle run(const SpatialProfile& field, Rule interior, Rule last) {
    const std::size_t n = grid_.nodes();
    start(field[0], interior);
    for (std::size_t k = 1; k < n; ++k) {
      solve_node(k, field[k], k + 1 == n ? last : interior);
    }

    PredictorBundle out(grid_);
    out.time = t_;
    out.max_inner_iterations = max_iterations_used_;
    for (std::size_t k = 0; k < n; ++k) {
      out.p1[k] = p1_[k];
      out.p2[k] = p2_[k];
      out.p3[k] = p3_[k];
      out.sigma[k] = sig_[k];
      out.actuator[k] = recovered_[k];
    }
    fill_kernel_column(out.kernel_col);
    return out;
  }

 private:
  struct Guess {
    double p1, p2, p3, sigma;
  };

  double past_window(double target) const {
    // Stored-history part of the p3 equation: support [max(t - tau, target), t].
    const double lo = std::max(t_ - hist_.window(), target);
    return lo < t_ ? hist_.integrate(lo, t_) : 0.0;
  }

  void start(double field0, Rule rule) {
    const double window = hist_.window_integral(t_);
    p1_[0] = state_;
    p3_[0] = window;
    sig_[0] = t_;
    il_[0] = 1.0 / plant_.lambda(window);
    integral_[0] = 0.0;
    kxx_[0] = 1.0;
    if (rule == Rule::Actuator) {
      p2_[0] = field0;
      recovered_[0] = field0;
    } else {
      p2_[0] = (field0 + plant_.nominal(state_)) / plant_.flux_scale(window);
      recovered_[0] = p2_[0];
    }
    flow_[0] = plant_.f(p1_[0], plant_.flux_scale(p3_[0]) * p2_[0]) * il_[0];
    h3_[0] = p1_[0] * il_[0];
    cum3_[0] = 0.0;
  }

  // Reverse cumulative friction integrals rev_[j] = int_{y_j}^{x_{k-1}} c(x_k - z)/lambda dz
  // and the source sum over nodes j <= k-1, both independent of node k's guess.
  double prepare_node(std::size_t k) {
    const double dx = grid_.dx();
    const std::size_t i = k - 1;
    if (plant_.has_friction) {
      rev_[i] = 0.0;
      double e_next = friction_nodes_[k - i] * il_[i];
      for (std::size_t j = i; j-- > 0;) {
        const double e_j = friction_nodes_[k - j] * il_[j];
        rev_[j] = rev_[j + 1] + 0.5 * dx * (e_j + e_next);
        e_next = e_j;
      }
    }
    if (!plant_.has_source) return 0.0;
    double sum = 0.0;
    for (std::size_t j = 0; j <= i; ++j) {
      const double weight = j == 0 ? 0.5 * dx : dx;
      const double h = plant_.has_friction ? std::exp(rev_[j]) : 1.0;
      sum += weight * h * plant_.g(grid_.node(k - j), p2_[j]) * il_[j];
    }
    return sum;
  }

  double future_window(std::size_t k, double target, double h3_k, double cum3_k) {
    // Predicted part of the p3 equation: integral of p1/lambda over [y*, x_k].
    if (target <= t_) return cum3_k;
    const Cutoff cut = locate_cutoff(sig_, k, target);
    if (cut.cell >= k) return 0.0;
    const std::size_t m = cut.cell;
    const double h_next = (m + 1 == k) ? h3_k : h3_[m + 1];
    const double cum_next = (m + 1 == k) ? cum3_k : cum3_[m + 1];
    const double h_star = h3_[m] + cut.theta * (h_next - h3_[m]);
    return (cum3_k - cum_next) + (1.0 - cut.theta) * 0.5 * grid_.dx() * (h_star + h_next);
  }

  void solve_node(std::size_t k, double field_k, Rule rule) {
    const double dx = grid_.dx();
    const double tau = hist_.window();
    const std::size_t i = k - 1;
    const double source_sum = prepare_node(k);
    const double e_prev = plant_.has_friction ? friction_nodes_[1] * il_[i] : 0.0;
    const double c_diag = friction_nodes_[0];

    Guess g{p1_[i], p2_[i], p3_[i], sig_[i]};
    int it = 0;
    double change = 0.0;
    for (it = 1; it <= opts_.max_iterations; ++it) {
      const double il = 1.0 / plant_.lambda(g.p3);
      const double sigma = sig_[i] + 0.5 * dx * (il_[i] + il);
      const double flow = plant_.f(g.p1, plant_.flux_scale(g.p3) * g.p2) * il;
      const double p1 = p1_[i] + 0.5 * dx * (flow_[i] + flow);

      const double delta = plant_.has_friction ? 0.5 * dx * (e_prev + c_diag * il) : 0.0;
      const double kxx = plant_.has_friction ? std::exp(rev_[0] + delta) : 1.0;
      const double integral = (plant_.has_friction ? std::exp(delta) : 1.0) * source_sum +
                              0.5 * dx * plant_.g(0.0, g.p2) * il;
      const double p2 = rule == Rule::Actuator
                            ? kxx * field_k + integral
                            : (field_k + plant_.nominal(p1)) / plant_.flux_scale(g.p3);

      const double h3 = p1 * il;
      const double cum3 = cum3_[i] + 0.5 * dx * (h3_[i] + h3);
      sig_[k] = sigma;  // locate_cutoff scans sigma[0..k]
      const double target = sigma - tau;
      const double p3 = past_window(target) + future_window(k, target, h3, cum3);

      change = std::max({scaled_change(p1, g.p1), scaled_change(p2, g.p2),
                         scaled_change(p3, g.p3), scaled_change(sigma, g.sigma)});
      g = Guess{p1, p2, p3, sigma};
      if (!std::isfinite(change)) break;
      if (change <= opts_.tolerance) break;
    }
    if (!(change <= opts_.tolerance)) {
      std::ostringstream os;
      os << "predictor marching did not converge at node " << k << " (x = " << grid_.node(k)
         << ", t = " << t_ << ") after " << opts_.max_iterations << " iterations, last change "
         << change;
      throw Error(ErrorKind::NonConvergence, os.str());
    }
    max_iterations_used_ = std::max(max_iterations_used_, it);

    p1_[k] = g.p1;
    p2_[k] = g.p2;
    p3_[k] = g.p3;
    sig_[k] = g.sigma;
    il_[k] = 1.0 / plant_.lambda(g.p3);
    flow_[k] = plant_.f(g.p1, plant_.flux_scale(g.p3) * g.p2) * il_[k];
    h3_[k] = g.p1 * il_[k];
    cum3_[k] = cum3_[i] + 0.5 * dx * (h3_[i] + h3_[k]);

    const double delta = plant_.has_friction ? 0.5 * dx * (e_prev + c_diag * il_[k]) : 0.0;
    kxx_[k] = plant_.has_friction ? std::exp(rev_[0] + delta) : 1.0;
    integral_[k] = (plant_.has_friction ? std::exp(delta) : 1.0) * source_sum +
                   0.5 * dx * plant_.g(0.0, g.p2) * il_[k];
    recovered_[k] = rule == Rule::Actuator ? field_k : (p2_[k] - integral_[k]) / kxx_[k];
  }

  void fill_kernel_column(SpatialProfile& col) const {
    const std::size_t n = grid_.nodes();
    const std::size_t last = n - 1;
    if (!plant_.has_friction) {
      for (std::size_t j = 0; j < n; ++j) col[j] = 1.0;
      return;
    }
    double cum = 0.0;
    double e_prev = friction_nodes_[last] * il_[0];
    col[0] = 1.0;
    for (std::size_t j = 1; j < n; ++j) {
      const double e_j = friction_nodes_[last - j] * il_[j];
      cum += 0.5 * grid_.dx() * (e_prev + e_j);
      col[j] = std::exp(cum);
      e_prev = e_j;
    }
  }

 public:
  [[nodiscard]] double recovered_boundary() const { return recovered_.back(); }

 private:
  const PlantModel& plant_;
  const Grid& grid_;
  const HistoryBuffer& hist_;
  double t_;
  double state_;
  MarchOptions opts_;
  int max_iterations_used_ = 0;

  std::vector<double> p1_, p2_, p3_, sig_;
  std::vector<double> il_;     // 1 / lambda(p3)
  std::vector<double> flow_;   // p1 integrand
  std::vector<double> h3_;     // p3 integrand p1 / lambda(p3)
  std::vector<double> cum3_;   // cumulative trapezoid of h3
  std::vector<double> integral_;  // source integral term of the p2 equation
  std::vector<double> kxx_;       // K(x, x)
  std::vector<double> recovered_;
  std::vector<double> friction_nodes_;  // c(m dx)
  std::vector<double> rev_;
};

void check_profile(const Grid& grid, const SpatialProfile& profile, const char* what) {
  if (!(profile.grid() == grid)) {
    throw Error(ErrorKind::Domain, std::string(what) + " profile lives on a different grid");
  }
}

}  // namespace

PredictorBundle march_predictors(const PlantModel& plant, const Grid& grid, double state,
                                 const HistoryBuffer& hist, const SpatialProfile& actuator,
                                 double t, const MarchOptions& opts) {
  check_profile(grid, actuator, "actuator");
  Marcher m(plant, grid, state, hist, t, opts);
  return m.run(actuator, Rule::Actuator, Rule::Actuator);
}

PredictorBundle march_backward_predictors(const PlantModel& plant, const Grid& grid, double state,
                                          const HistoryBuffer& hist, const SpatialProfile& target,
                                          double t, const MarchOptions& opts) {
  check_profile(grid, target, "target");
  Marcher m(plant, grid, state, hist, t, opts);
  return m.run(target, Rule::Target, Rule::Target);
}

ClosedBoundary close_boundary(const PlantModel& plant, const Grid& grid, double state,
                              const HistoryBuffer& hist, const SpatialProfile& actuator, double t,
                              const MarchOptions& opts) {
  check_profile(grid, actuator, "actuator");
  SpatialProfile field = actuator;
  field[field.size() - 1] = 0.0;  // w(D, t) = 0
  Marcher m(plant, grid, state, hist, t, opts);
  PredictorBundle bundle = m.run(field, Rule::Actuator, Rule::Target);
  const double boundary = m.recovered_boundary();
  bundle.actuator[bundle.actuator.size() - 1] = boundary;
  return ClosedBoundary{std::move(bundle), boundary};
}

Cutoff locate_cutoff(std::span<const double> sigma, std::size_t last, double target) {
  // Largest m in [0, last] with sigma[m] <= target.
  auto begin = sigma.begin();
  auto end = sigma.begin() + static_cast<std::ptrdiff_t>(last) + 1;
  auto it = std::upper_bound(begin, end, target);
  std::size_t m = it == begin ? 0 : static_cast<std::size_t>(std::distance(begin, it)) - 1;
  if (m >= last) return Cutoff{last, 0.0};
  const double span = sigma[m + 1] - sigma[m];
  const double theta = span > 0.0 ? std::clamp((target - sigma[m]) / span, 0.0, 1.0) : 0.0;
  return Cutoff{m, theta};
}

double find_gamma_cutoff(const SpatialProfile& sigma, std::size_t x_index, double tau, double t) {
  const double target = sigma[x_index] - tau;
  if (target <= t) return 0.0;
  const Cutoff cut = locate_cutoff(sigma.values(), x_index, target);
  const Grid& grid = sigma.grid();
  if (cut.cell >= x_index) return grid.node(x_index);
  return grid.node(cut.cell) + cut.theta * grid.dx();
}

}  // namespace mlpf::predictor
