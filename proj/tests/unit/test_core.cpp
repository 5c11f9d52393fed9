#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "mlpf/core/errors.hpp"
#include "mlpf/core/grid.hpp"
#include "mlpf/core/history.hpp"
#include "mlpf/core/plant.hpp"
#include "helpers.hpp"

namespace mlpf {
namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an mlpf::Error";
  return ErrorKind::Config;
}

TEST(Grid, NodesAndSpacing) {
  const Grid g(2.0, 80);
  EXPECT_EQ(g.nodes(), 81u);
  EXPECT_DOUBLE_EQ(g.dx(), 2.0 / 80);
  EXPECT_EQ(g.node(0), 0.0);
  EXPECT_EQ(g.node(80), 2.0);
  EXPECT_DOUBLE_EQ(g.node(40), 1.0);
}

TEST(Grid, RejectsDegenerateShapes) {
  EXPECT_EQ(kind_of([] { Grid(0.0, 10); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { Grid(1.0, 1); }), ErrorKind::Domain);
}

TEST(SpatialProfile, InterpolatesAndMeasures) {
  const Grid g(1.0, 4);
  const auto p = SpatialProfile::sample(g, [](double x) { return 2.0 * x - 0.5; });
  EXPECT_EQ(p.size(), 5u);
  EXPECT_NEAR(p.at(0.3), 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(p.at(-1.0), -0.5);
  EXPECT_DOUBLE_EQ(p.at(5.0), 1.5);
  EXPECT_DOUBLE_EQ(p.max_abs(), 1.5);
  EXPECT_DOUBLE_EQ(p.min(), -0.5);
  EXPECT_NEAR(p.lipschitz(), 2.0, 1e-12);
  EXPECT_TRUE(p.all_finite());
  EXPECT_EQ(kind_of([&] { SpatialProfile(g, std::vector<double>(3, 0.0)); }), ErrorKind::Domain);
}

TEST(HistoryBuffer, ConstantWindowIntegral) {
  HistoryBuffer h(0.2, 0.4);
  h.append(0.0, 0.4);
  h.append(0.1, 0.4);
  h.append(0.2, 0.4);
  EXPECT_NEAR(h.integrate(0.0, 0.2), 0.08, 1e-16);
  EXPECT_EQ(h.integrate(0.1, 0.1), 0.0);
  EXPECT_NEAR(h.window_integral(0.2), 0.08, 1e-16);
}

TEST(HistoryBuffer, ExactOnLinearData) {
  HistoryBuffer h(1.0, 2.0);
  for (int k = 0; k <= 10; ++k) h.append(0.1 * k, 0.1 * k);
  EXPECT_NEAR(h.integrate(0.0, 1.0), 0.5, 1e-15);
  EXPECT_NEAR(h.integrate(0.05, 0.95), 0.5 * (0.95 * 0.95 - 0.05 * 0.05), 1e-15);
}

TEST(HistoryBuffer, Interpolation) {
  HistoryBuffer h(1.0, 1.0);
  h.append(0.0, 0.0);
  h.append(1.0, 1.0);
  EXPECT_DOUBLE_EQ(h.interpolate(0.5), 0.5);
  EXPECT_DOUBLE_EQ(h.interpolate(1.0), 1.0);
  EXPECT_EQ(kind_of([&] { (void)h.interpolate(2.0); }), ErrorKind::Range);
  EXPECT_EQ(kind_of([&] { (void)h.integrate(0.5, 0.2); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([&] { h.append(1.0, 3.0); }), ErrorKind::Domain);
}

TEST(HistoryBuffer, SeededCoversWindow) {
  const auto h = HistoryBuffer::seeded(0.2, 0.0025, [](double s) { return 1.0 + s; });
  EXPECT_NEAR(h.front_time(), -0.2, 1e-15);
  EXPECT_EQ(h.back_time(), 0.0);
  EXPECT_NEAR(h.window_integral(0.0), 0.2 - 0.02, 1e-14);
  EXPECT_DOUBLE_EQ(h.slack(), 0.4);
}

TEST(HistoryBuffer, Additivity) {
  HistoryBuffer h(2.0, 4.0);
  for (int k = 0; k <= 200; ++k) h.append(0.01 * k, std::sin(3.0 * 0.01 * k));
  const double a = 0.013;
  const double b = 0.77;
  const double c = 1.901;
  EXPECT_NEAR(h.integrate(a, c), h.integrate(a, b) + h.integrate(b, c), 1e-12);
}

TEST(HistoryBuffer, SecondOrderConvergence) {
  const double exact = (1.0 - std::cos(2.0)) / 2.0;  // int_0^1 sin(2s) ds
  double prev = 0.0;
  for (int n : {10, 20, 40, 80}) {
    HistoryBuffer h(1.0, 1.0);
    for (int k = 0; k <= n; ++k) h.append(static_cast<double>(k) / n, std::sin(2.0 * k / n));
    const double err = std::abs(h.integrate(0.0, 1.0) - exact);
    if (prev > 0.0) {
      EXPECT_GE(prev / err, 3.4);
      EXPECT_LE(prev / err, 4.6);
    }
    prev = err;
  }
}

TEST(HistoryBuffer, PruningKeepsWindow) {
  const double tau = 0.2;
  const double dt = 0.0025;
  auto h = HistoryBuffer::seeded(tau, dt, [](double) { return 1.0; });
  for (int n = 1; n <= 4000; ++n) {
    const double t = n * dt;
    h.append(t, 1.0 + t);
    ASSERT_LE(h.front_time(), std::max(t - tau - h.slack(), -tau) + 1e-12);
    const double lo = std::max(t - tau, 0.0);
    const double exact = tau + 0.5 * (t * t - lo * lo);
    ASSERT_NEAR(h.window_integral(t), exact, 1e-10);
  }
  EXPECT_LT(h.size(), 1000u);
}

TEST(PlantModel, SpeedGuard) {
  auto m = testing::constant_speed_plant(2.0);
  m.speed = [](double z) { return 1.0 + z; };
  m.speed_min = 1.0;
  m.speed_max = 2.0;
  EXPECT_DOUBLE_EQ(m.lambda(0.5), 1.5);
  EXPECT_EQ(kind_of([&] { (void)m.lambda(1.5); }), ErrorKind::SpeedBoundViolation);
  EXPECT_EQ(kind_of([&] { m.validate(Grid(1.0, 4), 0.0, 2.0); }), ErrorKind::SpeedBoundViolation);
  EXPECT_NO_THROW(m.validate(Grid(1.0, 4), 0.0, 1.0));
}

TEST(PlantModel, ValidateChecksSourceAndNominal) {
  auto m = testing::constant_speed_plant(1.0);
  m.has_source = true;
  m.source = [](double x, double v) { return x + v; };
  EXPECT_EQ(kind_of([&] { m.validate(Grid(1.0, 4), 0.0, 1.0); }), ErrorKind::Domain);
  m.source = [](double x, double v) { return x * v; };
  m.nominal = [](double x) { return 1.0 - x; };
  EXPECT_EQ(kind_of([&] { m.validate(Grid(1.0, 4), 0.0, 1.0); }), ErrorKind::Domain);
  m.nominal_vanishes_at_origin = false;
  EXPECT_NO_THROW(m.validate(Grid(1.0, 4), 0.0, 1.0));
}

TEST(PlantModel, FlagsGateSourceAndFriction) {
  auto m = testing::constant_speed_plant(3.0);
  m.source = [](double, double v) { return v; };
  m.friction = [](double) { return -1.0; };
  EXPECT_EQ(m.g(0.1, 2.0), 0.0);
  EXPECT_EQ(m.c(0.1), 0.0);
  m.has_source = m.has_friction = true;
  EXPECT_EQ(m.g(0.1, 2.0), 2.0);
  EXPECT_EQ(m.c(0.1), -1.0);
  EXPECT_EQ(m.flux_scale(0.0), 3.0);
  m.boundary = BoundaryKind::Value;
  EXPECT_EQ(m.flux_scale(0.0), 1.0);
}

}  // namespace
}  // namespace mlpf
