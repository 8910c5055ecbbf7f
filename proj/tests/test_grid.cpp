#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "logse/grid.hpp"
#include "logse/wavefunction.hpp"

using namespace logse;

namespace {

template <class F>
std::vector<double> sample(const RadialGrid& g, F f) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(g.r(i));
  return v;
}

}  // namespace

class GridSpacings : public ::testing::TestWithParam<GridSpacing> {};

TEST_P(GridSpacings, NodesStrictlyIncreasingWithExactEnds) {
  const RadialGrid g(1e-3, 12.0, 257, GetParam());
  EXPECT_EQ(g.r_min(), 1e-3);
  EXPECT_EQ(g.r_max(), 12.0);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g.r(i), g.r(i - 1));
}

TEST_P(GridSpacings, QuadratureOfSmoothFunction) {
  // int_{0.5}^{3} r^2 e^{-r} dr
  const RadialGrid g(0.5, 3.0, 2001, GetParam());
  auto F = [](double r) { return -(r * r + 2 * r + 2) * std::exp(-r); };
  const double exact = F(3.0) - F(0.5);
  EXPECT_NEAR(g.integrate(sample(g, [](double r) { return r * r * std::exp(-r); })), exact,
              1e-11);
}

TEST_P(GridSpacings, EvenAndOddIntervalCounts) {
  for (std::size_t n : {100u, 101u}) {
    const RadialGrid g(1.0, 2.0, n, GetParam());
    EXPECT_NEAR(g.integrate(sample(g, [](double r) { return std::sin(r); })),
                std::cos(1.0) - std::cos(2.0), 1e-6);
  }
}

TEST_P(GridSpacings, CumulativeIntegral) {
  const RadialGrid g(0.1, 4.0, 801, GetParam());
  const auto c = g.cumulative_integral(sample(g, [](double r) { return std::cos(r); }));
  for (std::size_t i = 0; i < g.size(); i += 40) {
    EXPECT_NEAR(c[i], std::sin(g.r(i)) - std::sin(0.1), 1e-6);
  }
}

TEST_P(GridSpacings, DerivativeSecondOrder) {
  const RadialGrid g(0.1, 4.0, 2001, GetParam());
  const auto f = sample(g, [](double r) { return std::exp(-r * r); });
  const auto d = g.derivative<double>(f);
  for (std::size_t i = 0; i < g.size(); i += 50) {
    const double r = g.r(i);
    EXPECT_NEAR(d[i], -2 * r * std::exp(-r * r), 1e-4);
  }
}

INSTANTIATE_TEST_SUITE_P(All, GridSpacings,
                         ::testing::Values(GridSpacing::uniform, GridSpacing::logarithmic,
                                           GridSpacing::stretched));

TEST(Grid, InterpolationClampsOutside) {
  const RadialGrid g(1.0, 3.0, 3);
  const std::vector<double> f{1.0, 3.0, 5.0};
  EXPECT_DOUBLE_EQ(g.interpolate(f, 0.1), 1.0);
  EXPECT_DOUBLE_EQ(g.interpolate(f, 9.0), 5.0);
  EXPECT_DOUBLE_EQ(g.interpolate(f, 1.5), 2.0);
}

TEST(Grid, OriginCapCompletesIntegral) {
  // int_0^2 r^2 dr = 8/3 with the grid starting at 0.05
  const RadialGrid g(0.05, 2.0, 401);
  EXPECT_NEAR(radial_integral(g, sample(g, [](double r) { return r * r; })), 8.0 / 3.0, 1e-12);
}

TEST(Grid, InvalidConstructionRejected) {
  EXPECT_THROW(RadialGrid(0.0, 1.0, 10), DomainError);
  EXPECT_THROW(RadialGrid(-1.0, 1.0, 10), DomainError);
  EXPECT_THROW(RadialGrid(1.0, 1.0, 10), DomainError);
  EXPECT_THROW(RadialGrid(1.0, 2.0, 2), DomainError);
  EXPECT_THROW(RadialGrid(1.0, 2.0, 10, GridSpacing::stretched, 0.0), DomainError);
  EXPECT_THROW(grid_spacing_from_string("cubic"), DomainError);
  const RadialGrid g(1.0, 2.0, 10);
  EXPECT_THROW((void)g.integrate(std::vector<double>(9)), DomainError);
}

TEST(Wavefunction, NormalizeToTarget) {
  auto g = make_grid(1e-3, 10.0, 1001);
  auto psi = sample_wavefunction(g, [](double r) { return std::exp(-r * r); }, 3.0);
  psi.normalize();
  EXPECT_NEAR(psi.norm(), 3.0, 1e-12);
  EXPECT_TRUE(psi.is_normalized());
  auto zero = sample_wavefunction(g, [](double) { return 0.0; }, 1.0);
  EXPECT_THROW(zero.normalize(), DomainError);
  EXPECT_THROW(RadialWavefunction(g, std::vector<Complex>(5), 1.0), DomainError);
  EXPECT_THROW(RadialWavefunction(g, std::vector<Complex>(g->size()), 0.0), DomainError);
}
