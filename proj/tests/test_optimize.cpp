#include "doctest.h"
#include "qmu/bounds.hpp"
#include "qmu/compat.hpp"
#include "qmu/optimize.hpp"
#include "support.hpp"

#include <cmath>
#include <numbers>

using namespace qmu;
using qmu::testing::kNum;
using qmu::testing::near;

namespace {

constexpr double pi = std::numbers::pi;

// compatible with c: on or inside the ellipsoid
bool inside(const BlochVector& c, const BlochVector& d) { return compatibility_violation(c, d) <= 1e-12; }

}  // namespace

TEST_CASE("config validation") {
  OptimizerConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.grid_n = 16;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.conv_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.max_iter = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("sample rng is reproducible and uniform in range") {
  SampleRng r1(7), r2(7);
  for (int i = 0; i < 1000; ++i) {
    const double u = r1.uniform();
    REQUIRE(u == r2.uniform());
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
  // first draws pinned so that a change of generator is noticed
  SampleRng fixed(1);
  const double first = fixed.uniform();
  CHECK(first == doctest::Approx(static_cast<double>(std::mt19937_64(1)() >> 11) * 0x1.0p-53));
  SampleRng ball(5);
  for (int i = 0; i < 1000; ++i) REQUIRE(ball.in_ball().norm() <= 1.0);
}

TEST_CASE("min_D_given_c examples") {
  const BlochVector a(1, 0, 0), b(0, 1, 0);
  CHECK(min_D_given_c({}, b) == b);
  CHECK(near(min_D_given_c(a, a), a));
  const double phi = pi / 3;
  const BlochVector d = min_D_given_c(std::sin(phi) * a, b);
  CHECK(near(d, std::cos(phi) * b));
  CHECK((b - d).norm() == doctest::Approx(1 - std::cos(phi)));
  // sharp c collapses the region to a segment
  const BlochVector seg = min_D_given_c(a, BlochVector(0.6, 0.8, 0));
  CHECK(near(seg, BlochVector(0.6, 0, 0)));
  CHECK_THROWS_AS(min_D_given_c({1.2, 0, 0}, b), std::invalid_argument);
  CHECK_THROWS_AS(min_D_given_c(a, {0.5, 0, 0}), std::invalid_argument);
}

TEST_CASE("min_noise_given_c examples") {
  const BlochVector a(1, 0, 0), b(0, 1, 0);
  CHECK(min_noise_given_c({}, b) == b);
  // unit c: the best d on the segment is the endpoint facing b
  const BlochVector tilted(0.6, 0.8, 0);
  CHECK(near(min_noise_given_c(a, tilted), a));
  CHECK(near(min_noise_given_c(-1.0 * a, tilted), a));
  CHECK(min_noise_given_c(a, b) == BlochVector{});
  // orthogonal targets: c = sin(phi) a gives d = cos(phi) b
  const BlochVector d = min_noise_given_c(std::sin(0.4) * a, b);
  CHECK(near(d, std::cos(0.4) * b));
}

TEST_CASE("grid oracle examples") {
  const BlochVector b(0, 0, 1);
  const OracleResult free = grid_oracle_min({}, b, Measure::metric_d, 64);
  CHECK(free.value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(near(free.d, b, 1e-12));

  const BlochVector a(1, 0, 0), y(0, 1, 0);
  const double phi = 0.7;
  double previous = 10.0;
  for (int n : {64, 128, 256}) {
    const OracleResult r = grid_oracle_min(std::sin(phi) * a, y, Measure::metric_d, n);
    CHECK(r.value >= 1 - std::cos(phi) - 1e-12);
    CHECK(r.value <= previous + 1e-15);
    previous = r.value;
  }
  CHECK(previous == doctest::Approx(1 - std::cos(phi)).epsilon(1e-3));
  CHECK_THROWS_AS(grid_oracle_min(a, y, Measure::metric_d, 8), std::invalid_argument);
}

TEST_CASE("property: conditional minimizers are feasible and beat the oracle") {
  SampleRng rng(51);
  for (int i = 0; i < 200; ++i) {
    const BlochVector c = rng.in_ball();
    const BlochVector b = qmu::testing::random_unit(rng);
    const BlochVector dm = min_D_given_c(c, b);
    const BlochVector dn = min_noise_given_c(c, b);
    REQUIRE(inside(c, dm));
    REQUIRE(inside(c, dn));
    const OracleResult om = grid_oracle_min(c, b, Measure::metric_d, 128);
    const OracleResult on = grid_oracle_min(c, b, Measure::noise_eps, 128);
    REQUIRE((b - dm).norm() <= om.value + 1e-12);
    REQUIRE(std::sqrt(2 * (1 - b.dot(dn))) <= on.value + 1e-12);
    REQUIRE(om.value - (b - dm).norm() <= 1e-2);
    REQUIRE(on.value - std::sqrt(2 * (1 - b.dot(dn))) <= 1e-2);
  }
}

TEST_CASE("property: projection is a local optimum under random feasible probes") {
  SampleRng rng(52);
  for (int i = 0; i < 200; ++i) {
    const BlochVector c = rng.in_ball();
    const BlochVector b = qmu::testing::random_unit(rng);
    const BlochVector d = min_D_given_c(c, b);
    for (int k = 0; k < 200; ++k) {
      const BlochVector probe = d + 0.05 * rng.in_ball();
      if (probe.norm() > 1.0 || !inside(c, probe)) continue;
      REQUIRE((b - probe).norm() >= (b - d).norm() - 1e-12);
    }
  }
}

TEST_CASE("compat surface normal is orthogonal to the ellipsoid") {
  const BlochVector c(0.6, 0, 0);
  const BlochVector d = min_D_given_c(c, BlochVector(0, 1, 0));
  const BlochVector n = compat_surface_normal(c, d);
  // b - d points along the outward normal at the projection
  CHECK((BlochVector(0, 1, 0) - d).cross(n).norm() <= kNum);
}

TEST_CASE("alternate_minimize examples") {
  const BlochVector a(1, 0, 0), b(0, 1, 0);

  SUBCASE("noise, orthogonal targets") {
    const IterationTrace t = alternate_minimize(Measure::noise_eps, a, b, 0.5 * a);
    CHECK(t.converged);
    const BlochVector m = t.limit.c;
    CHECK(m.norm() <= 1.0 + 1e-12);
    CHECK(std::abs(m.z()) <= 1e-12);
  }
  SUBCASE("metric, stationary start") {
    const double s = std::sin(pi / 4);
    const IterationTrace t = alternate_minimize(Measure::metric_d, a, b, s * a);
    CHECK(t.converged);
    CHECK(near(t.limit.c, s * a, 1e-9));
    CHECK(near(t.limit.d, std::cos(pi / 4) * b, 1e-9));
  }
  SUBCASE("noise, identical targets") {
    const IterationTrace t = alternate_minimize(Measure::noise_eps, a, a, 0.3 * b);
    CHECK(t.converged);
    CHECK(near(t.limit.c, a, 1e-9));
    CHECK(near(t.limit.d, a, 1e-9));
  }
  SUBCASE("iteration cap") {
    OptimizerConfig cfg;
    cfg.max_iter = 2;
    const BlochVector tb(std::cos(1.5), std::sin(1.5), 0);
    CHECK_THROWS_AS(alternate_minimize(Measure::noise_eps, a, tb, 0.1 * a, cfg), NotConvergedError);
    try {
      alternate_minimize(Measure::noise_eps, a, tb, 0.1 * a, cfg);
    } catch (const NotConvergedError& e) {
      CHECK(e.trace().pairs.size() == 3);
      CHECK_FALSE(e.trace().converged);
    }
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(alternate_minimize(Measure::noise_eps, a, -1.0 * a, {}), std::invalid_argument);
    CHECK_THROWS_AS(alternate_minimize(Measure::noise_eps, a, b, {1, 1, 0}), std::invalid_argument);
  }
}

TEST_CASE("property: alternation is monotone and stays compatible") {
  SampleRng rng(53);
  for (int i = 0; i < 40; ++i) {
    const Measure m = i % 2 ? Measure::metric_d : Measure::noise_eps;
    const double theta = rng.uniform(0.1, 1.4);
    const auto [a, b] = standard_targets(theta);
    const IterationTrace t = alternate_minimize(m, a, b, rng.in_ball());
    REQUIRE(t.converged);
    auto err = [&](const BlochVector& target, const BlochVector& v) {
      return m == Measure::metric_d ? (target - v).norm() : std::sqrt(2 * (1 - target.dot(v)));
    };
    for (std::size_t k = 0; k < t.pairs.size(); ++k) {
      REQUIRE(inside(t.pairs[k].c, t.pairs[k].d));
      if (k == 0) continue;
      REQUIRE(err(a, t.pairs[k].c) <= err(a, t.pairs[k - 1].c) + 1e-12);
      REQUIRE(err(b, t.pairs[k].d) <= err(b, t.pairs[k - 1].d) + 1e-12);
    }
  }
}

TEST_CASE("property: metric alternation ends on the boundary") {
  SampleRng rng(54);
  for (int i = 0; i < 50; ++i) {
    const double theta = rng.uniform(0.1, kHalfPi);
    const auto [a, b] = standard_targets(theta);
    const IterationTrace t = alternate_minimize(Measure::metric_d, a, b, rng.in_ball());
    const double margin = metric_boundary_margin(theta, (a - t.limit.c).norm(), (b - t.limit.d).norm());
    REQUIRE(std::abs(margin) <= 1e-6);
  }
}

TEST_CASE("lagrange residual") {
  const auto [a, b] = standard_targets(pi / 3);
  const auto [c, d] = yu_oh_optimal_vectors(a, b, pi / 5);
  const ErrorPair r = lagrange_residual(a, b, c, d);
  CHECK(r.first <= kNum);
  CHECK(r.second <= kNum);

  // noise stationarity forces orthogonal targets
  const double phi = 0.5;
  const BlochVector x(1, 0, 0), y(0, 1, 0);
  const auto [cn, dn] = branciard_family(x, y, BlochVector(std::cos(0.3), std::sin(0.3), 0), 0.4);
  const double m = cn.dot(dn);
  const BlochVector ta = (cn - m * dn) / ((1 - m * m) * std::sin(phi));
  const BlochVector tb = (dn - m * cn) / ((1 - m * m) * std::cos(phi));
  CHECK(std::abs(ta.dot(tb)) <= kNum);

  // generic boundary pair off the stationary curve
  SampleRng rng(55);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    const BlochVector u = qmu::testing::random_in_plane_unit(rng);
    const double t = rng.uniform(0.2, 0.8);
    const BlochVector cc = t * u;
    const BlochVector dd = min_D_given_c(cc, qmu::testing::random_in_plane_unit(rng));
    if ((a - cc).norm() < 0.1 || (b - dd).norm() < 0.1 || (cc - cc.dot(dd) * dd).norm() < 0.1) continue;
    const ErrorPair rr = lagrange_residual(a, b, cc, dd);
    CHECK(std::max(rr.first, rr.second) > 0.01);
    ++checked;
  }
  CHECK(checked > 20);
  CHECK_THROWS_AS(lagrange_residual(a, b, a, b), std::domain_error);
}

TEST_CASE("admissible region sampling") {
  OptimizerConfig cfg;
  cfg.seed = 9;
  const auto one = sample_admissible_region(Measure::metric_d, 1.0, 1, cfg);
  const auto again = sample_admissible_region(Measure::metric_d, 1.0, 1, cfg);
  REQUIRE(one.size() == 1);
  CHECK(one[0].e_a == again[0].e_a);
  CHECK(one[0].e_b == again[0].e_b);
  CHECK_THROWS_AS(sample_admissible_region(Measure::metric_d, 1.0, 0, cfg), std::invalid_argument);
  CHECK_THROWS_AS(sample_admissible_region(Measure::metric_d, 2.0, 10, cfg), std::invalid_argument);

  const auto circle = sample_admissible_region(Measure::metric_d, kHalfPi, 100000, cfg);
  double worst = 10.0;
  for (const auto& p : circle) worst = std::min(worst, boundary_margin(p, kHalfPi));
  CHECK(worst >= -1e-9);
  // the lower-left arc of (1 - d_a)^2 + (1 - d_b)^2 = 1 bounds the cloud
  for (const auto& p : circle) {
    if (p.e_a <= 1 && p.e_b <= 1) REQUIRE((1 - p.e_a) * (1 - p.e_a) + (1 - p.e_b) * (1 - p.e_b) <= 1 + 1e-9);
  }

  const auto noise = sample_admissible_region(Measure::noise_eps, pi / 3, 100000, cfg);
  double lowest = 10.0;
  for (const auto& p : noise) lowest = std::min(lowest, branciard_lhs(p.e_a, p.e_b, pi / 3));
  CHECK(lowest >= std::pow(std::sin(pi / 3), 2) - 1e-3);

  // boundary-saturating draws are present
  SampleRng rng(10);
  int saturated = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto [c, d] = sample_compatible_pair(rng);
    REQUIRE(compatible(c, d));
    if (std::abs(compatibility_violation(c, d)) <= 1e-12) ++saturated;
  }
  CHECK(saturated > 100);
}

TEST_CASE("attainability: analytic optima land on their boundaries") {
  for (double theta : {pi / 6, pi / 4, pi / 3, kHalfPi}) {
    const auto [a, b] = standard_targets(theta);
    for (int k = 0; k <= 20; ++k) {
      const auto [c, d] = yu_oh_optimal_vectors(a, b, kHalfPi * k / 20);
      const ErrorPoint pm((a - c).norm(), (b - d).norm(), Measure::metric_d);
      REQUIRE(std::abs(boundary_margin(pm, theta)) <= kNum);
      const BlochVector m = branciard_sharp(a, b, theta * k / 20);
      const ErrorPoint pn(noise_symmetric(a, m), noise_symmetric(b, m), Measure::noise_eps);
      REQUIRE(std::abs(boundary_margin(pn, theta)) <= kNum);
    }
  }
}

TEST_CASE("property: orthogonal targets end on the lambda family, including negative lambda") {
  const auto [a, b] = standard_targets(kHalfPi);
  SampleRng rng(56);
  int negative = 0;
  for (int i = 0; i < 200; ++i) {
    const double r = std::sqrt(rng.uniform());
    const double t = rng.uniform(0, 2 * pi);
    const IterationTrace tr = alternate_minimize(Measure::noise_eps, a, b, {r * std::cos(t), r * std::sin(t), 0});
    const auto [c, d] = tr.limit;
    const double ma = c.dot(a), mb = d.dot(b);
    REQUIRE(std::hypot(ma, mb) == doctest::Approx(1.0).epsilon(kNum));
    const double lambda = std::abs(mb) > std::abs(ma) ? c.dot(b) / mb : d.dot(a) / ma;
    REQUIRE(std::abs(lambda) <= 1 + kNum);
    REQUIRE(near(c, ma * a + lambda * mb * b, kNum));
    REQUIRE(near(d, mb * b + lambda * ma * a, kNum));
    REQUIRE(std::abs(noise_boundary_margin(kHalfPi, noise_symmetric(a, c), noise_symmetric(b, d))) <= kNum);
    if (lambda < -1e-6) ++negative;
  }
  CHECK(negative > 0);

  // a negative-lambda member built directly is compatible and optimal
  const double phi = 0.6, lambda = -0.5;
  const BlochVector c = std::cos(phi) * a + lambda * std::sin(phi) * b;
  const BlochVector d = std::sin(phi) * b + lambda * std::cos(phi) * a;
  CHECK(compatible(c, d));
  CHECK(std::abs(compat_boundary_residual(c, d)) <= kNum);
  CHECK(std::abs(noise_boundary_margin(kHalfPi, noise_symmetric(a, c), noise_symmetric(b, d))) <= kNum);
}
