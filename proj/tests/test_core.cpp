#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "quench/core.hpp"

using namespace quench;

TEST_CASE("spec validation rejects out-of-domain parameters") {
  QuenchSpec s;
  CHECK_NOTHROW(s.validate());
  s.m0 = 0.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = {};
  s.m = -1.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = {};
  s.lambda = -0.1;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = {};
  s.d = 4;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = {};
  s.m = 3.0;
  s.cutoff = 2.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.cutoff = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(s.validate(), DomainError);
}

TEST_CASE("resolved cutoff defaults to 100 m0 below three dimensions") {
  QuenchSpec s;
  s.m0 = 2.0;
  CHECK(s.resolved_cutoff() == 200.0);
  s.d = 2;
  CHECK(s.resolved_cutoff() == 200.0);
  s.d = 3;
  CHECK_THROWS_AS(s.resolved_cutoff(), DomainError);
  s.cutoff = 50.0;
  CHECK(s.resolved_cutoff() == 50.0);
}

TEST_CASE("angular measures") {
  CHECK(angular_measure(1) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-15));
  CHECK(angular_measure(2) == doctest::Approx(0.5 / std::numbers::pi).epsilon(1e-15));
  CHECK(angular_measure(3) == doctest::Approx(0.5 / (std::numbers::pi * std::numbers::pi)).epsilon(1e-15));
  CHECK_THROWS_AS(solid_angle(0), DomainError);
  CHECK(omega(3.0, 4.0) == 5.0);
}

TEST_CASE("grid construction guards") {
  GridProfile p;
  p.nodes = 32;
  CHECK_THROWS_AS(build_grid(1, 10.0, p), DomainError);
  p.nodes = 256;
  CHECK_THROWS_AS(build_grid(1, -1.0, p), DomainError);
  CHECK_THROWS_AS(build_grid(0, 10.0, p), DomainError);
  p.spacing = Spacing::uniform_geometric;
  p.k_mid = 20.0;
  CHECK_THROWS_AS(build_grid(1, 10.0, p), DomainError);
}

TEST_CASE("grids are ascending with positive weights for every spacing") {
  for (auto spacing : {Spacing::log_uniform, Spacing::geometric, Spacing::uniform, Spacing::uniform_geometric}) {
    GridProfile p;
    p.spacing = spacing;
    p.nodes = 512;
    p.k_min = 1e-3;
    p.k_mid = 2.0;
    for (int d = 1; d <= 3; ++d) {
      const auto g = build_grid(d, 100.0, p);
      CHECK(g.size() % 4 == 0);
      CHECK(g.size() >= 512);
      const auto k = g.nodes();
      const auto w = g.weights();
      for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(w[i] > 0.0);
        CHECK(k[i] > 0.0);
        CHECK(k[i] < 100.0);
        if (i > 0) CHECK(k[i] > k[i - 1]);
      }
      CHECK(g.coarsened().size() == g.size() / 2);
    }
  }
}

TEST_CASE("composite Gauss-Legendre panels integrate cubics exactly") {
  GridProfile p;
  p.spacing = Spacing::uniform;
  p.nodes = 64;
  const auto g = build_grid(1, 3.0, p);
  // int_0^3 (k^3 - 2k + 1) dk / pi
  const double exact = (81.0 / 4.0 - 9.0 + 3.0) / std::numbers::pi;
  CHECK(radial_integrate(g, [](double k) { return k * k * k - 2 * k + 1; }) ==
        doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("grid integral of exp(-k) converges on every spacing") {
  for (auto spacing : {Spacing::log_uniform, Spacing::geometric, Spacing::uniform_geometric}) {
    GridProfile p;
    p.spacing = spacing;
    p.nodes = 2048;
    p.k_min = 1e-4;
    p.k_mid = 10.0;
    const auto g = build_grid(1, 60.0, p);
    const double v = radial_integrate(g, [](double k) { return std::exp(-k); }) * std::numbers::pi;
    CHECK(v == doctest::Approx(1.0 - std::exp(-60.0)).epsilon(1e-10));
  }
}

TEST_CASE("d = 3 radial integral against a high-precision reference") {
  GridProfile p;
  p.nodes = 4096;
  p.k_min = 1e-4;
  p.k_mid = 10.0;
  const auto g = build_grid(3, 100.0, p);
  const double v = radial_integrate(g, [](double k) { return 1.0 / (2.0 * std::hypot(k, 1.0)); });
  CHECK(v == doctest::Approx(126.5907076786151751).epsilon(1e-12));
}

TEST_CASE("radial integration is deterministic and rejects non-finite integrands") {
  const auto g = default_grid(QuenchSpec{.m0 = 1.0, .m = 0.5});
  auto f = [](double k) { return std::sin(k) / (1.0 + k * k); };
  CHECK(radial_integrate(g, f) == radial_integrate(g, f));
  CHECK_THROWS_AS(radial_integrate(g, [](double k) { return k > 50.0 ? std::nan("") : 1.0; }), DomainError);
}

TEST_CASE("compensated summation recovers cancelled terms") {
  CompensatedSum s;
  s.add(1.0);
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  CHECK(s.value() == 2.0);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CompensatedSum a;
  long double ref = 0.0L;
  for (int i = 0; i < 100000; ++i) {
    const double x = u(rng) * std::pow(10.0, 8 * u(rng));
    a.add(x);
    ref += x;
  }
  CHECK(a.value() == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
}

TEST_CASE("uniform-geometric grid places the requested log panels") {
  GridProfile p;
  p.spacing = Spacing::uniform_geometric;
  p.k_mid = 4.0;
  p.geometric_step = 0.02;
  p.nodes = 4 * 400;
  const auto g = build_grid(2, 40.0, p);
  const auto k = g.nodes();
  std::size_t above = 0;
  for (double x : k)
    if (x > 4.0) ++above;
  CHECK(above == 4 * static_cast<std::size_t>(std::ceil(std::log(10.0) / 0.02)));
  // int d^2k/(2pi)^2 exp(-k) = 1/(2 pi) (1 - e^{-L}(1 + L))
  const double v = radial_integrate(g, [](double x) { return std::exp(-x); });
  CHECK(v == doctest::Approx((1.0 - std::exp(-40.0) * 41.0) / (2.0 * std::numbers::pi)).epsilon(1e-10));
}
