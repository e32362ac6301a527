#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "quench/mode_kernels.hpp"

using namespace quench;

namespace {

MomentumGrid odd_grid() {
  GridProfile p;
  p.spacing = Spacing::uniform_geometric;
  p.k_mid = 4.0;
  p.nodes = 1000;  // not a multiple of the reduction block
  return build_grid(2, 40.0, p);
}

}  // namespace

TEST_CASE("initial arrays hold the t = 0 basis") {
  const auto g = odd_grid();
  const auto s = ModeArrays::initial(g, 1.0, 2.0);
  REQUIRE(s.size() == g.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s.a[i] == 1.0);
    CHECK(s.b_dot[i] == 1.0);
    CHECK(s.a_dot[i] == 0.0);
    CHECK(s.b[i] == 0.0);
  }
  CHECK(kernels::max_wronskian_deviation(s) == 0.0);
  CHECK(kernels::first_non_finite(s) == s.size());
}

TEST_CASE("fluctuation sum at t = 0 matches direct quadrature") {
  const auto g = odd_grid();
  auto s = ModeArrays::initial(g, 1.0, 2.0);
  const double direct = radial_integrate(g, [](double k) {
    return 1.0 / (2.0 * omega(k, 1.0)) - 1.0 / (2.0 * omega(k, 2.0));
  });
  CHECK(kernels::drift_and_sum_serial(s, 0.0) == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("serial and parallel kernels are bitwise identical") {
  const auto g = odd_grid();
  auto a = ModeArrays::initial(g, 1.0, 0.5);
  auto b = a;
  const double h = 0.01;
  double sa = kernels::drift_and_sum_serial(a, ForestRuth::c[0] * h);
  double sb = kernels::drift_and_sum_parallel(b, ForestRuth::c[0] * h);
  CHECK(sa == sb);
  for (int n = 0; n < 200; ++n) {
    const double m_eff_sq = 0.25 + 0.1 * std::sin(0.1 * n);
    sa = kernels::kick_drift_sum_serial(a, ForestRuth::d[n % 3] * h, m_eff_sq, ForestRuth::c[1] * h);
    sb = kernels::kick_drift_sum_parallel(b, ForestRuth::d[n % 3] * h, m_eff_sq, ForestRuth::c[1] * h);
    REQUIRE(sa == sb);
  }
  CHECK(a.a == b.a);
  CHECK(a.b_dot == b.b_dot);
}

TEST_CASE("symplectic steps preserve the Wronskian") {
  const auto g = odd_grid();
  auto s = ModeArrays::initial(g, 1.0, 2.0);
  const double dt = 0.02 / std::hypot(40.0, 2.0);
  kernels::drift_and_sum_serial(s, ForestRuth::c[0] * dt);
  for (int n = 0; n < 2000; ++n) {
    kernels::kick_drift_sum_serial(s, ForestRuth::d[0] * dt, 4.0, ForestRuth::c[1] * dt);
    kernels::kick_drift_sum_serial(s, ForestRuth::d[1] * dt, 4.0, ForestRuth::c[2] * dt);
    kernels::kick_drift_sum_serial(s, ForestRuth::d[2] * dt, 4.0, ForestRuth::c[3] * dt + ForestRuth::c[0] * dt);
  }
  CHECK(kernels::max_wronskian_deviation(s) < 1e-12);
}

TEST_CASE("Forest-Ruth coefficients sum to one") {
  CHECK(ForestRuth::c[0] + ForestRuth::c[1] + ForestRuth::c[2] + ForestRuth::c[3] == doctest::Approx(1.0));
  CHECK(ForestRuth::d[0] + ForestRuth::d[1] + ForestRuth::d[2] == doctest::Approx(1.0));
}

TEST_CASE("non-finite entries are located") {
  auto s = ModeArrays::initial(odd_grid(), 1.0, 2.0);
  s.b[517] = std::numeric_limits<double>::quiet_NaN();
  CHECK(kernels::first_non_finite(s) == 517);
}
