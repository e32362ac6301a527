#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>

#include "quench/eff_temp.hpp"

using namespace quench;

namespace {

constexpr std::array<double, 5> kS = {0.01, 0.3, 0.9, 1.5, 7.0};
// 30-digit adaptive quadrature of the defining integral.
constexpr std::array<std::array<double, 5>, 3> kFRef = {{
    {36.715367866046722, 0.40450186993897971, 0.0019303058779548082, 0.023395495319080508, 0.32122993484113121},
    {0.82950686109225186, 0.096877646438877284, 0.00090597974928228147, 0.014914159858091412, 0.52758622613424658},
    {0.12120083395874563, 0.050255443608158266, 0.00085094781814677936, 0.019184258842911322, 2.0971325187121586},
}};

}  // namespace

TEST_CASE("quench integral by quadrature and in closed form") {
  for (int d = 1; d <= 3; ++d)
    for (std::size_t i = 0; i < kS.size(); ++i) {
      const double ref = kFRef[d - 1][i];
      CHECK(f_d(kS[i], d) == doctest::Approx(ref).epsilon(1e-9));
      CHECK(f_d_closed(kS[i], d) == doctest::Approx(ref).epsilon(1e-12));
    }
  CHECK(f_d_closed(0.5, 1) == doctest::Approx(0.10687625077858180794).epsilon(1e-14));
  CHECK(f_d(1.0, 2) == 0.0);
  CHECK_THROWS_AS(f_d(0.0, 1), DomainError);
  CHECK_THROWS_AS(f_d(0.5, 4), DomainError);
}

TEST_CASE("quench integral is continuous across s = 1") {
  for (int d = 1; d <= 3; ++d) {
    const double below = f_d_closed(1.0 - 1e-7, d);
    const double above = f_d_closed(1.0 + 1e-7, d);
    CHECK(std::abs(below) < 1e-12);
    CHECK(std::abs(above) < 1e-12);
  }
}

TEST_CASE("thermal integral") {
  CHECK(g_d(1.0, 2) == doctest::Approx(0.45867514538708189102).epsilon(1e-10));
  CHECK(g_d_closed(1.0, 2) == doctest::Approx(0.45867514538708189102).epsilon(1e-14));
  CHECK(g_d(0.1, 1) == doctest::Approx(13.579690321747564).epsilon(1e-9));
  CHECK(g_d(1.0, 1) == doctest::Approx(0.58640216303390717).epsilon(1e-9));
  CHECK(g_d(10.0, 1) == doctest::Approx(1.77806364612748e-5).epsilon(1e-9));
  CHECK(g_d(0.1, 3) == doctest::Approx(149.97456086384599).epsilon(1e-9));
  CHECK(g_d(1.0, 3) == doctest::Approx(0.68947243750832282).epsilon(1e-9));
  CHECK(g_d(10.0, 3) == doctest::Approx(1.8649067613950048e-6).epsilon(1e-9));
  CHECK_THROWS_AS(g_d_closed(1.0, 1), DomainError);
}

TEST_CASE("thermal integral decreases monotonically") {
  for (int d = 1; d <= 3; ++d) {
    double prev = g_d(0.05, d);
    for (double s = 0.1; s < 20.0; s *= 1.5) {
      const double v = g_d(s, d);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("asymptotic entries approach the integrals inside their guards") {
  for (int d = 1; d <= 3; ++d) {
    // the d = 2 entry keeps only the leading log, so its error decays like 1/log(s)
    const auto err = [d](double s) {
      return std::abs(f_d_asymptotic(s, d, AsymptoticRegime::small_s) / f_d_closed(s, d) - 1.0);
    };
    CHECK(err(1e-8) < err(1e-3));
    CHECK(err(1e-8) < 0.1);
    CHECK(f_d_asymptotic(1.0 + 1e-3, d, AsymptoticRegime::near_one) ==
          doctest::Approx(f_d_closed(1.0 + 1e-3, d)).epsilon(1e-2));
    CHECK(g_d_asymptotic(40.0, d, AsymptoticRegime::large_s) == doctest::Approx(g_d(40.0, d)).epsilon(5e-2));
    CHECK_THROWS_AS(f_d_asymptotic(0.5, d, AsymptoticRegime::small_s), DomainError);
    CHECK_THROWS_AS(f_d_asymptotic(2.0, d, AsymptoticRegime::large_s), DomainError);
    CHECK_THROWS_AS(g_d_asymptotic(1.0, d, AsymptoticRegime::near_one), DomainError);
  }
}

TEST_CASE("average inverse temperature against bisection references") {
  struct Case {
    int d;
    double x;
    double y;
  };
  for (const Case c : {Case{1, 0.5, 4.2536914185454}, Case{2, 0.5, 4.04354012968988},
                       Case{3, 0.5, 3.72840174041168}, Case{1, 2.0, 1.28058105931234},
                       Case{3, 0.02, 3.61651239125873}, Case{1, 0.02, 3.99375711424809}}) {
    QuenchSpec s{.m0 = 1.0, .m = c.x, .d = c.d};
    if (c.d == 3) s.cutoff = 1e3;
    const auto r = solve_average_beta(s);
    CAPTURE(c.d);
    CAPTURE(c.x);
    CHECK(r.y == doctest::Approx(c.y).epsilon(1e-9));
    CHECK(r.residual < 1e-8);
    CHECK(r.bracket_lo <= r.y);
    CHECK(r.y <= r.bracket_hi);
  }
}

TEST_CASE("average inverse temperature scales as 1/m0") {
  const auto a = solve_average_beta({.m0 = 1.0, .m = 0.3});
  const auto b = solve_average_beta({.m0 = 4.0, .m = 1.2});
  CHECK(b.beta_bar.value() == doctest::Approx(a.beta_bar.value() / 4.0).epsilon(1e-9));
}

TEST_CASE("average inverse temperature special cases") {
  CHECK(solve_average_beta({.m0 = 1.0, .m = 1.0}).beta_bar.is_infinite());
  CHECK_THROWS_AS(solve_average_beta({.m0 = 1.0, .m = 0.0}), DomainError);
  CHECK_THROWS_AS(beta_expansion({.m0 = 1.0, .m = 0.5}), DomainError);
}
