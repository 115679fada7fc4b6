#include "leggett/errors.hpp"
#include "leggett/inequality.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace leggett;
using testing::pi;

namespace {

SearchConfig bound_search(int starts = 32)
{
  SearchConfig c;
  c.starts = starts;
  c.seed = 1;
  c.threads = 1;
  return c;
}

} // namespace

TEST_SUITE("inequality")
{
  TEST_CASE("Leggett function for the singlet")
  {
    const CorrelationModel pes = CorrelationModel::pes();
    CHECK(std::abs(leggett_value(pes, build_layout(LayoutName::threeplus6, 0.0)) - 4.0) < 1e-12);
    CHECK(std::abs(leggett_value(pes, build_layout(LayoutName::threeplus6, 0.65)) - 4.0 * std::cos(0.325)) < 1e-12);
    CHECK(std::abs(leggett_value(pes, build_layout(LayoutName::threeplus7, 0.0)) - 4.0) < 1e-12);

    const CorrelationModel ecs = CorrelationModel::ecs(50.0, -1, MeasurementFamily::pseudo_spin);
    const SettingsLayout s = build_layout(LayoutName::threeplus6, 0.65);
    CHECK(std::abs(leggett_value(ecs, s) - leggett_value(pes, s)) < 1e-3);
  }

  TEST_CASE("Leggett function is symmetric within a group and bounded")
  {
    testing::DirectionSampler rng(51);
    const CorrelationModel m = CorrelationModel::ecs(1.7, 1, MeasurementFamily::pseudo_spin);
    for (LayoutName name : {LayoutName::threeplus7, LayoutName::threeplus6, LayoutName::original}) {
      SettingsLayout s = build_layout(name, 0.4);
      s = rotate_settings(rng.rotation(), rng.rotation(), s);
      const double l = leggett_value(m, s);
      CHECK(l >= 0.0);
      CHECK(l <= 4.0 + 1e-9);
      for (auto& g : s.groups)
        std::reverse(g.terms.begin(), g.terms.end());
      CHECK(std::abs(leggett_value(m, s) - l) < 1e-14);
    }
  }

  TEST_CASE("analytic bounds")
  {
    CHECK(std::abs(analytic_fmin(LayoutName::original, pi) - 4.0 / pi) < 1e-15);
    CHECK(analytic_fmin(LayoutName::threeplus6, 0.0) == 0.0);
    CHECK(std::abs(analytic_fmin(LayoutName::threeplus7, 0.25) - std::sin(0.125)) < 1e-15);
    CHECK(std::abs(analytic_fmin(LayoutName::threeplus6, -0.6) - 4.0 / 3.0 * std::sin(0.3)) < 1e-15);
    CHECK_THROWS_AS(analytic_fmin(LayoutName::chsh, 0.1), std::invalid_argument);
    const BoundResult b = analytic_bound(LayoutName::threeplus7, 0.25);
    CHECK(b.mode == BoundMode::analytic2d);
    CHECK(std::abs(b.bound - (4.0 - std::sin(0.125))) < 1e-15);
  }

  TEST_CASE("Malus model reproduces the 3+6 bound")
  {
    const CorrelationModel malus = CorrelationModel::pes();
    for (double phi : {0.2, 1.0}) {
      const BoundResult r = numeric_fmin(malus, build_layout(LayoutName::threeplus6, phi), bound_search());
      CHECK(std::abs(r.f_min - 4.0 / 3.0 * std::sin(phi / 2)) < 1e-3);
      CHECK(std::abs(r.f_direct - r.f_relaxed) < 1e-6);
      CHECK(r.per_term.size() == 6);
      CHECK(r.converged);
    }
  }

  TEST_CASE("coinciding settings give a zero bound at u = v")
  {
    const CorrelationModel malus = CorrelationModel::pes();
    for (LayoutName name : {LayoutName::threeplus6, LayoutName::threeplus7}) {
      const BoundResult r = numeric_fmin(malus, build_layout(name, 0.0), bound_search());
      CHECK(r.f_min < 1e-6);
      CHECK(angle_between(r.argmin_u, r.argmin_v) < 1e-3);
    }
  }

  TEST_CASE("3+7 Malus bound keeps the fallback properties")
  {
    const CorrelationModel malus = CorrelationModel::pes();
    // The point-mass minimum is tighter than |sin(phi/2)| but must never be looser.
    double previous = 0.0;
    for (double phi : {0.05, 0.1, 0.25, 0.5}) {
      const double f = numeric_fmin(malus, build_layout(LayoutName::threeplus7, phi), bound_search()).f_min;
      CHECK(f >= analytic_fmin(LayoutName::threeplus7, phi) - 1e-9);
      CHECK(f > previous);
      previous = f;
    }
  }

  TEST_CASE("doubling the starts never raises f_min")
  {
    const CorrelationModel m = CorrelationModel::ecs(2.0, -1, MeasurementFamily::pseudo_spin);
    const SettingsLayout s = build_layout(LayoutName::threeplus7, 0.3);
    const double f32 = numeric_fmin(m, s, bound_search(32)).f_min;
    const double f64 = numeric_fmin(m, s, bound_search(64)).f_min;
    CHECK(f64 <= f32 + 1e-9);
    CHECK(std::abs(f64 - f32) < 1e-6);
  }

  TEST_CASE("large-amplitude bounds coincide")
  {
    for (double phi : {0.15, 0.4}) {
      const SettingsLayout s = build_layout(LayoutName::threeplus7, phi);
      const double f5 = numeric_fmin(CorrelationModel::ecs(5.0, -1, MeasurementFamily::pseudo_spin), s, bound_search()).f_min;
      const double f50 =
          numeric_fmin(CorrelationModel::ecs(50.0, -1, MeasurementFamily::pseudo_spin), s, bound_search()).f_min;
      CHECK(std::abs(f5 - f50) < 5e-3);
    }
  }

  TEST_CASE("bound modes and layouts")
  {
    const CorrelationModel m = CorrelationModel::pes();
    CHECK_THROWS_AS(numeric_fmin(m, build_layout(LayoutName::original, 0.3), bound_search()), std::invalid_argument);
    CHECK_THROWS_AS(compute_bound(m, build_layout(LayoutName::original, 0.3), BoundMode::state_corrected, bound_search()),
                    std::invalid_argument);
    CHECK_THROWS_AS(compute_bound(m, build_layout(LayoutName::chsh, 0.3), BoundMode::analytic2d, bound_search()),
                    std::invalid_argument);
    CHECK(parse_bound_mode("corrected") == BoundMode::state_corrected);
    CHECK(parse_bound_mode(to_string(BoundMode::analytic2d)) == BoundMode::analytic2d);

    const LeggettEvaluation e =
        evaluate_leggett(m, build_layout(LayoutName::threeplus6, 0.65), BoundMode::analytic2d, bound_search());
    CHECK(std::abs(e.margin - (e.L - e.bound.bound)) < 1e-15);
    CHECK(e.violated == (e.margin > violation_tolerance));
    CHECK(e.violated);
  }

  TEST_CASE("CHSH values")
  {
    const CorrelationModel pes = CorrelationModel::pes();
    const ChshEvaluation d = chsh_value(pes, {pi / 2, 0.0}, {pi / 2, pi / 2}, {pi / 2, pi / 4}, {pi / 2, -pi / 4});
    CHECK(std::abs(std::abs(d.B) - 2.0 * std::sqrt(2.0)) < 1e-12);
    CHECK(d.violated == (d.B > 2.0));

    SearchConfig c = bound_search(16);
    const ChshEvaluation opt = optimize_chsh(pes, c);
    CHECK(std::abs(std::abs(opt.B) - 2.0 * std::sqrt(2.0)) < 1e-9);

    for (double alpha : {0.5, 2.0}) {
      const double k = kappa_K(alpha);
      const ChshEvaluation e = optimize_chsh(CorrelationModel::ecs(alpha, -1, MeasurementFamily::pseudo_spin), c);
      CHECK(std::abs(std::abs(e.B) - 2.0 * std::sqrt(1.0 + k * k)) < 1e-4);
    }
    const ChshEvaluation onoff = optimize_chsh(CorrelationModel::ecs(5.0, -1, MeasurementFamily::on_off), c);
    CHECK(std::abs(onoff.B) <= 2.0 + 1e-6);
  }
}
