#include "leggett/correlation.hpp"
#include "leggett/fock_oracle.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace leggett;
using testing::pi;

namespace {

fock::FockOperator spin_along(const fock::PseudoSpinOps& s, const Direction& d) { return s.along(to_cartesian(d)); }

// Oracle for the coefficient families: the state sum c'(x,y)|x a>|y a> with
// c' = M_a c M_b^T built in the number basis, measured with O (x) O.
double oracle_mapped_correlation(const CorrelationModel& m, const Direction& a, const Direction& b, bool onoff)
{
  const double alpha = m.alpha();
  const std::size_t d = fock::truncation_dim(alpha);
  const EcsSpec spec = make_ecs(alpha, m.state() == StateKind::ecs_plus ? 1 : -1);
  const Mat2c c = rotation_map(a.theta, a.phi) * spec.coefficients() * rotation_map(b.theta, b.phi).transpose();
  const fock::TwoModeState psi = fock::from_coherent_coefficients(alpha, c, d);
  const fock::FockOperator o = onoff ? fock::on_off(d) : fock::parity(d);
  return std::real(fock::expectation(psi, o, o));
}

double oracle_mapped_local(double alpha, const Direction& u, const Direction& a, int reference, bool onoff)
{
  const std::size_t d = fock::truncation_dim(alpha);
  Vec2c e = Vec2c::Zero();
  e(reference) = 1.0;
  const Vec2c c = rotation_map(a.theta, a.phi) * rotation_map(u.theta, u.phi) * e;
  const fock::FockVector v{c(0) * fock::coherent(alpha, d).amplitudes + c(1) * fock::coherent(-alpha, d).amplitudes};
  return std::real(fock::expectation(v, onoff ? fock::on_off(d) : fock::parity(d)));
}

} // namespace

TEST_SUITE("correlation")
{
  TEST_CASE("singlet correlation and Malus law")
  {
    const Vec3 z{0, 0, 1}, x{1, 0, 0};
    CHECK(pes_correlation(z, z) == -1.0);
    CHECK(pes_correlation(z, x) == 0.0);
    CHECK(std::abs(pes_correlation(z, to_cartesian({0.65, 0.0})) + std::cos(0.65)) < 1e-15);
    CHECK(malus_local_avg(x, x) == 1.0);
    CHECK(malus_local_avg(-1.0 * x, x) == -1.0);
    CHECK(malus_local_avg(z, x) == 0.0);

    const CorrelationModel pes = CorrelationModel::pes();
    CHECK(std::abs(pes.correlation({0.3, 0.2}, {0.3, 0.2}) + 1.0) < 1e-15);
    CHECK(std::abs(pes.local_avg_b({0.3, 0.2}, {0.3, 0.2}) - 1.0) < 1e-15);
  }

  TEST_CASE("ECS- pseudo-spin closed form")
  {
    const EcsSpec s = make_ecs(1.3, -1);
    CHECK(std::abs(ecs_pseudospin_correlation(s, {0, 0, 1}, {0, 0, 1}) + 1.0) < 1e-15);
    const Vec3 eq = to_cartesian({pi / 2, 0.7});
    CHECK(std::abs(ecs_pseudospin_correlation(s, eq, eq) + kappa_K(1.3)) < 1e-15);
  }

  TEST_CASE("pseudo-spin correlations against the oracle")
  {
    testing::DirectionSampler rng(41);
    for (double alpha : {0.5, 1.0, 2.0}) {
      const std::size_t d = fock::truncation_dim(alpha);
      const auto s = fock::pseudo_spin_ops(d);
      const fock::TwoModeState minus = fock::ecs_state(alpha, -1, d);
      const fock::TwoModeState plus = fock::ecs_state(alpha, 1, d);
      const CorrelationModel m_minus = CorrelationModel::ecs(alpha, -1, MeasurementFamily::pseudo_spin);
      const CorrelationModel m_lab = CorrelationModel::ecs(alpha, 1, MeasurementFamily::pseudo_spin, {.mirror_b = false});
      const CorrelationModel m_mirror = CorrelationModel::ecs(alpha, 1, MeasurementFamily::pseudo_spin);
      for (int i = 0; i < 20; ++i) {
        const Direction a = rng.direction(), b = rng.direction();
        const double e_minus = std::real(fock::expectation(minus, spin_along(s, a), spin_along(s, b)));
        const double e_plus = std::real(fock::expectation(plus, spin_along(s, a), spin_along(s, b)));
        CHECK(std::abs(m_minus.correlation(a, b) - e_minus) < 1e-8);
        CHECK(std::abs(m_lab.correlation(a, b) - e_plus) < 1e-8);
        // The mirrored frame is the lab frame with b reflected through the y-z plane.
        const Direction b_mirror = to_direction({-to_cartesian(b)[0], to_cartesian(b)[1], to_cartesian(b)[2]});
        CHECK(std::abs(m_mirror.correlation(a, b_mirror) - e_plus) < 1e-8);
        const double ct = std::cos(a.theta) * std::cos(b.theta);
        const double ss = std::sin(a.theta) * std::sin(b.theta);
        CHECK(std::abs(m_mirror.correlation(a, b) -
                       (ct + std::tanh(2 * alpha * alpha) * kappa_K(alpha) * ss * std::cos(a.phi - b.phi))) < 1e-12);
      }
    }
  }

  TEST_CASE("pseudo-spin local averages")
  {
    const double alpha = 1.0;
    const Vec3 m = pseudospin_bloch(alpha);
    const Vec3 a = to_cartesian({0.8, 0.4});
    CHECK(std::abs(ecs_pseudospin_local_avg(alpha, a, a) - dot(a, m)) < 1e-15);
    const Vec3 perp = normalized(cross(a, {0, 1, 0}));
    CHECK(std::abs(ecs_pseudospin_local_avg(alpha, perp, a) + dot(a, m)) < 1e-15);

    testing::DirectionSampler rng(42);
    for (double al : {0.5, 1.0, 2.0}) {
      const std::size_t d = fock::truncation_dim(al);
      const auto s = fock::pseudo_spin_ops(d);
      const CorrelationModel model = CorrelationModel::ecs(al, -1, MeasurementFamily::pseudo_spin);
      for (int i = 0; i < 20; ++i) {
        const Direction u = rng.direction(), av = rng.direction();
        const fock::FockOperator su = spin_along(s, u), sa = spin_along(s, av);
        const fock::FockOperator sandwich = su * sa * su;
        const double ea = std::real(fock::expectation(fock::coherent(al, d), sandwich));
        const double eb = std::real(fock::expectation(fock::coherent(-al, d), sandwich));
        CHECK(std::abs(model.local_avg_a(u, av) - ea) < 1e-8);
        CHECK(std::abs(model.local_avg_b(u, av) - eb) < 1e-8);
      }
    }
  }

  TEST_CASE("on/off and parity correlations against the oracle")
  {
    testing::DirectionSampler rng(43);
    for (double alpha : {0.5, 1.0, 2.0}) {
      for (int sign : {-1, 1}) {
        const CorrelationModel onoff = CorrelationModel::ecs(alpha, sign, MeasurementFamily::on_off);
        const CorrelationModel parity = CorrelationModel::ecs(alpha, sign, MeasurementFamily::parity);
        const CorrelationModel raw = CorrelationModel::ecs(alpha, sign, MeasurementFamily::on_off, {.renormalize = false});
        for (int i = 0; i < 5; ++i) {
          const Direction a = rng.direction(), b = rng.direction(), u = rng.direction();
          CHECK(std::abs(onoff.correlation(a, b) - oracle_mapped_correlation(onoff, a, b, true)) < 1e-8);
          CHECK(std::abs(parity.correlation(a, b) - oracle_mapped_correlation(parity, a, b, false)) < 1e-8);
          CHECK(std::abs(onoff.local_avg_a(u, a) - oracle_mapped_local(alpha, u, a, 0, true)) < 1e-8);
          CHECK(std::abs(onoff.local_avg_b(u, b) - oracle_mapped_local(alpha, u, b, 1, true)) < 1e-8);
          CHECK(std::abs(parity.local_avg_a(u, a) - oracle_mapped_local(alpha, u, a, 0, false)) < 1e-8);
          // Without renormalization the value is the unnormalized contraction.
          const Mat2c c = rotation_map(a.theta, a.phi) * make_ecs(alpha, sign).coefficients() *
                          rotation_map(b.theta, b.phi).transpose();
          const double n2 = std::real(
              c.conjugate().cwiseProduct(gram_matrix(alpha) * c * gram_matrix(alpha).transpose()).sum());
          CHECK(std::abs(raw.correlation(a, b) - onoff.correlation(a, b) * n2) < 1e-12);
        }
      }
    }
  }

  TEST_CASE("on/off at large amplitude")
  {
    testing::DirectionSampler rng(44);
    const CorrelationModel m = CorrelationModel::ecs(5.0, -1, MeasurementFamily::on_off);
    const Direction fixed{pi, 0.0};
    for (int i = 0; i < 100; ++i) {
      const Direction a = rng.direction(), b = rng.direction(), u = rng.direction();
      CHECK(std::abs(m.correlation(a, b) - 1.0) < 1e-6);
      CHECK(std::abs(m.local_avg_a(u, a) - 1.0) < 1e-6);
      // Factorization into the marginals of the reduced states.
      const double ma = 0.5 * (m.local_avg_a(fixed, a) + m.local_avg_b(fixed, a));
      const double mb = 0.5 * (m.local_avg_a(fixed, b) + m.local_avg_b(fixed, b));
      CHECK(std::abs(m.correlation(a, b) - ma * mb) < 1e-6);
    }
    // R(theta = pi, phi = 0) fixes |alpha>.
    const CorrelationModel m1 = CorrelationModel::ecs(1.0, -1, MeasurementFamily::on_off);
    const Direction a{1.1, -0.4};
    const Mat2c ra = rotation_map(a.theta, a.phi);
    const Vec2c c = ra.col(0);
    const double direct = std::real(c.dot(operator_elements(OperatorFamily::onoff, 1.0) * c)) /
                          std::real(c.dot(gram_matrix(1.0) * c));
    CHECK(std::abs(m1.local_avg_a(fixed, a) - direct) < 1e-14);
  }

  TEST_CASE("values stay in [-1, 1]")
  {
    testing::DirectionSampler rng(45);
    for (int i = 0; i < 1000; ++i) {
      const double alpha = rng.uniform(0.05, 6.0);
      const int sign = i % 2 ? 1 : -1;
      const auto family = i % 3 == 0 ? MeasurementFamily::on_off
                          : i % 3 == 1 ? MeasurementFamily::parity
                                       : MeasurementFamily::pseudo_spin;
      const CorrelationModel m = CorrelationModel::ecs(alpha, sign, family);
      const Direction a = rng.direction(), b = rng.direction(), u = rng.direction();
      CHECK(std::abs(m.correlation(a, b)) <= 1.0 + 1e-10);
      CHECK(std::abs(m.local_avg_a(u, a)) <= 1.0 + 1e-10);
      CHECK(std::abs(m.local_avg_b(u, b)) <= 1.0 + 1e-10);
    }
  }

  TEST_CASE("continuity in the angles")
  {
    testing::DirectionSampler rng(46);
    const double h = 1e-4;
    for (auto family : {MeasurementFamily::pseudo_spin, MeasurementFamily::on_off, MeasurementFamily::parity}) {
      const CorrelationModel m = CorrelationModel::ecs(1.2, -1, family);
      for (int i = 0; i < 50; ++i) {
        const Direction a = rng.direction(), b = rng.direction();
        const double e = m.correlation(a, b);
        CHECK(std::abs(m.correlation({a.theta + h, a.phi}, b) - e) / h < 10.0);
        CHECK(std::abs(m.correlation(a, {b.theta, b.phi + h}) - e) / h < 10.0);
        const double l = m.local_avg_a(a, b);
        CHECK(std::abs(m.local_avg_a({a.theta, a.phi + h}, b) - l) / h < 10.0);
      }
    }
  }

  TEST_CASE("large-amplitude limit approaches the singlet")
  {
    testing::DirectionSampler rng(47);
    for (auto [alpha, tol] : {std::pair{5.0, 0.01}, {50.0, 1e-4}}) {
      const CorrelationModel m = CorrelationModel::ecs(alpha, -1, MeasurementFamily::pseudo_spin);
      const CorrelationModel pes = CorrelationModel::pes();
      double worst = 0.0;
      for (int i = 0; i < 100; ++i) {
        const Direction a = rng.direction(), b = rng.direction();
        worst = std::max(worst, std::abs(m.correlation(a, b) - pes.correlation(a, b)));
        CHECK(std::abs(m.correlation(a, b) - m.correlation(b, a)) < 1e-15);
      }
      CHECK(worst < tol);
    }
  }

  TEST_CASE("construction rules")
  {
    CHECK_THROWS_AS(CorrelationModel::ecs(1.0, -1, MeasurementFamily::qubit_projective), std::invalid_argument);
    CHECK_THROWS_AS(CorrelationModel::ecs(0.01, -1, MeasurementFamily::on_off), std::invalid_argument);
    CHECK_NOTHROW(CorrelationModel::ecs(0.01, 1, MeasurementFamily::pseudo_spin));
    CHECK_THROWS_AS(CorrelationModel::make(StateKind::pes, MeasurementFamily::parity, 1.0), std::invalid_argument);
    CHECK(parse_state_kind("ecs+") == StateKind::ecs_plus);
    CHECK(parse_state_kind(to_string(StateKind::ecs_minus)) == StateKind::ecs_minus);
    CHECK(parse_family("on-off") == MeasurementFamily::on_off);
    CHECK_THROWS_AS(parse_family("homodyne"), std::invalid_argument);
  }
}
