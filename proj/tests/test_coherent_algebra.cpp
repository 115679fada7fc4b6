#include "leggett/coherent_algebra.hpp"
#include "leggett/errors.hpp"
#include "leggett/fock_oracle.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <stdexcept>

using namespace leggett;
using testing::pi;

namespace {

fock::FockVector from_coeffs(const Vec2c& c, double alpha, std::size_t d)
{
  return {c(0) * fock::coherent(alpha, d).amplitudes + c(1) * fock::coherent(-alpha, d).amplitudes};
}

double max_abs(const Mat2c& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

TEST_SUITE("coherent_algebra")
{
  TEST_CASE("log-domain arithmetic matches direct arithmetic")
  {
    testing::DirectionSampler rng(31);
    for (int i = 0; i < 500; ++i) {
      const double a = rng.uniform(-50.0, 50.0), b = rng.uniform(-50.0, 50.0);
      const double sum = (LogValue::from_double(a) + LogValue::from_double(b)).to_double();
      const double diff = (LogValue::from_double(a) - LogValue::from_double(b)).to_double();
      const double prod = (LogValue::from_double(a) * LogValue::from_double(b)).to_double();
      CHECK(std::abs(sum - (a + b)) <= 1e-14 * (std::abs(a) + std::abs(b)));
      CHECK(std::abs(diff - (a - b)) <= 1e-14 * (std::abs(a) + std::abs(b)));
      CHECK(std::abs(prod - a * b) <= 1e-14 * std::abs(a * b));
    }
    CHECK((LogValue::from_double(2.0) - LogValue::from_double(2.0)).sign == 0);
    CHECK((LogValue::from_double(0.0) + LogValue::from_double(-3.0)).to_double() == doctest::Approx(-3.0).epsilon(1e-15));
    // Far beyond double range.
    const LogValue huge = LogValue::from_log(1000.0);
    CHECK(std::abs((huge + huge).log_magnitude - (1000.0 + std::log(2.0))) < 1e-12);
  }

  TEST_CASE("log sinh")
  {
    CHECK(std::abs(log_sinh(0.5) - std::log(std::sinh(0.5))) < 1e-15);
    CHECK(std::abs(log_sinh(30.0) - std::log(std::sinh(30.0))) < 1e-13);
    CHECK(std::abs(log_sinh(2e4) - (2e4 - std::log(2.0))) < 1e-9);
  }

  TEST_CASE("ECS coefficients and normalization")
  {
    for (double alpha : {0.05, 0.3, 1.0, 2.5}) {
      for (int sign : {-1, 1}) {
        const EcsSpec s = make_ecs(alpha, sign);
        CHECK(std::abs(s.kappa() - std::exp(-2 * alpha * alpha)) < 1e-16);
        const Mat2c c = s.coefficients();
        const Mat2c g = gram_matrix(alpha);
        const double n2 = std::real(c.conjugate().cwiseProduct(g * c * g.transpose()).sum());
        CHECK(std::abs(n2 - 1.0) < 1e-12);
      }
    }
    CHECK_THROWS_AS(make_ecs(-1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_ecs(1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_ecs(0.0, -1), std::invalid_argument);
  }

  TEST_CASE("K(alpha) values and limits")
  {
    CHECK(kappa_K(0.0) == 1.0);
    CHECK(kappa_K(0.01) > 0.9999);
    CHECK(std::abs(kappa_K(1.0) - 0.94321) < 1e-5);
    CHECK(std::abs(kappa_K(1.5) - 0.90764) < 1e-5);
    CHECK(std::abs(kappa_K(5.0) - 0.98984) < 1e-5);
    CHECK(kappa_K(50.0) > 0.999);
    CHECK(kappa_K(50.0) < 1.0);
    CHECK(std::isfinite(kappa_K(100.0)));

    double k_min = 2.0;
    for (int i = 0; i <= 990; ++i)
      k_min = std::min(k_min, kappa_K(0.1 + 0.01 * i));
    CHECK(k_min >= 0.905);
    CHECK(k_min <= 0.910);
  }

  TEST_CASE("K(alpha) is fast and continuous")
  {
    const auto t0 = std::chrono::steady_clock::now();
    const double k = kappa_K(100.0);
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    CHECK(std::isfinite(k));
    CHECK(ms < 10.0);

    double prev_k = kappa_K(0.0);
    Vec3 prev_m = pseudospin_bloch(0.0);
    double worst = 0.0;
    for (int i = 1; i <= 10000; ++i) {
      const double a = 1e-3 * i;
      const double kk = kappa_K(a);
      const Vec3 m = pseudospin_bloch(a);
      worst = std::max({worst, std::abs(kk - prev_k), norm(m - prev_m)});
      prev_k = kk;
      prev_m = m;
    }
    CHECK(worst < 1e-2);
  }

  TEST_CASE("K(alpha) against the oracle at equatorial settings")
  {
    for (double alpha : {0.5, 1.0, 2.0}) {
      const std::size_t d = fock::truncation_dim(alpha);
      const auto s = fock::pseudo_spin_ops(d);
      const Complex e = fock::expectation(fock::ecs_state(alpha, -1, d), s.s_x(), s.s_x());
      CHECK(std::abs(-std::real(e) - kappa_K(alpha)) < 1e-8);
    }
  }

  TEST_CASE("pseudo-spin Bloch vector")
  {
    const Vec3 m0 = pseudospin_bloch(0.0);
    CHECK(m0[0] == 0.0);
    CHECK(m0[2] == -1.0);
    CHECK(pseudospin_bloch(1.7)[1] == 0.0);

    for (double alpha : {0.3, 1.0, 2.2}) {
      const std::size_t d = fock::truncation_dim(alpha);
      const auto s = fock::pseudo_spin_ops(d);
      const fock::FockVector k = fock::coherent(alpha, d);
      const Vec3 m = pseudospin_bloch(alpha);
      CHECK(std::abs(std::real(fock::expectation(k, s.s_x())) - m[0]) < 1e-8);
      CHECK(std::abs(std::real(fock::expectation(k, s.s_y())) - m[1]) < 1e-8);
      CHECK(std::abs(std::real(fock::expectation(k, s.s_z)) - m[2]) < 1e-8);
    }

    for (int i = 0; i <= 500; ++i) {
      const double a = 0.1 * i;
      const Vec3 m = pseudospin_bloch(a);
      CHECK(norm(m) <= 1.0 + 1e-12);
      // |m|^2 = K (1 - e^{-4a^2}) + e^{-4a^2}
      const double e4 = std::exp(-4 * a * a);
      CHECK(std::abs(dot(m, m) - (kappa_K(a) * (1 - e4) + e4)) < 1e-12);
    }
  }

  TEST_CASE("rotation map")
  {
    const Mat2c flip = rotation_map(pi, 0.0);
    CHECK(std::abs(flip(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(flip(1, 1) + 1.0) < 1e-15);
    CHECK(std::abs(flip(0, 1)) < 1e-15);

    const Mat2c swap = rotation_map(0.0, 0.4);
    CHECK(std::abs(swap(1, 0) - std::exp(Complex{0.0, -0.4})) < 1e-15);
    CHECK(std::abs(swap(0, 1) - std::exp(Complex{0.0, 0.4})) < 1e-15);
    CHECK(std::abs(swap(0, 0)) < 1e-15);

    const Mat2c u = rotation_map(0.3, 2.1);
    CHECK(max_abs(u.adjoint() * u - Mat2c::Identity()) < 1e-12);
  }

  TEST_CASE("pseudo-spin map")
  {
    const Mat2c m = pseudospin_map(pi / 2, 0.0);
    CHECK(max_abs(m - Mat2c(Eigen::Vector2cd(1.0, -1.0).asDiagonal())) < 1e-15);

    testing::DirectionSampler rng(32);
    for (int i = 0; i < 20; ++i) {
      const Direction u = rng.direction();
      const Mat2c p = pseudospin_map(u.theta, u.phi);
      CHECK(max_abs(p * p - Mat2c::Identity()) < 1e-12);
      CHECK(max_abs(p.adjoint() * p - Mat2c::Identity()) < 1e-12);
    }
  }

  TEST_CASE("pseudo-spin map against the oracle")
  {
    // Fidelity of the mapped coefficients with (u.s)|alpha>. s_- carries the
    // odd cat onto the even one only up to the factor K(alpha), so the
    // fidelity approaches 1 as slowly as K does.
    testing::DirectionSampler rng(33);
    auto worst_fidelity = [&](double alpha) {
      const std::size_t d = fock::truncation_dim(alpha);
      const auto s = fock::pseudo_spin_ops(d);
      double worst = 1.0;
      for (int i = 0; i < 10; ++i) {
        const Direction u = rng.direction();
        const fock::FockVector exact = s.along(to_cartesian(u)).apply(fock::coherent(alpha, d));
        const Vec2c c = pseudospin_map(u.theta, u.phi).col(0);
        worst = std::min(worst, fock::fidelity(from_coeffs(c, alpha, d), exact));
      }
      return worst;
    };
    CHECK(worst_fidelity(3.0) > 0.97);
    for (double alpha : {3.0, 5.0})
      CHECK(worst_fidelity(alpha) >= kappa_K(alpha) - 1e-6);
    CHECK(worst_fidelity(10.0) > 0.99);
  }

  TEST_CASE("operator elements")
  {
    const Mat2c on5 = operator_elements(OperatorFamily::onoff, 5.0);
    CHECK(std::abs(on5(0, 0) - (1.0 - 2.0 * std::exp(-25.0))) < 1e-15);
    CHECK(std::abs(on5(0, 0) - 1.0) < 3e-11);

    const Mat2c par = operator_elements(OperatorFamily::parity, 1.0);
    CHECK(std::abs(par(0, 0) + std::exp(-2.0)) < 1e-15);

    for (auto f : {OperatorFamily::onoff, OperatorFamily::parity, OperatorFamily::sx, OperatorFamily::sy,
                   OperatorFamily::sz}) {
      for (double alpha : {0.05, 0.7, 1.5, 3.0, 8.0}) {
        const Mat2c m = operator_elements(f, alpha);
        CHECK(m == m.adjoint());
      }
      // Certification already compares with the oracle; repeat it directly.
      const double alpha = 1.5;
      const std::size_t d = fock::truncation_dim(alpha);
      const auto s = fock::pseudo_spin_ops(d);
      const fock::FockOperator ops[] = {fock::on_off(d), fock::parity(d), s.s_x(), s.s_y(), s.s_z};
      const fock::FockVector k[2] = {fock::coherent(alpha, d), fock::coherent(-alpha, d)};
      const Mat2c m = operator_elements(f, alpha, false);
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          CHECK(std::abs(m(x, y) - k[x].amplitudes.dot(ops[static_cast<int>(f)].matrix * k[y].amplitudes)) < 1e-8);
    }
    CHECK_THROWS_AS(operator_elements(OperatorFamily::onoff, 0.01), std::invalid_argument);
  }

  TEST_CASE("Gram-weighted expectations")
  {
    const double alpha = 1.0;
    const Vec2c ones(1.0, 1.0);
    const Complex n = gram_expectation(ones, gram_matrix(alpha), ones, alpha);
    CHECK(std::abs(n - gram_norm_squared(ones, alpha)) < 1e-15);
    CHECK(std::abs(std::real(n) - 2.0 * (1.0 + std::exp(-2.0))) < 1e-14);

    const Vec2c e0(1.0, 0.0);
    CHECK(std::abs(gram_expectation(e0, operator_elements(OperatorFamily::onoff, 5.0), e0, 5.0) -
                   (1.0 - 2.0 * std::exp(-25.0))) < 1e-15);

    testing::DirectionSampler rng(34);
    const std::size_t d = fock::truncation_dim(alpha);
    const auto s = fock::pseudo_spin_ops(d);
    for (int i = 0; i < 10; ++i) {
      const Vec2c bra(Complex{rng.uniform(-1, 1), rng.uniform(-1, 1)}, Complex{rng.uniform(-1, 1), rng.uniform(-1, 1)});
      const Vec2c ket(Complex{rng.uniform(-1, 1), rng.uniform(-1, 1)}, Complex{rng.uniform(-1, 1), rng.uniform(-1, 1)});
      const Complex closed = gram_expectation(bra, operator_elements(OperatorFamily::sy, alpha), ket, alpha);
      const Complex oracle =
          from_coeffs(bra, alpha, d).amplitudes.dot(s.s_y().matrix * from_coeffs(ket, alpha, d).amplitudes);
      CHECK(std::abs(closed - oracle) < 1e-8);
    }
    CHECK_THROWS_AS(gram_expectation(Vec2c::Zero(), gram_matrix(alpha), ones, alpha), ConditioningError);
  }
}
