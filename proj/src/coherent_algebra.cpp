#include "leggett/coherent_algebra.hpp"

#include "leggett/errors.hpp"
#include "leggett/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace leggett {

namespace {

constexpr Complex I{0.0, 1.0};

Mat2c oracle_elements(OperatorFamily family, double alpha)
{
  const std::size_t dim = fock::truncation_dim(alpha);
  const fock::FockVector kets[2] = {fock::coherent(alpha, dim), fock::coherent(-alpha, dim)};

  fock::FockOperator op;
  switch (family) {
  case OperatorFamily::onoff:
    op = fock::on_off(dim);
    break;
  case OperatorFamily::parity:
    op = fock::parity(dim);
    break;
  case OperatorFamily::sx:
    op = fock::pseudo_spin_ops(dim).s_x();
    break;
  case OperatorFamily::sy:
    op = fock::pseudo_spin_ops(dim).s_y();
    break;
  case OperatorFamily::sz:
    op = fock::pseudo_spin_ops(dim).s_z;
    break;
  }

  Mat2c m;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      m(x, y) = kets[x].amplitudes.dot(op.matrix * kets[y].amplitudes);
  return m;
}

} // namespace

LogValue LogValue::from_double(double x)
{
  if (x == 0.0)
    return {};
  return {x > 0.0 ? 1 : -1, std::log(std::abs(x))};
}

double LogValue::to_double() const { return sign == 0 ? 0.0 : sign * std::exp(log_magnitude); }

LogValue operator+(const LogValue& a, const LogValue& b)
{
  if (a.sign == 0)
    return b;
  if (b.sign == 0)
    return a;
  const bool a_big = a.log_magnitude >= b.log_magnitude;
  const LogValue& big = a_big ? a : b;
  const LogValue& small = a_big ? b : a;
  const double r = std::exp(small.log_magnitude - big.log_magnitude);
  if (big.sign == small.sign)
    return {big.sign, big.log_magnitude + std::log1p(r)};
  if (r == 1.0)
    return {};
  return {big.sign, big.log_magnitude + std::log1p(-r)};
}

LogValue operator-(const LogValue& a, const LogValue& b) { return a + LogValue{-b.sign, b.log_magnitude}; }

LogValue operator*(const LogValue& a, const LogValue& b)
{
  if (a.sign == 0 || b.sign == 0)
    return {};
  return {a.sign * b.sign, a.log_magnitude + b.log_magnitude};
}

LogValue operator/(const LogValue& a, const LogValue& b)
{
  if (b.sign == 0)
    throw std::domain_error("LogValue: division by zero");
  if (a.sign == 0)
    return {};
  return {a.sign * b.sign, a.log_magnitude - b.log_magnitude};
}

double log_sinh(double x)
{
  if (!(x > 0.0))
    throw std::domain_error("log_sinh: argument must be positive");
  if (x < 20.0)
    return std::log(std::sinh(x));
  return x - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * x));
}

double EcsSpec::kappa() const { return std::exp(-2.0 * alpha * alpha); }

double EcsSpec::norm() const
{
  const double k2 = std::exp(-4.0 * alpha * alpha);
  return 1.0 / std::sqrt(2.0 * (1.0 + sign * k2));
}

Mat2c EcsSpec::coefficients() const
{
  const double n = norm();
  Mat2c c = Mat2c::Zero();
  c(0, 1) = n;
  c(1, 0) = sign * n;
  return c;
}

EcsSpec make_ecs(double alpha, int sign)
{
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("ECS amplitude must be finite and nonnegative");
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("ECS sign must be +1 or -1");
  if (sign == -1 && alpha == 0.0)
    throw std::invalid_argument("ECS- vanishes at alpha = 0");
  return {alpha, sign};
}

Mat2c gram_matrix(double alpha)
{
  const double k = std::exp(-2.0 * alpha * alpha);
  Mat2c g;
  g << 1.0, k, k, 1.0;
  return g;
}

double log_series_s(double alpha)
{
  if (alpha < 0.0)
    throw std::invalid_argument("log_series_s: alpha must be nonnegative");
  if (alpha == 0.0)
    return 0.0;

  const double log_a = std::log(alpha);
  LogValue sum;
  double max_term = -std::numeric_limits<double>::infinity();
  double previous = max_term;
  for (long n = 0; n < 100'000'000; ++n) {
    const double two_n = 2.0 * static_cast<double>(n);
    const double term = 2.0 * two_n * log_a - std::lgamma(two_n + 1.0) - 0.5 * std::log(two_n + 1.0);
    sum = sum + LogValue::from_log(term);
    max_term = std::max(max_term, term);
    if (term < previous && term < max_term - 60.0)
      break;
    previous = term;
  }
  return sum.log_magnitude;
}

double kappa_K(double alpha)
{
  if (alpha < 0.0)
    throw std::invalid_argument("kappa_K: alpha must be nonnegative");
  if (alpha == 0.0)
    return 1.0;
  const double x = 2.0 * alpha * alpha;
  return std::exp(std::log(x) + 2.0 * log_series_s(alpha) - log_sinh(x));
}

Vec3 pseudospin_bloch(double alpha)
{
  if (alpha < 0.0)
    throw std::invalid_argument("pseudospin_bloch: alpha must be nonnegative");
  if (alpha == 0.0)
    return {0.0, 0.0, -1.0};
  const double a2 = alpha * alpha;
  const double mx = 2.0 * std::exp(-a2 + std::log(alpha) + log_series_s(alpha));
  return {mx, 0.0, -std::exp(-2.0 * a2)};
}

Mat2c rotation_map(double theta, double phi)
{
  const double s = std::sin(theta / 2.0);
  const double c = std::cos(theta / 2.0);
  const Complex e = std::polar(1.0, phi);
  Mat2c m;
  m << s, e * c, std::conj(e) * c, -s;
  return m;
}

Mat2c pseudospin_map(double theta, double phi)
{
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  Mat2c m;
  m << st * cp, -(ct + I * st * sp), -(ct - I * st * sp), -st * cp;
  return m;
}

std::string_view to_string(OperatorFamily f)
{
  switch (f) {
  case OperatorFamily::onoff:
    return "onoff";
  case OperatorFamily::parity:
    return "parity";
  case OperatorFamily::sx:
    return "sx";
  case OperatorFamily::sy:
    return "sy";
  case OperatorFamily::sz:
    return "sz";
  }
  return "?";
}

Mat2c operator_elements(OperatorFamily family, double alpha, bool certify)
{
  if (!(alpha >= min_coefficient_alpha))
    throw std::invalid_argument("operator_elements: alpha must be at least 0.05");

  const double k = std::exp(-2.0 * alpha * alpha);
  Mat2c m;
  switch (family) {
  case OperatorFamily::onoff: {
    const double vac = 2.0 * std::exp(-alpha * alpha);
    m << 1.0 - vac, k - vac, k - vac, 1.0 - vac;
    break;
  }
  case OperatorFamily::parity:
  case OperatorFamily::sz:
    m << -k, -1.0, -1.0, -k;
    break;
  case OperatorFamily::sx: {
    const double g = pseudospin_bloch(alpha)[0];
    m << g, 0.0, 0.0, -g;
    break;
  }
  case OperatorFamily::sy: {
    const double g = pseudospin_bloch(alpha)[0];
    m << 0.0, -I * g, I * g, 0.0;
    break;
  }
  }

  if (certify && alpha <= 3.0) {
    const double err = (m - oracle_elements(family, alpha)).cwiseAbs().maxCoeff();
    if (!(err <= 1e-8))
      throw CertificationError("operator_elements(" + std::string(to_string(family)) + ", alpha = " +
                               std::to_string(alpha) + ") differs from the Fock oracle by " +
                               std::to_string(err));
  }
  return m;
}

double gram_norm_squared(const Vec2c& c, double alpha)
{
  return std::real(c.dot(gram_matrix(alpha) * c));
}

Complex gram_expectation(const Vec2c& bra, const Mat2c& op, const Vec2c& ket, double alpha)
{
  if (!(alpha >= min_coefficient_alpha))
    throw std::invalid_argument("gram_expectation: alpha must be at least 0.05");
  if (gram_norm_squared(bra, alpha) < 1e-12 || gram_norm_squared(ket, alpha) < 1e-12)
    throw ConditioningError("gram_expectation: coefficient vector has vanishing norm");
  return bra.dot(op * ket);
}

} // namespace leggett
