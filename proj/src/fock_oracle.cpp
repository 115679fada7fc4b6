#include "leggett/fock_oracle.hpp"

#include "leggett/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace leggett::fock {

namespace {

constexpr Complex I{0.0, 1.0};

} // namespace

std::size_t truncation_dim(double amplitude)
{
  const double a = std::abs(amplitude);
  auto dim = static_cast<std::size_t>(std::ceil(a * a + 10.0 * a + 20.0));
  return dim + (dim % 2);
}

FockVector FockOperator::apply(const FockVector& v) const
{
  if (v.dim() != dim())
    throw std::invalid_argument("FockOperator::apply: dimension mismatch");
  return {matrix * v.amplitudes, v.tail_mass};
}

FockVector vacuum(std::size_t dim)
{
  FockVector v{CVector::Zero(static_cast<Eigen::Index>(dim)), 0.0};
  v.amplitudes(0) = 1.0;
  return v;
}

FockVector coherent(Complex alpha, std::size_t dim)
{
  if (dim < 4)
    throw std::invalid_argument("coherent: dim must be at least 4");
  const double r = std::abs(alpha);
  if (r == 0.0)
    return vacuum(dim);

  const double log_r = std::log(r);
  const double arg = std::arg(alpha);
  FockVector v{CVector(static_cast<Eigen::Index>(dim)), 0.0};
  double mass = 0.0;
  for (std::size_t n = 0; n < dim; ++n) {
    const double nn = static_cast<double>(n);
    const double log_mag = -0.5 * r * r + nn * log_r - 0.5 * std::lgamma(nn + 1.0);
    const double mag = std::exp(log_mag);
    v.amplitudes(static_cast<Eigen::Index>(n)) = std::polar(mag, nn * arg);
    mass += mag * mag;
  }
  v.tail_mass = std::max(0.0, 1.0 - mass);
  if (v.tail_mass > 1e-8)
    throw TruncationError("coherent: tail mass " + std::to_string(v.tail_mass) + " beyond dim " +
                          std::to_string(dim));
  return v;
}

FockOperator identity(std::size_t dim)
{
  const auto d = static_cast<Eigen::Index>(dim);
  return {CMatrix::Identity(d, d)};
}

FockOperator annihilation(std::size_t dim)
{
  const auto d = static_cast<Eigen::Index>(dim);
  CMatrix a = CMatrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n)
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return {a};
}

CMatrix matrix_exponential(const CMatrix& m)
{
  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5)
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const CMatrix scaled = m / std::ldexp(1.0, squarings);

  const auto d = m.rows();
  CMatrix result = CMatrix::Identity(d, d);
  CMatrix term = CMatrix::Identity(d, d);
  for (int k = 1; k < 60; ++k) {
    term = term * scaled / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().colwise().sum().maxCoeff() < 1e-14 * 1e-2)
      break;
  }
  for (int s = 0; s < squarings; ++s)
    result = result * result;
  return result;
}

FockOperator displace(Complex beta, std::size_t dim)
{
  const CMatrix a = annihilation(dim).matrix;
  const CMatrix gen = beta * a.adjoint() - std::conj(beta) * a;
  return {matrix_exponential(gen)};
}

FockOperator kerr_half_pi(std::size_t dim)
{
  const auto d = static_cast<Eigen::Index>(dim);
  CMatrix u = CMatrix::Zero(d, d);
  // n^2 mod 4 is 0 for even n and 1 for odd n.
  for (Eigen::Index n = 0; n < d; ++n)
    u(n, n) = (n % 2 == 0) ? Complex{1.0, 0.0} : -I;
  return {u};
}

FockOperator composite_rotation(double theta, double phi, double alpha, std::size_t dim)
{
  if (!(alpha > 0.0))
    throw std::invalid_argument("composite_rotation: alpha must be positive");
  const FockOperator kerr = kerr_half_pi(dim);
  const Complex outer = I * phi / (4.0 * alpha);
  const Complex middle = I * theta / (4.0 * alpha);
  // Rightmost factor acts first.
  return displace(outer, dim) * kerr * displace(middle, dim) * kerr * displace(-outer, dim);
}

FockOperator on_off(std::size_t dim)
{
  FockOperator o = identity(dim);
  o.matrix(0, 0) = -1.0;
  return o;
}

FockOperator parity(std::size_t dim)
{
  const auto d = static_cast<Eigen::Index>(dim);
  CMatrix p = CMatrix::Zero(d, d);
  for (Eigen::Index n = 0; n < d; ++n)
    p(n, n) = (n % 2 == 1) ? 1.0 : -1.0;
  return {p};
}

FockOperator PseudoSpinOps::s_x() const { return {s_plus.matrix + s_minus.matrix}; }

FockOperator PseudoSpinOps::s_y() const { return {-I * (s_plus.matrix - s_minus.matrix)}; }

FockOperator PseudoSpinOps::along(const Vec3& a) const
{
  return {a[0] * s_x().matrix + a[1] * s_y().matrix + a[2] * s_z.matrix};
}

PseudoSpinOps pseudo_spin_ops(std::size_t dim)
{
  if (dim % 2 != 0)
    throw std::invalid_argument("pseudo_spin_ops: dimension must be even");
  const auto d = static_cast<Eigen::Index>(dim);
  CMatrix minus = CMatrix::Zero(d, d);
  for (Eigen::Index n = 0; n + 1 < d; n += 2)
    minus(n, n + 1) = 1.0;
  return {parity(dim), {minus.adjoint()}, {minus}};
}

Complex inner(const FockVector& bra, const FockVector& ket) { return bra.amplitudes.dot(ket.amplitudes); }

Complex expectation(const FockVector& state, const FockOperator& op)
{
  const double n2 = state.amplitudes.squaredNorm();
  if (n2 == 0.0)
    throw std::domain_error("expectation: zero-norm state");
  return state.amplitudes.dot(op.matrix * state.amplitudes) / n2;
}

double fidelity(const FockVector& a, const FockVector& b)
{
  return std::norm(inner(a, b)) / (a.amplitudes.squaredNorm() * b.amplitudes.squaredNorm());
}

TwoModeState TwoModeState::product(const FockVector& a, const FockVector& b)
{
  return {a.amplitudes * b.amplitudes.transpose()};
}

TwoModeState& TwoModeState::add(const TwoModeState& other, Complex weight)
{
  coeffs += weight * other.coeffs;
  return *this;
}

double TwoModeState::norm_squared() const { return coeffs.squaredNorm(); }

TwoModeState ecs_state(double alpha, int sign, std::size_t dim)
{
  const FockVector plus = coherent(alpha, dim);
  const FockVector minus = coherent(-alpha, dim);
  TwoModeState s = TwoModeState::product(plus, minus);
  s.add(TwoModeState::product(minus, plus), sign >= 0 ? 1.0 : -1.0);
  s.coeffs /= std::sqrt(s.norm_squared());
  return s;
}

TwoModeState from_coherent_coefficients(double alpha, const Eigen::Matrix2cd& c, std::size_t dim)
{
  const FockVector kets[2] = {coherent(alpha, dim), coherent(-alpha, dim)};
  const auto d = static_cast<Eigen::Index>(dim);
  TwoModeState s{CMatrix::Zero(d, d)};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      s.add(TwoModeState::product(kets[x], kets[y]), c(x, y));
  return s;
}

Complex expectation(const TwoModeState& state, const FockOperator& a_op, const FockOperator& b_op)
{
  const double n2 = state.norm_squared();
  if (n2 == 0.0)
    throw std::domain_error("expectation: zero-norm state");
  const CMatrix applied = a_op.matrix * state.coeffs * b_op.matrix.transpose();
  return state.coeffs.conjugate().cwiseProduct(applied).sum() / n2;
}

} // namespace leggett::fock
