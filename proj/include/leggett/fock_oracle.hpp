#pragma once

// Truncated number-basis simulator for one bosonic mode and two-mode
// product spaces. Everything here is brute force on purpose: it is the
// reference the closed forms elsewhere are checked against.

#include "leggett/geometry.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace leggett::fock {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// ceil(|alpha|^2 + 10|alpha| + 20), rounded up to an even number so the
/// pseudo-spin blocks {|2n>, |2n+1>} are complete.
std::size_t truncation_dim(double amplitude);

struct FockVector
{
  CVector amplitudes;
  /// Probability mass of the exact state that lies beyond the truncation.
  double tail_mass = 0.0;

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes.size()); }
};

struct FockOperator
{
  CMatrix matrix;

  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
  FockVector apply(const FockVector& v) const;
  FockOperator adjoint() const { return {matrix.adjoint()}; }
  FockOperator operator*(const FockOperator& o) const { return {matrix * o.matrix}; }
};

FockVector vacuum(std::size_t dim);

/// Coherent state e^{-|a|^2/2} sum a^n / sqrt(n!) |n>, amplitudes built in
/// log domain. Throws TruncationError if more than 1e-8 of the probability
/// mass falls outside the truncation.
FockVector coherent(Complex alpha, std::size_t dim);

FockOperator identity(std::size_t dim);
FockOperator annihilation(std::size_t dim);

/// exp(M) by scaling and squaring with a Taylor core (tail < 1e-14).
CMatrix matrix_exponential(const CMatrix& m);

/// exp(beta a^dag - beta^* a) on the truncated space.
FockOperator displace(Complex beta, std::size_t dim);

/// exp(-i pi n^2 / 2): the phase pattern 1, -i, 1, -i, ...
FockOperator kerr_half_pi(std::size_t dim);

/// Displacement / Kerr / displacement / Kerr / displacement sequence that
/// rotates span{|alpha>, |-alpha>} for alpha >> 1. The outer displacements
/// carry -+ i phi / (4 alpha) in time order so that
///   |alpha> -> sin(theta/2)|alpha> + e^{-i phi} cos(theta/2)|-alpha>.
FockOperator composite_rotation(double theta, double phi, double alpha, std::size_t dim);

/// 1 - 2|0><0|.
FockOperator on_off(std::size_t dim);

/// +1 on odd, -1 on even photon number. Identical to the pseudo-spin s_z.
FockOperator parity(std::size_t dim);

struct PseudoSpinOps
{
  FockOperator s_z;
  FockOperator s_plus;
  FockOperator s_minus;

  FockOperator s_x() const;
  FockOperator s_y() const;
  /// a . s = sin(theta)(e^{i phi} s_- + e^{-i phi} s_+) + cos(theta) s_z
  FockOperator along(const Vec3& a) const;
};

/// s_z = sum |2n+1><2n+1| - |2n><2n|, s_- = sum |2n><2n+1|, s_+ = s_-^dag.
/// Requires an even dimension.
PseudoSpinOps pseudo_spin_ops(std::size_t dim);

Complex inner(const FockVector& bra, const FockVector& ket);

/// <psi|O|psi> / <psi|psi>. Throws std::domain_error for a zero state.
Complex expectation(const FockVector& state, const FockOperator& op);

/// |<a|b>|^2 / (<a|a><b|b>)
double fidelity(const FockVector& a, const FockVector& b);

/// Two-mode state stored as a coefficient matrix: coeffs(m, n) is the
/// amplitude of |m>_A |n>_B.
struct TwoModeState
{
  CMatrix coeffs;

  static TwoModeState product(const FockVector& a, const FockVector& b);
  TwoModeState& add(const TwoModeState& other, Complex weight = 1.0);
  double norm_squared() const;
};

/// N (|alpha>|-alpha> + sign |-alpha>|alpha>), normalized numerically.
TwoModeState ecs_state(double alpha, int sign, std::size_t dim);

/// sum_{x,y} c[x][y] |x alpha>|y alpha> with x, y in {+1, -1} (index 0 is
/// +alpha). Not normalized.
TwoModeState from_coherent_coefficients(double alpha, const Eigen::Matrix2cd& c, std::size_t dim);

/// <psi| A (x) B |psi> / <psi|psi>
Complex expectation(const TwoModeState& state, const FockOperator& a_op, const FockOperator& b_op);

} // namespace leggett::fock
