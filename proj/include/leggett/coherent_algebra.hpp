#pragma once

// Closed forms in the nonorthogonal basis {|alpha>, |-alpha>} (index 0 is
// |alpha>, index 1 is |-alpha>; alpha real and nonnegative throughout).

#include "leggett/geometry.hpp"

#include <Eigen/Dense>

#include <complex>
#include <limits>
#include <string_view>

namespace leggett {

using Complex = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Vec2c = Eigen::Vector2cd;

/// Signed number stored as sign * exp(log_magnitude).
struct LogValue
{
  int sign = 0;
  double log_magnitude = -std::numeric_limits<double>::infinity();

  static LogValue from_double(double x);
  static LogValue from_log(double log_magnitude, int sign = 1) { return {sign, log_magnitude}; }
  double to_double() const;

  friend LogValue operator+(const LogValue& a, const LogValue& b);
  friend LogValue operator-(const LogValue& a, const LogValue& b);
  friend LogValue operator*(const LogValue& a, const LogValue& b);
  friend LogValue operator/(const LogValue& a, const LogValue& b);
};

/// log sinh(x) for x > 0 without overflow.
double log_sinh(double x);

/// Smallest amplitude accepted by the two-ket coefficient algebra. Below it
/// the Gram matrix is too close to singular.
inline constexpr double min_coefficient_alpha = 0.05;

/// N_sign (|alpha>|-alpha> + sign |-alpha>|alpha>).
struct EcsSpec
{
  double alpha = 1.0;
  int sign = -1;

  /// <alpha|-alpha> = e^{-2 alpha^2}
  double kappa() const;
  /// [2 (1 + sign e^{-4 alpha^2})]^{-1/2}
  double norm() const;
  /// Two-mode coefficient tensor c(x, y) of |x alpha>|y alpha>, normalized.
  Mat2c coefficients() const;
};

/// Throws std::invalid_argument unless alpha >= 0 and sign is +1 or -1.
EcsSpec make_ecs(double alpha, int sign);

/// [[1, kappa], [kappa, 1]]
Mat2c gram_matrix(double alpha);

/// log of S(alpha) = sum_n alpha^{4n} / ((2n)! sqrt(2n + 1)). Terms are
/// dropped once they fall 60 nats below the largest term after the peak.
double log_series_s(double alpha);

/// K(alpha) = (2 alpha^2 / sinh 2 alpha^2) S(alpha)^2, with K(0) = 1.
double kappa_K(double alpha);

/// (<s_x>, <s_y>, <s_z>) in |alpha>: (2 e^{-alpha^2} alpha S, 0, -e^{-2 alpha^2}).
Vec3 pseudospin_bloch(double alpha);

/// Asymptotic rotation: column 0 is the image of |alpha>,
///   sin(theta/2)|alpha> + e^{-i phi} cos(theta/2)|-alpha>,
/// column 1 the image of |-alpha>,
///   e^{i phi} cos(theta/2)|alpha> - sin(theta/2)|-alpha>.
Mat2c rotation_map(double theta, double phi);

/// Asymptotic action of u.s for u = (theta, phi):
///   |alpha>  -> sin t cos p |alpha> - (cos t - i sin t sin p)|-alpha>
///   |-alpha> -> -(cos t + i sin t sin p)|alpha> - sin t cos p |-alpha>
Mat2c pseudospin_map(double theta, double phi);

enum class OperatorFamily
{
  onoff,
  parity,
  sx,
  sy,
  sz
};

std::string_view to_string(OperatorFamily f);

/// M(x, y) = <x alpha| O |y alpha>. When certify is set and alpha <= 3 the
/// result is compared against the Fock oracle and CertificationError is
/// thrown on a mismatch above 1e-8. Requires alpha >= 0.05.
Mat2c operator_elements(OperatorFamily family, double alpha, bool certify = true);

/// sum_ij conj(bra_i) M_ij ket_j. Throws ConditioningError when either
/// argument has Gram norm below 1e-12.
Complex gram_expectation(const Vec2c& bra, const Mat2c& op, const Vec2c& ket, double alpha);

/// Gram norm squared c^dag G c.
double gram_norm_squared(const Vec2c& c, double alpha);

} // namespace leggett
