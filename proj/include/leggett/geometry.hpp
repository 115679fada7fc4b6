#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace leggett {

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& v);
Vec3 normalized(const Vec3& v);
Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(double s, const Vec3& v);

/// Angle between two (not necessarily unit) vectors, computed with atan2 so
/// that nearly parallel vectors keep full precision.
double angle_between(const Vec3& a, const Vec3& b);

/// A point on the unit sphere. theta is the polar angle from +z, phi the
/// azimuth from +x toward +y.
struct Direction
{
  double theta = 0.0;
  double phi = 0.0;

  friend bool operator==(const Direction&, const Direction&) = default;
};

Vec3 to_cartesian(const Direction& d);

/// Inverse of to_cartesian for a nonzero vector. The azimuth is set to 0
/// when sin(theta) < 1e-14.
Direction to_direction(const Vec3& v);

double angle_between(const Direction& a, const Direction& b);

/// Row-major 3x3 real matrix.
struct Mat3
{
  std::array<std::array<double, 3>, 3> m{};

  static Mat3 identity();
  Vec3 operator*(const Vec3& v) const;
  Mat3 operator*(const Mat3& o) const;
  Mat3 transposed() const;
  double determinant() const;
};

/// Proper rotation in z-y-z Euler convention: R = Rz(z1) Ry(y) Rz(z2).
struct RigidRotation
{
  double euler_z1 = 0.0;
  double euler_y = 0.0;
  double euler_z2 = 0.0;

  Mat3 as_matrix() const;
  Direction apply(const Direction& d) const;
};

enum class LayoutName
{
  original,
  threeplus7,
  threeplus6,
  chsh
};

std::string_view to_string(LayoutName name);

/// Accepts "original", "3p7"/"threeplus7", "3p6"/"threeplus6", "chsh".
/// Throws std::invalid_argument on anything else.
LayoutName parse_layout_name(std::string_view text);

/// One correlation E(a_list[a], b_list[b]) entering a group sum. Indices are
/// zero-based; sign is -1 only for the subtracted CHSH term.
struct Term
{
  std::size_t a = 0;
  std::size_t b = 0;
  double sign = 1.0;
};

struct TermGroup
{
  double weight = 1.0;
  std::vector<Term> terms;
};

/// Two b-side settings measured against the same a-setting inside a group.
/// The triangle inequality turns each such pair into a lower bound
/// weight * |B(v; b_first) - B(v; b_second)|.
struct BoundPair
{
  std::size_t b_first = 0;
  std::size_t b_second = 0;
  double weight = 1.0;
};

struct SettingsLayout
{
  LayoutName name = LayoutName::threeplus6;
  double phi = 0.0;
  std::vector<Direction> a_list;
  std::vector<Direction> b_list;
  std::vector<TermGroup> groups;
  std::vector<BoundPair> bound_pairs;
};

/// Measurement-setting geometry for the named inequality at parameter phi.
///
/// - original: a1 = (pi/2, 0), a2 = (0, 0); b1 = (pi/2 + phi, 0),
///   b2 = (phi, pi/2), b3 = a2 (stored, not deduplicated).
/// - threeplus7: a = x, y, z; b1 = (pi/2, phi), b2 = (pi/2, pi/2 + phi),
///   b3 = (pi/2 - phi, pi/2), b4 = (phi, pi/2), b5..b7 = a1..a3.
/// - threeplus6: a as above; b_{1+-} = (pi/2, +-phi/2),
///   b_{2+-} = (pi/2 -+ phi/2, pi/2), b_{3+-} = (phi/2, pi/2 -+ pi/2),
///   stored in the order 1+, 1-, 2+, 2-, 3+, 3-.
/// - chsh: a = z, x; b = (pi - phi, pi), (pi - phi, 0). The single group is
///   E11 + E12 + E21 - E22 with weight 1; phi = pi/4 gives 2 sqrt 2 for the
///   singlet correlation -a.b.
///
/// Throws std::invalid_argument if phi is outside [0, pi].
SettingsLayout build_layout(LayoutName name, double phi);

/// Rotates party A's settings by ra and party B's by rb.
SettingsLayout rotate_settings(const RigidRotation& ra, const RigidRotation& rb,
                               const SettingsLayout& layout);

/// Shared rotation: every setting of both parties is rotated by r.
SettingsLayout rotate_settings(const RigidRotation& r, const SettingsLayout& layout);

std::vector<Vec3> cartesian_list(const std::vector<Direction>& dirs);

} // namespace leggett
