#include "leggett/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace leggett {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double half_pi = std::numbers::pi / 2.0;

Mat3 rot_z(double t)
{
  const double c = std::cos(t), s = std::sin(t);
  return Mat3{{{{c, -s, 0.0}, {s, c, 0.0}, {0.0, 0.0, 1.0}}}};
}

Mat3 rot_y(double t)
{
  const double c = std::cos(t), s = std::sin(t);
  return Mat3{{{{c, 0.0, s}, {0.0, 1.0, 0.0}, {-s, 0.0, c}}}};
}

std::vector<Direction> rotate_all(const Mat3& r, const std::vector<Direction>& dirs)
{
  std::vector<Direction> out;
  out.reserve(dirs.size());
  for (const auto& d : dirs)
    out.push_back(to_direction(r * to_cartesian(d)));
  return out;
}

} // namespace

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b)
{
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

Vec3 normalized(const Vec3& v)
{
  const double n = norm(v);
  return {v[0] / n, v[1] / n, v[2] / n};
}

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 operator*(double s, const Vec3& v) { return {s * v[0], s * v[1], s * v[2]}; }

double angle_between(const Vec3& a, const Vec3& b) { return std::atan2(norm(cross(a, b)), dot(a, b)); }

Vec3 to_cartesian(const Direction& d)
{
  const double st = std::sin(d.theta);
  return {st * std::cos(d.phi), st * std::sin(d.phi), std::cos(d.theta)};
}

Direction to_direction(const Vec3& v)
{
  const double rho = std::hypot(v[0], v[1]);
  const double theta = std::atan2(rho, v[2]);
  if (rho < 1e-14 * norm(v))
    return {theta, 0.0};
  return {theta, std::atan2(v[1], v[0])};
}

double angle_between(const Direction& a, const Direction& b)
{
  return angle_between(to_cartesian(a), to_cartesian(b));
}

Mat3 Mat3::identity() { return Mat3{{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}}}; }

Vec3 Mat3::operator*(const Vec3& v) const
{
  return {m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
          m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
          m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2]};
}

Mat3 Mat3::operator*(const Mat3& o) const
{
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j] + m[i][2] * o.m[2][j];
  return r;
}

Mat3 Mat3::transposed() const
{
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r.m[i][j] = m[j][i];
  return r;
}

double Mat3::determinant() const
{
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 RigidRotation::as_matrix() const { return rot_z(euler_z1) * rot_y(euler_y) * rot_z(euler_z2); }

Direction RigidRotation::apply(const Direction& d) const { return to_direction(as_matrix() * to_cartesian(d)); }

std::string_view to_string(LayoutName name)
{
  switch (name) {
  case LayoutName::original:
    return "original";
  case LayoutName::threeplus7:
    return "3p7";
  case LayoutName::threeplus6:
    return "3p6";
  case LayoutName::chsh:
    return "chsh";
  }
  return "?";
}

LayoutName parse_layout_name(std::string_view text)
{
  if (text == "original")
    return LayoutName::original;
  if (text == "3p7" || text == "threeplus7" || text == "3+7")
    return LayoutName::threeplus7;
  if (text == "3p6" || text == "threeplus6" || text == "3+6")
    return LayoutName::threeplus6;
  if (text == "chsh")
    return LayoutName::chsh;
  throw std::invalid_argument("unknown layout name: " + std::string(text));
}

SettingsLayout build_layout(LayoutName name, double phi)
{
  if (!(phi >= 0.0 && phi <= pi))
    throw std::invalid_argument("layout parameter phi must lie in [0, pi]");

  SettingsLayout s;
  s.name = name;
  s.phi = phi;

  const Direction x_axis{half_pi, 0.0};
  const Direction y_axis{half_pi, half_pi};
  const Direction z_axis{0.0, 0.0};

  switch (name) {
  case LayoutName::original:
    s.a_list = {x_axis, z_axis};
    s.b_list = {{half_pi + phi, 0.0}, {phi, half_pi}, z_axis};
    s.groups = {{1.0, {{0, 0}, {1, 2}}}, {1.0, {{1, 1}, {1, 2}}}};
    s.bound_pairs = {{1, 2, 1.0}};
    break;

  case LayoutName::threeplus7:
    s.a_list = {x_axis, y_axis, z_axis};
    s.b_list = {{half_pi, phi},
                {half_pi, half_pi + phi},
                {half_pi - phi, half_pi},
                {phi, half_pi},
                x_axis,
                y_axis,
                z_axis};
    s.groups = {{0.5, {{0, 0}, {1, 1}, {0, 4}, {1, 5}}}, {0.5, {{1, 2}, {2, 3}, {1, 5}, {2, 6}}}};
    s.bound_pairs = {{0, 4, 0.5}, {1, 5, 0.5}, {2, 5, 0.5}, {3, 6, 0.5}};
    break;

  case LayoutName::threeplus6: {
    const double h = phi / 2.0;
    s.a_list = {x_axis, y_axis, z_axis};
    s.b_list = {{half_pi, h}, {half_pi, -h}, {half_pi - h, half_pi}, {half_pi + h, half_pi}, {h, 0.0}, {h, pi}};
    const double w = 2.0 / 3.0;
    s.groups = {{w, {{0, 0}, {0, 1}}}, {w, {{1, 2}, {1, 3}}}, {w, {{2, 4}, {2, 5}}}};
    s.bound_pairs = {{0, 1, w}, {2, 3, w}, {4, 5, w}};
    break;
  }

  case LayoutName::chsh:
    s.a_list = {z_axis, x_axis};
    s.b_list = {{pi - phi, pi}, {pi - phi, 0.0}};
    s.groups = {{1.0, {{0, 0, 1.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, -1.0}}}};
    break;
  }

  // Poles carry azimuth 0 so that phi = 0 collapses exactly onto the
  // reference directions.
  for (auto* list : {&s.a_list, &s.b_list})
    for (auto& d : *list) {
      if (d.theta < 0.0 || d.theta > pi)
        d = to_direction(to_cartesian(d));
      if (std::abs(std::sin(d.theta)) < 1e-14)
        d.phi = 0.0;
    }
  return s;
}

SettingsLayout rotate_settings(const RigidRotation& ra, const RigidRotation& rb, const SettingsLayout& layout)
{
  SettingsLayout out = layout;
  out.a_list = rotate_all(ra.as_matrix(), layout.a_list);
  out.b_list = rotate_all(rb.as_matrix(), layout.b_list);
  return out;
}

SettingsLayout rotate_settings(const RigidRotation& r, const SettingsLayout& layout)
{
  return rotate_settings(r, r, layout);
}

std::vector<Vec3> cartesian_list(const std::vector<Direction>& dirs)
{
  std::vector<Vec3> out;
  out.reserve(dirs.size());
  for (const auto& d : dirs)
    out.push_back(to_cartesian(d));
  return out;
}

} // namespace leggett
