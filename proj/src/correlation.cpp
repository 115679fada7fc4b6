#include "leggett/correlation.hpp"

#include "leggett/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace leggett {

namespace {

double pseudospin_value(double transverse, int sign, const Vec3& a, const Vec3& b, bool mirror_b)
{
  if (sign < 0)
    return -(transverse * (a[0] * b[0] + a[1] * b[1]) + a[2] * b[2]);
  const double bx = mirror_b ? -b[0] : b[0];
  return a[2] * b[2] - transverse * (a[0] * bx - a[1] * b[1]);
}

double transverse_factor(double alpha, int sign)
{
  const double k = kappa_K(alpha);
  return sign < 0 ? k : std::tanh(2.0 * alpha * alpha) * k;
}

double reflected_dot(const Vec3& u, const Vec3& a, const Vec3& m)
{
  const Vec3 r = 2.0 * dot(u, a) * u - a;
  return dot(r, m);
}

double trace_contract(const Mat2c& c, const Mat2c& left, const Mat2c& right_t)
{
  return std::real(c.conjugate().cwiseProduct(left * c * right_t).sum());
}

} // namespace

std::string_view to_string(StateKind s)
{
  switch (s) {
  case StateKind::pes:
    return "pes";
  case StateKind::ecs_plus:
    return "ecs+";
  case StateKind::ecs_minus:
    return "ecs-";
  }
  return "?";
}

std::string_view to_string(MeasurementFamily f)
{
  switch (f) {
  case MeasurementFamily::qubit_projective:
    return "qubit";
  case MeasurementFamily::pseudo_spin:
    return "pseudospin";
  case MeasurementFamily::on_off:
    return "onoff";
  case MeasurementFamily::parity:
    return "parity";
  }
  return "?";
}

StateKind parse_state_kind(std::string_view text)
{
  if (text == "pes")
    return StateKind::pes;
  if (text == "ecs+" || text == "ecs_plus" || text == "ecsp")
    return StateKind::ecs_plus;
  if (text == "ecs-" || text == "ecs_minus" || text == "ecsm")
    return StateKind::ecs_minus;
  throw std::invalid_argument("unknown state: " + std::string(text));
}

MeasurementFamily parse_family(std::string_view text)
{
  if (text == "qubit" || text == "qubit_projective" || text == "qubit-projective")
    return MeasurementFamily::qubit_projective;
  if (text == "pseudospin" || text == "pseudo_spin" || text == "pseudo-spin")
    return MeasurementFamily::pseudo_spin;
  if (text == "onoff" || text == "on_off" || text == "on-off")
    return MeasurementFamily::on_off;
  if (text == "parity")
    return MeasurementFamily::parity;
  throw std::invalid_argument("unknown measurement family: " + std::string(text));
}

double pes_correlation(const Vec3& a, const Vec3& b) { return -dot(a, b); }

double malus_local_avg(const Vec3& u, const Vec3& a) { return dot(u, a); }

double ecs_pseudospin_correlation(const EcsSpec& spec, const Vec3& a, const Vec3& b, bool mirror_b)
{
  return pseudospin_value(transverse_factor(spec.alpha, spec.sign), spec.sign, a, b, mirror_b);
}

double ecs_pseudospin_local_avg(double alpha, const Vec3& u, const Vec3& a, bool party_b)
{
  Vec3 m = pseudospin_bloch(alpha);
  if (party_b)
    m[0] = -m[0];
  return reflected_dot(u, a, m);
}

CorrelationModel CorrelationModel::pes()
{
  CorrelationModel m;
  m.state_ = StateKind::pes;
  m.family_ = MeasurementFamily::qubit_projective;
  return m;
}

CorrelationModel CorrelationModel::ecs(double alpha, int sign, MeasurementFamily family, ModelOptions options)
{
  if (family == MeasurementFamily::qubit_projective)
    throw std::invalid_argument("ECS models need a pseudospin, onoff or parity measurement family");

  CorrelationModel m;
  m.spec_ = make_ecs(alpha, sign);
  m.state_ = sign > 0 ? StateKind::ecs_plus : StateKind::ecs_minus;
  m.family_ = family;
  m.options_ = options;
  m.alpha_ = alpha;

  if (family == MeasurementFamily::pseudo_spin) {
    m.transverse_ = transverse_factor(alpha, sign);
    m.bloch_a_ = pseudospin_bloch(alpha);
    m.bloch_b_ = {-m.bloch_a_[0], m.bloch_a_[1], m.bloch_a_[2]};
    // In the mirrored frame (x -> -x on both b and v) the reflected vector
    // meets S m_B, which is m_A.
    if (sign > 0 && options.mirror_b)
      m.bloch_b_ = m.bloch_a_;
    return m;
  }

  if (!(alpha >= min_coefficient_alpha))
    throw std::invalid_argument("on/off and parity models need alpha >= 0.05");
  m.coeffs_ = m.spec_.coefficients();
  m.gram_ = gram_matrix(alpha);
  m.elements_ = operator_elements(family == MeasurementFamily::on_off ? OperatorFamily::onoff : OperatorFamily::parity,
                                  alpha, options.certify);
  return m;
}

CorrelationModel CorrelationModel::make(StateKind state, MeasurementFamily family, double alpha, ModelOptions options)
{
  if (state == StateKind::pes) {
    if (family != MeasurementFamily::qubit_projective)
      throw std::invalid_argument("the pes state pairs only with the qubit family");
    return pes();
  }
  return ecs(alpha, state == StateKind::ecs_plus ? 1 : -1, family, options);
}

double CorrelationModel::correlation(const Direction& a, const Direction& b) const
{
  switch (family_) {
  case MeasurementFamily::qubit_projective:
    return pes_correlation(to_cartesian(a), to_cartesian(b));
  case MeasurementFamily::pseudo_spin:
    return pseudospin_value(transverse_, spec_.sign, to_cartesian(a), to_cartesian(b), options_.mirror_b);
  case MeasurementFamily::on_off:
  case MeasurementFamily::parity:
    break;
  }

  const Mat2c c = rotation_map(a.theta, a.phi) * coeffs_ * rotation_map(b.theta, b.phi).transpose();
  const double value = trace_contract(c, elements_, elements_.transpose());
  if (!options_.renormalize)
    return value;
  const double n2 = trace_contract(c, gram_, gram_.transpose());
  if (!(n2 >= 1e-12))
    throw ConditioningError("correlation: mapped state has vanishing norm");
  return value / n2;
}

double CorrelationModel::coefficient_local_avg(const Direction& u, const Direction& a, int reference) const
{
  Vec2c e = Vec2c::Zero();
  e(reference) = 1.0;
  const Vec2c c = rotation_map(a.theta, a.phi) * (rotation_map(u.theta, u.phi) * e);
  const double value = std::real(c.dot(elements_ * c));
  if (!options_.renormalize)
    return value;
  const double n2 = std::real(c.dot(gram_ * c));
  if (!(n2 >= 1e-12))
    throw ConditioningError("local average: mapped state has vanishing norm");
  return value / n2;
}

double CorrelationModel::local_avg_a(const Direction& u, const Direction& a) const
{
  switch (family_) {
  case MeasurementFamily::qubit_projective:
    return malus_local_avg(to_cartesian(u), to_cartesian(a));
  case MeasurementFamily::pseudo_spin:
    return reflected_dot(to_cartesian(u), to_cartesian(a), bloch_a_);
  case MeasurementFamily::on_off:
  case MeasurementFamily::parity:
    break;
  }
  return coefficient_local_avg(u, a, 0);
}

double CorrelationModel::local_avg_b(const Direction& v, const Direction& b) const
{
  switch (family_) {
  case MeasurementFamily::qubit_projective:
    return malus_local_avg(to_cartesian(v), to_cartesian(b));
  case MeasurementFamily::pseudo_spin:
    return reflected_dot(to_cartesian(v), to_cartesian(b), bloch_b_);
  case MeasurementFamily::on_off:
  case MeasurementFamily::parity:
    break;
  }
  return coefficient_local_avg(v, b, 1);
}

std::string CorrelationModel::describe() const
{
  std::ostringstream os;
  os << to_string(state_) << '/' << to_string(family_);
  if (state_ != StateKind::pes)
    os << " alpha=" << alpha_;
  return os.str();
}

} // namespace leggett
