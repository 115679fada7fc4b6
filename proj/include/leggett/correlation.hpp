#pragma once

#include "leggett/coherent_algebra.hpp"
#include "leggett/geometry.hpp"

#include <string>

namespace leggett {

enum class StateKind
{
  pes,
  ecs_plus,
  ecs_minus
};

enum class MeasurementFamily
{
  qubit_projective,
  pseudo_spin,
  on_off,
  parity
};

std::string_view to_string(StateKind s);
std::string_view to_string(MeasurementFamily f);
/// "pes", "ecs+", "ecs-" (also "ecs_plus", "ecs_minus", "ecsp", "ecsm").
StateKind parse_state_kind(std::string_view text);
/// "qubit", "pseudospin", "onoff", "parity" (underscored and hyphenated
/// spellings accepted).
MeasurementFamily parse_family(std::string_view text);

struct ModelOptions
{
  /// Divide every mapped state by its exact Gram norm. Off means the
  /// asymptotic map is taken as norm preserving.
  bool renormalize = true;
  /// For ECS+ with pseudo-spin measurements, express party B's settings and
  /// hidden vectors in the frame mirrored through the y-z plane, where
  ///   E(a, b) = cos t_A cos t_B + tanh(2 alpha^2) K sin t_A sin t_B cos(p_A - p_B).
  /// Off gives the lab-frame expectation
  ///   cos t_A cos t_B - tanh(2 alpha^2) K sin t_A sin t_B cos(p_A + p_B).
  bool mirror_b = true;
  /// Check operator matrix elements against the Fock oracle (alpha <= 3).
  bool certify = true;
};

double pes_correlation(const Vec3& a, const Vec3& b);
double malus_local_avg(const Vec3& u, const Vec3& a);

/// Closed-form <ECS|(a.s)(b.s)|ECS>. For sign -1:
///   -cos t_A cos t_B - K sin t_A sin t_B cos(p_A - p_B).
/// For sign +1 see ModelOptions::mirror_b.
double ecs_pseudospin_correlation(const EcsSpec& spec, const Vec3& a, const Vec3& b, bool mirror_b = true);

/// a' . m with a' = 2 (u.a) u - a, the reflection of a about u, and m the
/// Bloch vector of the reference ket (|alpha> for party A, |-alpha> for B).
double ecs_pseudospin_local_avg(double alpha, const Vec3& u, const Vec3& a, bool party_b = false);

/// A (state, measurement family) pair exposing E(a, b) and the local
/// averages of a point-mass hidden state.
class CorrelationModel
{
public:
  /// Polarization singlet with projective measurements: E = -a.b, Malus
  /// local averages.
  static CorrelationModel pes();

  /// Throws std::invalid_argument for the qubit_projective family, for
  /// alpha < 0.05 with on/off or parity, and for ECS- at alpha = 0.
  static CorrelationModel ecs(double alpha, int sign, MeasurementFamily family, ModelOptions options = {});

  static CorrelationModel make(StateKind state, MeasurementFamily family, double alpha, ModelOptions options = {});

  double correlation(const Direction& a, const Direction& b) const;
  double local_avg_a(const Direction& u, const Direction& a) const;
  double local_avg_b(const Direction& v, const Direction& b) const;

  StateKind state() const { return state_; }
  MeasurementFamily family() const { return family_; }
  double alpha() const { return alpha_; }
  const ModelOptions& options() const { return options_; }
  std::string describe() const;

private:
  CorrelationModel() = default;

  double coefficient_local_avg(const Direction& u, const Direction& a, int reference) const;

  StateKind state_ = StateKind::pes;
  MeasurementFamily family_ = MeasurementFamily::qubit_projective;
  ModelOptions options_;
  double alpha_ = 0.0;
  EcsSpec spec_;
  double transverse_ = 0.0;
  Vec3 bloch_a_{};
  Vec3 bloch_b_{};
  Mat2c coeffs_ = Mat2c::Zero();
  Mat2c elements_ = Mat2c::Zero();
  Mat2c gram_ = Mat2c::Identity();
};

} // namespace leggett
