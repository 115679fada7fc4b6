#pragma once

#include "leggett/correlation.hpp"
#include "leggett/geometry.hpp"
#include "leggett/optimizer.hpp"

#include <array>
#include <limits>
#include <string_view>
#include <vector>

namespace leggett {

enum class BoundMode
{
  analytic2d,
  state_corrected
};

std::string_view to_string(BoundMode m);
/// "analytic", "analytic2d", "corrected", "state_corrected".
BoundMode parse_bound_mode(std::string_view text);

struct BoundResult
{
  BoundMode mode = BoundMode::analytic2d;
  /// The f_min that enters the bound: the analytic value, or the larger of
  /// the direct and relaxed numeric minima.
  double f_min = 0.0;
  double bound = 4.0;
  /// Minimum over a point-mass hidden state (u, v).
  double f_direct = std::numeric_limits<double>::quiet_NaN();
  /// Minimum over v of the b-pair triangle relaxation.
  double f_relaxed = std::numeric_limits<double>::quiet_NaN();
  Direction argmin_u;
  Direction argmin_v;
  /// |A(u; a_i) - B(v; b_j)| at the argmin, one entry per term in group order.
  std::vector<double> per_term;
  bool converged = true;
  int starts_used = 0;
  long evaluations = 0;
};

/// sum over groups of weight * |sum over terms of sign * E(a_i, b_j)|.
double leggett_value(const CorrelationModel& model, const SettingsLayout& layout);

/// original: (4/pi)|sin(phi/2)|, threeplus7: |sin(phi/2)|,
/// threeplus6: (4/3)|sin(phi/2)|. Throws std::invalid_argument for chsh.
double analytic_fmin(LayoutName name, double phi);

BoundResult analytic_bound(LayoutName name, double phi);

/// sum over groups of weight * sum over terms of |A(u; a_i) - B(v; b_j)|.
double hidden_objective(const CorrelationModel& model, const SettingsLayout& layout, const Direction& u,
                        const Direction& v);

/// sum over bound pairs of weight * |B(v; b_j) - B(v; b_j')|.
double relaxed_objective(const CorrelationModel& model, const SettingsLayout& layout, const Direction& v);

/// State-corrected f_min by multi-start simplex search over (u, v) and over
/// v for the relaxation. The ranges of config are replaced by the angle
/// boxes. A minimum is accepted once two starts agree within 1e-6; otherwise
/// the start count is doubled up to twice, then ConvergenceError is thrown.
/// Throws std::invalid_argument for the original and chsh layouts.
BoundResult numeric_fmin(const CorrelationModel& model, const SettingsLayout& layout, SearchConfig config);

BoundResult compute_bound(const CorrelationModel& model, const SettingsLayout& layout, BoundMode mode,
                          const SearchConfig& config);

inline constexpr double violation_tolerance = 1e-7;

struct LeggettEvaluation
{
  double L = 0.0;
  BoundResult bound;
  double margin = 0.0;
  bool violated = false;
  SettingsLayout layout;
  RigidRotation rotation_a;
  RigidRotation rotation_b;
  /// L at the unrotated settings.
  double L_reference = 0.0;
  bool rotation_converged = true;
};

LeggettEvaluation evaluate_leggett(const CorrelationModel& model, const SettingsLayout& layout, BoundMode mode,
                                   const SearchConfig& bound_config);

struct ChshEvaluation
{
  double B = 0.0;
  /// a, a', b, b'
  std::array<Direction, 4> settings{};
  bool violated = false;
  bool converged = true;
};

/// E(a, b) + E(a, b2) + E(a2, b) - E(a2, b2).
ChshEvaluation chsh_value(const CorrelationModel& model, const Direction& a, const Direction& a2, const Direction& b,
                          const Direction& b2);

/// Maximizes |B| over all four settings, starting from the standard
/// diagonal settings. Reports |B| at the optimum: flipping the sign of one
/// party's outcomes turns a negative B into a positive one.
ChshEvaluation optimize_chsh(const CorrelationModel& model, SearchConfig config);

} // namespace leggett
