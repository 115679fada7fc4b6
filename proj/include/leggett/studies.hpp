#pragma once

// Composite tasks built on the engine: rigid-rotation optimization of the
// settings, amplitude thresholds, parameter sweeps and the Leggett-implies-
// CHSH check.

#include "leggett/correlation.hpp"
#include "leggett/inequality.hpp"
#include "leggett/optimizer.hpp"

#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

namespace leggett {

enum class RotationMode
{
  /// One rotation applied to every setting of both parties.
  shared,
  /// A separate rotation per party.
  independent
};

std::string_view to_string(RotationMode m);
RotationMode parse_rotation_mode(std::string_view text);

/// Default search budgets.
SearchConfig default_bound_search(std::uint64_t seed = 0);
SearchConfig default_rigid_search(std::uint64_t seed = 0);
SearchConfig default_chsh_search(std::uint64_t seed = 0);

/// Maximizes L over rigid rotations of the settings (identity is start #0),
/// then evaluates the bound at the rotated settings.
LeggettEvaluation optimize_rigid(const CorrelationModel& model, const SettingsLayout& layout, BoundMode bound_mode,
                                 RotationMode rotation_mode, SearchConfig rigid_config,
                                 const SearchConfig& bound_config);

/// Everything needed to evaluate one Leggett margin once the amplitude and
/// setting parameter are fixed.
struct LeggettTask
{
  StateKind state = StateKind::ecs_plus;
  MeasurementFamily family = MeasurementFamily::pseudo_spin;
  LayoutName layout = LayoutName::threeplus7;
  BoundMode bound_mode = BoundMode::state_corrected;
  bool optimize = false;
  RotationMode rotation_mode = RotationMode::shared;
  ModelOptions model_options;
  SearchConfig bound_search = default_bound_search();
  SearchConfig rigid_search = default_rigid_search();
  SearchConfig chsh_search = default_chsh_search();
  /// Workers for grid points. Inner searches run single-threaded when > 1.
  unsigned threads = 0;

  CorrelationModel model(double alpha) const;
  LeggettEvaluation evaluate(double alpha, double phi) const;
};

/// Setting parameter at which the margin peaks in the large-amplitude
/// regime: 0.25 for threeplus7, 0.65 for threeplus6.
double default_phi(LayoutName layout);

enum class ThresholdVerdict
{
  threshold,
  always,
  never,
  window
};

std::string_view to_string(ThresholdVerdict v);

struct ThresholdResult
{
  ThresholdVerdict verdict = ThresholdVerdict::never;
  /// Midpoint of the final bracket; NaN unless a sign change was found.
  double alpha_star = std::numeric_limits<double>::quiet_NaN();
  double lo = std::numeric_limits<double>::quiet_NaN();
  double hi = std::numeric_limits<double>::quiet_NaN();
  double margin_lo = std::numeric_limits<double>::quiet_NaN();
  double margin_hi = std::numeric_limits<double>::quiet_NaN();
  double margin_at_star = std::numeric_limits<double>::quiet_NaN();
  double phi = 0.0;
  int evaluations = 0;
  /// (alpha, margin) from the coarse scan.
  std::vector<std::pair<double, double>> coarse;
};

struct ThresholdOptions
{
  double lo = 0.5;
  double hi = 10.0;
  double tolerance = 1e-3;
  double scan_step = 0.25;
  /// NaN picks default_phi(layout).
  double phi = std::numeric_limits<double>::quiet_NaN();
};

/// Coarse scan of margin(alpha) over [lo, hi], then bisection on the last
/// upward sign change until the bracket is narrower than the tolerance.
/// Keeps margin(lo) < 0 < margin(hi) at every step. The verdict is
/// "always"/"never" without a sign change, and "window" when the margin is
/// negative again at the upper end.
ThresholdResult threshold_alpha(const LeggettTask& task, const ThresholdOptions& options = {});

struct SweepRecord
{
  std::size_t index = 0;
  double alpha = 0.0;
  double phi = 0.0;
  double L = 0.0;
  double f_min_corrected = std::numeric_limits<double>::quiet_NaN();
  double f_min_analytic = std::numeric_limits<double>::quiet_NaN();
  double bound_used = 0.0;
  double chsh_B = std::numeric_limits<double>::quiet_NaN();
  double margin = 0.0;
  bool violated = false;
  int starts = 0;
  std::uint64_t seed = 0;
};

enum class ScanVariable
{
  phi,
  alpha
};

struct ScanOptions
{
  /// The value held fixed while the other variable runs over the grid.
  double alpha = 5.0;
  double phi = 0.25;
  bool with_chsh = false;
};

/// One record per grid point, sorted by index.
std::vector<SweepRecord> scan(ScanVariable variable, const std::vector<double>& grid, const LeggettTask& task,
                              const ScanOptions& options);

struct ImplicationPoint
{
  double alpha = 0.0;
  double phi = 0.0;
  double leggett_margin = 0.0;
  double chsh_B = 0.0;
};

struct ImplicationReport
{
  std::size_t points = 0;
  std::size_t leggett_violations = 0;
  /// Points settled as non-violating by a cheap upper bound on f_min.
  std::size_t screened = 0;
  std::vector<ImplicationPoint> counterexamples;
};

/// Evaluates the Leggett margin on the grid and, wherever it reports a
/// violation, an optimized CHSH value. Points with B <= 2 are returned as
/// counterexamples. Unoptimized state-corrected points whose L is already
/// below 4 - (objective at a cheaply found (u, v)) skip the full bound search;
/// their reported margin is then an upper bound.
ImplicationReport implication_check(const LeggettTask& task, const std::vector<double>& alpha_grid,
                                    const std::vector<double>& phi_grid);

} // namespace leggett
