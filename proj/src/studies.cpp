#include "leggett/studies.hpp"

#include <cmath>
#include <optional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace leggett {

namespace {

constexpr double pi = std::numbers::pi;

LeggettTask serial_inner(const LeggettTask& task)
{
  LeggettTask t = task;
  t.bound_search.threads = 1;
  t.rigid_search.threads = 1;
  t.chsh_search.threads = 1;
  return t;
}

bool supports_numeric_bound(LayoutName name)
{
  return name == LayoutName::threeplus7 || name == LayoutName::threeplus6;
}

// Any (u, v) gives an upper bound on both f_min candidates, so
// L <= 4 - max(direct(u, v), relaxed(v)) proves the margin is not positive
// without the full search. Returns that margin bound, or nothing when the
// cheap search cannot decide.
std::optional<double> screened_margin(const LeggettTask& task, double alpha, double phi)
{
  if (task.optimize || task.bound_mode != BoundMode::state_corrected || !supports_numeric_bound(task.layout))
    return std::nullopt;
  const CorrelationModel m = task.model(alpha);
  const SettingsLayout s = build_layout(task.layout, phi);
  const double l = leggett_value(m, s);

  SearchConfig c = task.bound_search;
  c.starts = 4;
  c.restarts = 0;
  c.tolerance = 1e-8;
  c.initial.clear();
  const ParameterRange polar{0.0, pi}, azimuth{-pi, pi};
  c.ranges = {polar, azimuth, polar, azimuth};
  const SearchResult direct = simplex_minimize(
      [&](const std::vector<double>& x) { return hidden_objective(m, s, {x[0], x[1]}, {x[2], x[3]}); }, c);
  const double relaxed = relaxed_objective(m, s, {direct.point[2], direct.point[3]});
  const double margin = l - (4.0 - std::max(direct.value, relaxed));
  if (margin <= 0.0)
    return margin;
  return std::nullopt;
}

} // namespace

std::string_view to_string(RotationMode m) { return m == RotationMode::shared ? "shared" : "independent"; }

RotationMode parse_rotation_mode(std::string_view text)
{
  if (text == "shared")
    return RotationMode::shared;
  if (text == "independent")
    return RotationMode::independent;
  throw std::invalid_argument("unknown rotation mode: " + std::string(text));
}

SearchConfig default_bound_search(std::uint64_t seed)
{
  SearchConfig c;
  c.starts = 32;
  c.seed = seed;
  return c;
}

SearchConfig default_rigid_search(std::uint64_t seed)
{
  SearchConfig c;
  c.starts = 64;
  c.seed = seed;
  return c;
}

SearchConfig default_chsh_search(std::uint64_t seed)
{
  SearchConfig c;
  c.starts = 16;
  c.seed = seed;
  return c;
}

LeggettEvaluation optimize_rigid(const CorrelationModel& model, const SettingsLayout& layout, BoundMode bound_mode,
                                 RotationMode rotation_mode, SearchConfig rigid_config,
                                 const SearchConfig& bound_config)
{
  const ParameterRange turn{-pi, pi};
  const ParameterRange tilt{0.0, pi};
  const std::size_t k = rotation_mode == RotationMode::shared ? 3 : 6;
  rigid_config.ranges = {turn, tilt, turn};
  if (k == 6)
    rigid_config.ranges.insert(rigid_config.ranges.end(), {turn, tilt, turn});
  rigid_config.initial.assign(k, 0.0);

  auto rotations = [k](const std::vector<double>& x) {
    const RigidRotation ra{x[0], x[1], x[2]};
    const RigidRotation rb = k == 6 ? RigidRotation{x[3], x[4], x[5]} : ra;
    return std::pair{ra, rb};
  };

  const SearchResult r = simplex_minimize(
      [&](const std::vector<double>& x) {
        const auto [ra, rb] = rotations(x);
        return -leggett_value(model, rotate_settings(ra, rb, layout));
      },
      rigid_config);

  const auto [ra, rb] = rotations(r.point);
  LeggettEvaluation e = evaluate_leggett(model, rotate_settings(ra, rb, layout), bound_mode, bound_config);
  e.rotation_a = ra;
  e.rotation_b = rb;
  e.L_reference = leggett_value(model, layout);
  e.rotation_converged = r.converged;
  return e;
}

CorrelationModel LeggettTask::model(double alpha) const
{
  return CorrelationModel::make(state, family, alpha, model_options);
}

LeggettEvaluation LeggettTask::evaluate(double alpha, double phi) const
{
  const CorrelationModel m = model(alpha);
  const SettingsLayout s = build_layout(layout, phi);
  if (optimize)
    return optimize_rigid(m, s, bound_mode, rotation_mode, rigid_search, bound_search);
  return evaluate_leggett(m, s, bound_mode, bound_search);
}

double default_phi(LayoutName layout)
{
  switch (layout) {
  case LayoutName::threeplus7:
    return 0.25;
  case LayoutName::threeplus6:
    return 0.65;
  case LayoutName::original:
  case LayoutName::chsh:
    break;
  }
  throw std::invalid_argument("no default setting parameter for layout " + std::string(to_string(layout)));
}

std::string_view to_string(ThresholdVerdict v)
{
  switch (v) {
  case ThresholdVerdict::threshold:
    return "threshold";
  case ThresholdVerdict::always:
    return "always";
  case ThresholdVerdict::never:
    return "never";
  case ThresholdVerdict::window:
    return "window";
  }
  return "?";
}

ThresholdResult threshold_alpha(const LeggettTask& task, const ThresholdOptions& options)
{
  if (!(options.lo < options.hi) || !(options.scan_step > 0.0) || !(options.tolerance > 0.0))
    throw std::invalid_argument("threshold_alpha: need lo < hi and positive step and tolerance");

  ThresholdResult out;
  out.phi = std::isnan(options.phi) ? default_phi(task.layout) : options.phi;

  const auto steps = static_cast<std::size_t>(std::ceil((options.hi - options.lo) / options.scan_step - 1e-9));
  std::vector<double> grid;
  for (std::size_t i = 0; i < steps; ++i)
    grid.push_back(options.lo + static_cast<double>(i) * options.scan_step);
  grid.push_back(options.hi);

  const LeggettTask inner = serial_inner(task);
  const LeggettTask& runner = task.threads == 1 ? task : inner;
  std::vector<double> margins(grid.size());
  parallel_for(grid.size(), task.threads, [&](std::size_t i) { margins[i] = runner.evaluate(grid[i], out.phi).margin; });
  out.evaluations = static_cast<int>(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    out.coarse.emplace_back(grid[i], margins[i]);

  std::size_t positive = 0;
  for (double m : margins)
    positive += m > 0.0 ? 1 : 0;
  if (positive == margins.size()) {
    out.verdict = ThresholdVerdict::always;
    return out;
  }
  if (positive == 0) {
    out.verdict = ThresholdVerdict::never;
    return out;
  }

  std::size_t last_up = grid.size();
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (margins[i] < 0.0 && margins[i + 1] > 0.0)
      last_up = i;
  if (last_up == grid.size()) {
    // Positive only at the lower end: the violation window starts below lo.
    out.verdict = ThresholdVerdict::window;
    return out;
  }
  out.verdict = margins.back() > 0.0 ? ThresholdVerdict::threshold : ThresholdVerdict::window;

  double lo = grid[last_up], hi = grid[last_up + 1];
  double m_lo = margins[last_up], m_hi = margins[last_up + 1];
  while (hi - lo > options.tolerance) {
    const double mid = 0.5 * (lo + hi);
    const double m = task.evaluate(mid, out.phi).margin;
    ++out.evaluations;
    if (m > 0.0) {
      hi = mid;
      m_hi = m;
    } else {
      lo = mid;
      m_lo = m;
    }
  }
  out.lo = lo;
  out.hi = hi;
  out.margin_lo = m_lo;
  out.margin_hi = m_hi;
  out.alpha_star = 0.5 * (lo + hi);
  out.margin_at_star = task.evaluate(out.alpha_star, out.phi).margin;
  ++out.evaluations;
  return out;
}

std::vector<SweepRecord> scan(ScanVariable variable, const std::vector<double>& grid, const LeggettTask& task,
                              const ScanOptions& options)
{
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("scan: grid must be strictly increasing");

  const LeggettTask inner = serial_inner(task);
  const LeggettTask& runner = task.threads == 1 ? task : inner;
  std::vector<SweepRecord> records(grid.size());

  parallel_for(grid.size(), task.threads, [&](std::size_t i) {
    SweepRecord& r = records[i];
    r.index = i;
    r.alpha = variable == ScanVariable::alpha ? grid[i] : options.alpha;
    r.phi = variable == ScanVariable::phi ? grid[i] : options.phi;
    r.starts = runner.bound_search.starts;
    r.seed = runner.bound_search.seed;

    const CorrelationModel model = runner.model(r.alpha);
    if (task.layout != LayoutName::chsh) {
      const LeggettEvaluation e = runner.evaluate(r.alpha, r.phi);
      r.L = e.L;
      r.f_min_analytic = analytic_fmin(task.layout, r.phi);
      if (e.bound.mode == BoundMode::state_corrected) {
        r.f_min_corrected = e.bound.f_min;
        r.starts = e.bound.starts_used;
      } else if (supports_numeric_bound(task.layout)) {
        const BoundResult b = numeric_fmin(model, e.layout, runner.bound_search);
        r.f_min_corrected = b.f_min;
        r.starts = b.starts_used;
      }
      r.bound_used = e.bound.bound;
      r.margin = e.margin;
      r.violated = e.violated;
    }
    if (options.with_chsh || task.layout == LayoutName::chsh) {
      r.chsh_B = optimize_chsh(model, runner.chsh_search).B;
      if (task.layout == LayoutName::chsh) {
        r.L = r.chsh_B;
        r.bound_used = 2.0;
        r.margin = r.chsh_B - 2.0;
        r.violated = r.margin > violation_tolerance;
      }
    }
  });
  return records;
}

ImplicationReport implication_check(const LeggettTask& task, const std::vector<double>& alpha_grid,
                                    const std::vector<double>& phi_grid)
{
  const LeggettTask inner = serial_inner(task);
  const LeggettTask& runner = task.threads == 1 ? task : inner;
  const std::size_t n = alpha_grid.size() * phi_grid.size();

  struct Slot
  {
    bool violated = false;
    bool screened = false;
    ImplicationPoint point;
  };
  std::vector<Slot> slots(n);
  parallel_for(n, task.threads, [&](std::size_t k) {
    Slot& s = slots[k];
    s.point.alpha = alpha_grid[k / phi_grid.size()];
    s.point.phi = phi_grid[k % phi_grid.size()];
    if (auto margin = screened_margin(runner, s.point.alpha, s.point.phi)) {
      s.point.leggett_margin = *margin;
      s.screened = true;
      return;
    }
    const LeggettEvaluation e = runner.evaluate(s.point.alpha, s.point.phi);
    s.point.leggett_margin = e.margin;
    s.violated = e.violated;
    if (s.violated)
      s.point.chsh_B = optimize_chsh(runner.model(s.point.alpha), runner.chsh_search).B;
  });

  ImplicationReport report;
  report.points = n;
  for (const auto& s : slots) {
    report.screened += s.screened ? 1 : 0;
    if (!s.violated)
      continue;
    ++report.leggett_violations;
    if (!(s.point.chsh_B > 2.0))
      report.counterexamples.push_back(s.point);
  }
  return report;
}

} // namespace leggett
