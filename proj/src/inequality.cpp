#include "leggett/inequality.hpp"

#include "leggett/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace leggett {

namespace {

constexpr double pi = std::numbers::pi;

// Two starts must land within this of the best before a minimum is accepted.
constexpr double agreement = 1e-6;

Direction direction_at(const std::vector<double>& x, std::size_t offset) { return {x[offset], x[offset + 1]}; }

void require_numeric_layout(const SettingsLayout& layout)
{
  if (layout.name == LayoutName::original)
    throw std::invalid_argument("the original layout only supports the analytic bound");
  if (layout.name == LayoutName::chsh)
    throw std::invalid_argument("the chsh layout has no Leggett bound");
}

// The bound objectives are sums of |x|; the search smooths each to
// sqrt(x^2 + w^2) and finishes on the exact value.
const std::vector<double> smoothing_widths{1e-2, 1e-4, 1e-6};

double smooth_abs(double x, double w) { return w > 0.0 ? std::sqrt(x * x + w * w) : std::abs(x); }

double hidden_sum(const CorrelationModel& model, const SettingsLayout& layout, const Direction& u, const Direction& v,
                  double w)
{
  double total = 0.0;
  for (const auto& g : layout.groups) {
    double s = 0.0;
    for (const auto& t : g.terms)
      s += smooth_abs(model.local_avg_a(u, layout.a_list[t.a]) - model.local_avg_b(v, layout.b_list[t.b]), w);
    total += g.weight * s;
  }
  return total;
}

double relaxed_sum(const CorrelationModel& model, const SettingsLayout& layout, const Direction& v, double w)
{
  double total = 0.0;
  for (const auto& p : layout.bound_pairs)
    total += p.weight * smooth_abs(model.local_avg_b(v, layout.b_list[p.b_first]) -
                                       model.local_avg_b(v, layout.b_list[p.b_second]),
                                   w);
  return total;
}

SearchResult confirmed_minimum(const SmoothedObjective& f, SearchConfig config, int& starts_used)
{
  for (int attempt = 0;; ++attempt) {
    SearchResult r = continuation_minimize(f, smoothing_widths, config);
    starts_used = config.starts;
    if (r.agreeing_starts(agreement) >= 2)
      return r;
    if (attempt == 2)
      throw ConvergenceError("hidden-state minimum not confirmed after " + std::to_string(config.starts) +
                             " starts (best " + std::to_string(r.value) + ")");
    config.starts *= 2;
  }
}

} // namespace

std::string_view to_string(BoundMode m)
{
  return m == BoundMode::analytic2d ? "analytic2d" : "state_corrected";
}

BoundMode parse_bound_mode(std::string_view text)
{
  if (text == "analytic" || text == "analytic2d")
    return BoundMode::analytic2d;
  if (text == "corrected" || text == "state_corrected" || text == "state-corrected")
    return BoundMode::state_corrected;
  throw std::invalid_argument("unknown bound mode: " + std::string(text));
}

double leggett_value(const CorrelationModel& model, const SettingsLayout& layout)
{
  double total = 0.0;
  for (const auto& g : layout.groups) {
    double s = 0.0;
    for (const auto& t : g.terms)
      s += t.sign * model.correlation(layout.a_list[t.a], layout.b_list[t.b]);
    total += g.weight * std::abs(s);
  }
  return total;
}

double analytic_fmin(LayoutName name, double phi)
{
  const double s = std::abs(std::sin(phi / 2.0));
  switch (name) {
  case LayoutName::original:
    return 4.0 / pi * s;
  case LayoutName::threeplus7:
    return s;
  case LayoutName::threeplus6:
    return 4.0 / 3.0 * s;
  case LayoutName::chsh:
    break;
  }
  throw std::invalid_argument("the chsh layout has no Leggett bound");
}

BoundResult analytic_bound(LayoutName name, double phi)
{
  BoundResult r;
  r.mode = BoundMode::analytic2d;
  r.f_min = analytic_fmin(name, phi);
  r.bound = 4.0 - r.f_min;
  return r;
}

double hidden_objective(const CorrelationModel& model, const SettingsLayout& layout, const Direction& u,
                        const Direction& v)
{
  return hidden_sum(model, layout, u, v, 0.0);
}

double relaxed_objective(const CorrelationModel& model, const SettingsLayout& layout, const Direction& v)
{
  return relaxed_sum(model, layout, v, 0.0);
}

BoundResult numeric_fmin(const CorrelationModel& model, const SettingsLayout& layout, SearchConfig config)
{
  require_numeric_layout(layout);

  BoundResult r;
  r.mode = BoundMode::state_corrected;

  const ParameterRange polar{0.0, pi};
  const ParameterRange azimuth{-pi, pi};

  config.initial.clear();
  config.ranges = {polar, azimuth, polar, azimuth};
  int direct_starts = 0;
  const SearchResult direct = confirmed_minimum(
      [&](const std::vector<double>& x, double w) {
        return hidden_sum(model, layout, direction_at(x, 0), direction_at(x, 2), w);
      },
      config, direct_starts);

  config.ranges = {polar, azimuth};
  int relaxed_starts = 0;
  const SearchResult relaxed = confirmed_minimum(
      [&](const std::vector<double>& x, double w) { return relaxed_sum(model, layout, direction_at(x, 0), w); }, config,
      relaxed_starts);

  r.f_direct = std::max(0.0, direct.value);
  r.f_relaxed = std::max(0.0, relaxed.value);
  r.f_min = std::max(r.f_direct, r.f_relaxed);
  r.bound = 4.0 - r.f_min;
  r.argmin_u = to_direction(to_cartesian(direction_at(direct.point, 0)));
  r.argmin_v = to_direction(to_cartesian(direction_at(direct.point, 2)));
  for (const auto& g : layout.groups)
    for (const auto& t : g.terms)
      r.per_term.push_back(std::abs(model.local_avg_a(r.argmin_u, layout.a_list[t.a]) -
                                    model.local_avg_b(r.argmin_v, layout.b_list[t.b])));
  r.converged = direct.converged && relaxed.converged;
  r.starts_used = std::max(direct_starts, relaxed_starts);
  r.evaluations = direct.evaluations + relaxed.evaluations;
  return r;
}

BoundResult compute_bound(const CorrelationModel& model, const SettingsLayout& layout, BoundMode mode,
                          const SearchConfig& config)
{
  if (mode == BoundMode::analytic2d)
    return analytic_bound(layout.name, layout.phi);
  return numeric_fmin(model, layout, config);
}

LeggettEvaluation evaluate_leggett(const CorrelationModel& model, const SettingsLayout& layout, BoundMode mode,
                                   const SearchConfig& bound_config)
{
  LeggettEvaluation e;
  e.layout = layout;
  e.L = leggett_value(model, layout);
  e.L_reference = e.L;
  e.bound = compute_bound(model, layout, mode, bound_config);
  e.margin = e.L - e.bound.bound;
  e.violated = e.margin > violation_tolerance;
  return e;
}

ChshEvaluation chsh_value(const CorrelationModel& model, const Direction& a, const Direction& a2, const Direction& b,
                          const Direction& b2)
{
  ChshEvaluation c;
  c.settings = {a, a2, b, b2};
  c.B = model.correlation(a, b) + model.correlation(a, b2) + model.correlation(a2, b) - model.correlation(a2, b2);
  c.violated = c.B > 2.0;
  return c;
}

ChshEvaluation optimize_chsh(const CorrelationModel& model, SearchConfig config)
{
  const SettingsLayout standard = build_layout(LayoutName::chsh, pi / 4.0);
  const ParameterRange polar{0.0, pi};
  const ParameterRange azimuth{-pi, pi};
  config.ranges = {polar, azimuth, polar, azimuth, polar, azimuth, polar, azimuth};
  config.initial.clear();
  for (const auto* list : {&standard.a_list, &standard.b_list})
    for (const auto& d : *list) {
      config.initial.push_back(d.theta);
      config.initial.push_back(d.phi);
    }

  auto settings = [](const std::vector<double>& x) {
    return std::array<Direction, 4>{direction_at(x, 0), direction_at(x, 2), direction_at(x, 4), direction_at(x, 6)};
  };
  const SearchResult r = simplex_minimize(
      [&](const std::vector<double>& x) {
        const auto s = settings(x);
        return -std::abs(chsh_value(model, s[0], s[1], s[2], s[3]).B);
      },
      config);

  auto s = settings(r.point);
  for (auto& d : s)
    d = to_direction(to_cartesian(d));
  ChshEvaluation c = chsh_value(model, s[0], s[1], s[2], s[3]);
  c.B = std::abs(c.B);
  c.violated = c.B > 2.0;
  c.converged = r.converged;
  return c;
}

} // namespace leggett
