#include "leggett/cli/runner.hpp"

#include "leggett/errors.hpp"
#include "leggett/inequality.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <limits>
#include <ostream>

namespace leggett::cli {

namespace {

using nlohmann::json;

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string join_path(const std::string& dir, const std::string& file)
{
  return (std::filesystem::path(dir) / file).string();
}

json records_json(const std::vector<SweepRecord>& records)
{
  json rows = json::array();
  for (const auto& r : records)
    rows.push_back({{"index", r.index},
                    {"alpha", number(r.alpha)},
                    {"phi", number(r.phi)},
                    {"L", number(r.L)},
                    {"f_min_corrected", number(r.f_min_corrected)},
                    {"f_min_analytic", number(r.f_min_analytic)},
                    {"bound_used", number(r.bound_used)},
                    {"chsh_B", number(r.chsh_B)},
                    {"margin", number(r.margin)},
                    {"violated", r.violated},
                    {"starts", r.starts},
                    {"seed", r.seed}});
  return rows;
}

std::string table_json(const CsvTable& t)
{
  json rows = json::array();
  for (const auto& r : t.rows) {
    json o = json::object();
    for (std::size_t i = 0; i < t.header.size() && i < r.size(); ++i)
      o[t.header[i]] = r[i];
    rows.push_back(o);
  }
  return rows.dump() + "\n";
}

Series column_series(const std::string& name, const std::vector<SweepRecord>& rs, bool by_alpha,
                     double SweepRecord::*field)
{
  Series s{name, {}, {}};
  for (const auto& r : rs) {
    s.x.push_back(by_alpha ? r.alpha : r.phi);
    s.y.push_back(r.*field);
  }
  return s;
}

// Writes a sweep in the configured format and returns the path.
std::string write_sweep(const std::string& path, OutputFormat format, const std::vector<SweepRecord>& records,
                        bool by_alpha, const std::string& title)
{
  switch (format) {
  case OutputFormat::csv:
    write_file(path, sweep_table(records).str());
    break;
  case OutputFormat::json:
    write_file(path, records_json(records).dump() + "\n");
    break;
  case OutputFormat::svg: {
    std::vector<Series> s{column_series("L", records, by_alpha, &SweepRecord::L),
                          column_series("bound", records, by_alpha, &SweepRecord::bound_used)};
    if (!records.empty() && !std::isnan(records.front().chsh_B))
      s.push_back(column_series("CHSH B", records, by_alpha, &SweepRecord::chsh_B));
    write_file(path, line_chart_svg(title, by_alpha ? "alpha" : "phi", s));
    break;
  }
  }
  return path;
}

void write_table(const std::string& path, OutputFormat format, const CsvTable& t)
{
  if (format == OutputFormat::json)
    write_file(path, table_json(t));
  else
    write_file(path, t.str());
}

struct SweepStats
{
  std::size_t violations = 0;
  double max_margin = -std::numeric_limits<double>::infinity();
  double argmax = nan;
  double min_chsh = std::numeric_limits<double>::infinity();
  double first_violation = nan;
};

SweepStats stats(const std::vector<SweepRecord>& records, bool by_alpha)
{
  SweepStats s;
  for (const auto& r : records) {
    if (r.violated) {
      ++s.violations;
      if (std::isnan(s.first_violation))
        s.first_violation = by_alpha ? r.alpha : r.phi;
    }
    if (r.margin > s.max_margin) {
      s.max_margin = r.margin;
      s.argmax = by_alpha ? r.alpha : r.phi;
    }
    if (!std::isnan(r.chsh_B))
      s.min_chsh = std::min(s.min_chsh, r.chsh_B);
  }
  if (!std::isfinite(s.min_chsh))
    s.min_chsh = nan;
  return s;
}

json stats_json(const SweepStats& s)
{
  return {{"violations", s.violations},
          {"max_margin", number(s.max_margin)},
          {"argmax", number(s.argmax)},
          {"min_chsh_B", number(s.min_chsh)},
          {"first_violation", number(s.first_violation)}};
}

json run_scan(const RunConfig& c)
{
  const bool by_alpha = c.command == Command::scan_alpha;
  const ScanVariable v = by_alpha ? ScanVariable::alpha : ScanVariable::phi;
  const std::vector<double> grid = by_alpha ? c.alpha->values() : c.phi->values();
  ScanOptions o;
  o.alpha = c.alpha->lo;
  o.phi = c.phi->lo;
  o.with_chsh = c.with_chsh;
  const auto records = scan(v, grid, c.task(), o);
  write_sweep(c.output, c.format, records, by_alpha, std::string(to_string(c.command)));
  json j = {{"command", to_string(c.command)}, {"rows", records.size()}, {"output", c.output}, {"seed", c.seed}};
  j.update(stats_json(stats(records, by_alpha)));
  return j;
}

json run_threshold(const RunConfig& c)
{
  ThresholdOptions o;
  o.lo = c.alpha->lo;
  o.hi = c.alpha->hi;
  o.scan_step = c.alpha->step;
  o.tolerance = c.tolerance;
  o.phi = c.phi->lo;
  const ThresholdResult r = threshold_alpha(c.task(), o);

  CsvTable t{{"alpha", "margin"}, {}};
  for (const auto& [a, m] : r.coarse)
    t.rows.push_back({format_number(a), format_number(m)});
  if (c.format == OutputFormat::svg) {
    Series s{"margin", {}, {}};
    for (const auto& [a, m] : r.coarse) {
      s.x.push_back(a);
      s.y.push_back(m);
    }
    write_file(c.output, line_chart_svg("threshold scan", "alpha", {s}));
  } else {
    write_table(c.output, c.format, t);
  }
  return {{"command", "threshold"},
          {"verdict", to_string(r.verdict)},
          {"alpha_star", number(r.alpha_star)},
          {"lo", number(r.lo)},
          {"hi", number(r.hi)},
          {"margin_lo", number(r.margin_lo)},
          {"margin_hi", number(r.margin_hi)},
          {"margin_at_star", number(r.margin_at_star)},
          {"phi", r.phi},
          {"evaluations", r.evaluations},
          {"output", c.output},
          {"seed", c.seed}};
}

double closed_form_chsh(const RunConfig& c, double alpha)
{
  if (c.state == StateKind::pes)
    return 2.0 * std::sqrt(2.0);
  if (c.state == StateKind::ecs_minus && c.family == MeasurementFamily::pseudo_spin) {
    const double k = kappa_K(alpha);
    return 2.0 * std::sqrt(1.0 + k * k);
  }
  return nan;
}

json run_chsh(const RunConfig& c)
{
  const std::vector<double> grid = c.alpha->values();
  const LeggettTask task = c.task();
  SearchConfig search = task.chsh_search;
  search.threads = 1;
  std::vector<ChshEvaluation> results(grid.size());
  parallel_for(grid.size(), c.threads, [&](std::size_t i) { results[i] = optimize_chsh(task.model(grid[i]), search); });

  CsvTable t{{"index", "alpha", "B", "B_closed_form", "violated", "converged", "starts", "seed"}, {}};
  double min_b = std::numeric_limits<double>::infinity(), max_b = -min_b, worst_gap = 0.0;
  std::size_t violated = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const ChshEvaluation& e = results[i];
    const double closed = closed_form_chsh(c, grid[i]);
    t.rows.push_back({std::to_string(i), format_number(grid[i]), format_number(e.B), format_number(closed),
                      e.violated ? "true" : "false", e.converged ? "true" : "false", std::to_string(search.starts),
                      std::to_string(c.seed)});
    min_b = std::min(min_b, e.B);
    max_b = std::max(max_b, e.B);
    violated += e.violated ? 1 : 0;
    if (!std::isnan(closed))
      worst_gap = std::max(worst_gap, std::abs(e.B - closed));
  }
  if (c.format == OutputFormat::svg) {
    Series b{"CHSH B", grid, {}};
    for (const auto& e : results)
      b.y.push_back(e.B);
    write_file(c.output, line_chart_svg("optimized CHSH", "alpha", {b, Series{"local bound", grid, std::vector<double>(grid.size(), 2.0)}}));
  } else {
    write_table(c.output, c.format, t);
  }
  const bool has_closed = !std::isnan(closed_form_chsh(c, grid.front()));
  return {{"command", "chsh"},
          {"rows", grid.size()},
          {"violations", violated},
          {"min_B", number(min_b)},
          {"max_B", number(max_b)},
          {"max_closed_form_gap", has_closed ? number(worst_gap) : json(nullptr)},
          {"output", c.output},
          {"seed", c.seed}};
}

json run_bound(const RunConfig& c)
{
  const std::vector<double> grid = c.phi->values();
  const LeggettTask task = c.task();
  SearchConfig search = task.bound_search;
  search.threads = 1;
  const CorrelationModel model = task.model(c.alpha->lo);
  std::vector<BoundResult> results(grid.size());
  parallel_for(grid.size(), c.threads,
               [&](std::size_t i) { results[i] = numeric_fmin(model, build_layout(c.layout, grid[i]), search); });

  CsvTable t{{"index", "alpha", "phi", "f_direct", "f_relaxed", "f_min", "f_min_analytic", "bound", "converged",
              "starts", "seed"},
             {}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const BoundResult& b = results[i];
    t.rows.push_back({std::to_string(i), format_number(c.alpha->lo), format_number(grid[i]), format_number(b.f_direct),
                      format_number(b.f_relaxed), format_number(b.f_min),
                      format_number(analytic_fmin(c.layout, grid[i])), format_number(b.bound),
                      b.converged ? "true" : "false", std::to_string(b.starts_used), std::to_string(c.seed)});
  }
  if (c.format == OutputFormat::svg) {
    Series f{"f_min", grid, {}}, a{"analytic f_min", grid, {}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      f.y.push_back(results[i].f_min);
      a.y.push_back(analytic_fmin(c.layout, grid[i]));
    }
    write_file(c.output, line_chart_svg("non-local realistic bound", "phi", {f, a}));
  } else {
    write_table(c.output, c.format, t);
  }
  double max_gap = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    max_gap = std::max(max_gap, std::abs(results[i].f_min - analytic_fmin(c.layout, grid[i])));
  return {{"command", "bound"}, {"rows", grid.size()}, {"max_analytic_gap", max_gap}, {"output", c.output}, {"seed", c.seed}};
}

// Figure presets. Flags given explicitly replace the preset alpha or phi.
struct Sweep
{
  std::string name;
  RunConfig config;
  ScanVariable variable;
  std::vector<double> grid;
  ScanOptions options;
  std::vector<SweepRecord> records;
};

std::string alpha_tag(double a) { return "alpha" + format_number(a); }

std::vector<Sweep> figure_sweeps(const RunConfig& base)
{
  auto derived = [&](StateKind state, MeasurementFamily family, LayoutName layout, bool optimize) {
    RunConfig c = base;
    c.state = state;
    c.family = family;
    c.layout = layout;
    c.optimize = optimize;
    c.bound = BoundMode::state_corrected;
    return c;
  };
  auto alphas = [&](std::vector<double> preset) { return base.alpha ? base.alpha->values() : preset; };
  auto grid = [](const std::optional<Range>& given, Range preset) { return (given ? *given : preset).values(); };

  std::vector<Sweep> out;
  if (base.figure == "fig3" || base.figure == "fig4" || base.figure == "fig6") {
    const bool fig3 = base.figure == "fig3";
    const bool fig6 = base.figure == "fig6";
    const RunConfig c = derived(StateKind::ecs_minus, fig3 ? MeasurementFamily::parity : MeasurementFamily::pseudo_spin,
                                fig6 ? LayoutName::threeplus6 : LayoutName::threeplus7, fig3);
    const Range phis = fig6 ? Range{0.01, 1.2, 0.01} : fig3 ? Range{0.02, 0.6, 0.02} : Range{0.01, 0.6, 0.01};
    for (double a : alphas({5.0, 50.0}))
      out.push_back({base.figure + "_" + alpha_tag(a), c, ScanVariable::phi, grid(base.phi, phis), {.alpha = a}, {}});
    if (fig6) {
      const double phi = base.phi && base.phi->single() ? base.phi->lo : 0.65;
      out.push_back({"fig6_alpha_scan", c, ScanVariable::alpha, grid(std::nullopt, {0.1, 10.0, 0.1}),
                     {.phi = phi, .with_chsh = true}, {}});
      if (base.alpha && !base.alpha->single())
        out.back().grid = base.alpha->values();
    }
  } else if (base.figure == "fig5") {
    const double phi = base.phi && base.phi->single() ? base.phi->lo : 0.25;
    const std::vector<double> g = base.alpha && !base.alpha->single() ? base.alpha->values()
                                                                       : Range{0.1, 10.0, 0.2}.values();
    for (StateKind s : {StateKind::ecs_plus, StateKind::ecs_minus}) {
      const std::string tag = s == StateKind::ecs_plus ? "ecs_plus" : "ecs_minus";
      out.push_back({"fig5_" + tag + "_plain", derived(s, MeasurementFamily::pseudo_spin, LayoutName::threeplus7, false),
                     ScanVariable::alpha, g, {.phi = phi}, {}});
      out.push_back({"fig5_" + tag + "_optimized",
                     derived(s, MeasurementFamily::pseudo_spin, LayoutName::threeplus7, true), ScanVariable::alpha, g,
                     {.phi = phi, .with_chsh = true}, {}});
    }
  }
  return out;
}

json run_reproduce(const RunConfig& c)
{
  std::vector<Sweep> sweeps = figure_sweeps(c);
  json files = json::array();
  json per_sweep = json::object();
  std::size_t rows = 0, violations = 0;
  const OutputFormat table_format = c.format == OutputFormat::json ? OutputFormat::json : OutputFormat::csv;
  std::vector<Series> chart;
  for (auto& s : sweeps) {
    const bool by_alpha = s.variable == ScanVariable::alpha;
    s.records = scan(s.variable, s.grid, s.config.task(), s.options);
    const std::string path = join_path(c.output, s.name + "." + std::string(to_string(table_format)));
    files.push_back(write_sweep(path, table_format, s.records, by_alpha, s.name));
    const SweepStats st = stats(s.records, by_alpha);
    per_sweep[s.name] = stats_json(st);
    rows += s.records.size();
    violations += st.violations;
    if (chart.size() < 4 && s.variable == sweeps.front().variable) {
      chart.push_back(column_series("L " + s.name, s.records, by_alpha, &SweepRecord::L));
      if (chart.size() < 4)
        chart.push_back(column_series("bound " + s.name, s.records, by_alpha, &SweepRecord::bound_used));
    }
  }
  if (c.format == OutputFormat::svg) {
    const std::string path = join_path(c.output, c.figure + ".svg");
    write_file(path, line_chart_svg(c.figure, sweeps.front().variable == ScanVariable::alpha ? "alpha" : "phi", chart));
    files.push_back(path);
  }

  // Largest distance between the bound curves of the two amplitudes.
  double bound_gap = nan;
  if (sweeps.size() >= 2 && sweeps[0].variable == ScanVariable::phi && sweeps[1].variable == ScanVariable::phi &&
      sweeps[0].grid == sweeps[1].grid) {
    bound_gap = 0.0;
    for (std::size_t i = 0; i < sweeps[0].records.size(); ++i)
      bound_gap = std::max(bound_gap, std::abs(sweeps[0].records[i].bound_used - sweeps[1].records[i].bound_used));
  }
  return {{"command", "reproduce"},
          {"figure", c.figure},
          {"files", files},
          {"rows", rows},
          {"violations", violations},
          {"bound_gap", number(bound_gap)},
          {"sweeps", per_sweep},
          {"output", c.output},
          {"seed", c.seed}};
}

} // namespace

CsvTable sweep_table(const std::vector<SweepRecord>& records)
{
  CsvTable t{{"index", "alpha", "phi", "L", "f_min_corrected", "f_min_analytic", "bound_used", "chsh_B", "margin",
              "violated", "starts", "seed"},
             {}};
  for (const auto& r : records)
    t.rows.push_back({std::to_string(r.index), format_number(r.alpha), format_number(r.phi), format_number(r.L),
                      format_number(r.f_min_corrected), format_number(r.f_min_analytic), format_number(r.bound_used),
                      format_number(r.chsh_B), format_number(r.margin), r.violated ? "true" : "false",
                      std::to_string(r.starts), std::to_string(r.seed)});
  return t;
}

std::string execute(const RunConfig& c)
{
  json j;
  switch (c.command) {
  case Command::scan_phi:
  case Command::scan_alpha:
    j = run_scan(c);
    break;
  case Command::threshold:
    j = run_threshold(c);
    break;
  case Command::chsh:
    j = run_chsh(c);
    break;
  case Command::bound:
    j = run_bound(c);
    break;
  case Command::reproduce:
    j = run_reproduce(c);
    break;
  }
  return j.dump();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  ParsedArguments parsed;
  try {
    parsed = parse_command_line(args);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n\n" << e.usage();
    return 2;
  }
  if (!parsed.help.empty()) {
    out << parsed.help;
    return 0;
  }
  try {
    out << execute(parsed.config) << '\n';
    return 0;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << '\n';
    return 1;
  }
}

} // namespace leggett::cli
