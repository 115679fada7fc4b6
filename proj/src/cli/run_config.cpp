#include "leggett/cli/run_config.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <sstream>

namespace leggett::cli {

namespace {

std::string format_exact(double v)
{
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

double parse_number(std::string_view text)
{
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto r = std::from_chars(text.data(), end, v);
  if (r.ec != std::errc{} || r.ptr != end || !std::isfinite(v))
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  return v;
}

// Plain strings as collected by CLI11; empty means not given.
struct RawOptions
{
  std::string command;
  std::string figure;
  std::string state;
  std::string family;
  std::string layout;
  std::string alpha;
  std::string phi;
  std::string bound;
  bool optimize = false;
  std::string rotation;
  int starts = 32;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  double tolerance = 1e-3;
  bool with_chsh = false;
  std::string output;
  std::string format;
};

void declare(CLI::App& app, RawOptions& o)
{
  app.add_option("command", o.command, "scan-phi, scan-alpha, threshold, chsh, bound or reproduce");
  app.add_option("figure", o.figure, "fig3, fig4, fig5 or fig6 (reproduce)");
  app.add_option("--state", o.state, "pes, ecs+ or ecs-");
  app.add_option("--family", o.family, "qubit, pseudospin, onoff or parity");
  app.add_option("--layout", o.layout, "3p7, 3p6, original or chsh");
  app.add_option("--alpha", o.alpha, "amplitude, value or lo:hi:step");
  app.add_option("--phi", o.phi, "layout parameter, value or lo:hi:step");
  app.add_option("--bound", o.bound, "analytic2d or state_corrected");
  app.add_flag("--optimize", o.optimize, "maximize L over rigid rotations of the settings");
  app.add_option("--rotation", o.rotation, "shared or independent");
  app.add_option("--starts", o.starts, "starts of the f_min search")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "seed for every search")->envname("LEGGETT_LAB_SEED");
  app.add_option("--threads", o.threads, "worker threads, 0 for all cores");
  app.add_option("--tolerance", o.tolerance, "threshold bracket width")->check(CLI::PositiveNumber);
  app.add_flag("--with-chsh", o.with_chsh, "add an optimized CHSH value to every scan row");
  app.add_option("--output,-o", o.output, "output file, or directory for reproduce");
  app.add_option("--format", o.format, "csv, json or svg");
}

Range default_alpha(Command c)
{
  switch (c) {
  case Command::scan_alpha:
  case Command::threshold:
    return {0.5, 10.0, 0.25};
  case Command::chsh:
    return {0.1, 10.0, 0.1};
  default:
    return {5.0, 5.0, 0.0};
  }
}

Range default_phi(Command c, LayoutName layout)
{
  switch (c) {
  case Command::scan_phi:
    return {0.0, 1.2, 0.01};
  case Command::bound:
    return {0.0, 1.2, 0.05};
  default: {
    const double p = layout == LayoutName::threeplus6 || layout == LayoutName::threeplus7 ? leggett::default_phi(layout)
                                                                                         : 0.25;
    return {p, p, 0.0};
  }
  }
}

std::string default_output(Command c, OutputFormat f)
{
  if (c == Command::reproduce)
    return "reproduce";
  return std::string(to_string(c)) + "." + std::string(to_string(f));
}

RunConfig resolve(const RawOptions& o, bool fill_defaults)
{
  RunConfig c;
  if (o.command.empty())
    throw std::invalid_argument("missing command");
  c.command = parse_command(o.command);
  c.figure = o.figure;
  if (c.command == Command::reproduce) {
    if (c.figure != "fig3" && c.figure != "fig4" && c.figure != "fig5" && c.figure != "fig6")
      throw std::invalid_argument("reproduce needs one of fig3, fig4, fig5, fig6");
  } else if (!c.figure.empty()) {
    throw std::invalid_argument("unexpected argument '" + c.figure + "'");
  }
  if (!o.state.empty())
    c.state = parse_state_kind(o.state);
  if (!o.family.empty())
    c.family = parse_family(o.family);
  else
    c.family = c.state == StateKind::pes ? MeasurementFamily::qubit_projective : MeasurementFamily::pseudo_spin;
  if (!o.layout.empty())
    c.layout = parse_layout_name(o.layout);
  else if (c.command == Command::chsh)
    c.layout = LayoutName::chsh;
  if (!o.bound.empty())
    c.bound = parse_bound_mode(o.bound);
  c.optimize = o.optimize;
  if (!o.rotation.empty())
    c.rotation = parse_rotation_mode(o.rotation);
  c.starts = o.starts;
  c.seed = o.seed;
  c.threads = o.threads;
  c.tolerance = o.tolerance;
  c.with_chsh = o.with_chsh;
  if (!o.format.empty())
    c.format = parse_format(o.format);

  const bool preset = c.command == Command::reproduce;
  if (!o.alpha.empty())
    c.alpha = parse_range(o.alpha);
  else if (fill_defaults && !preset)
    c.alpha = default_alpha(c.command);
  if (!o.phi.empty())
    c.phi = parse_range(o.phi);
  else if (fill_defaults && !preset)
    c.phi = default_phi(c.command, c.layout);
  c.output = !o.output.empty() || !fill_defaults ? o.output : default_output(c.command, c.format);

  if (c.state == StateKind::pes && c.family != MeasurementFamily::qubit_projective)
    throw std::invalid_argument("pes is measured with the qubit family");
  if (c.state != StateKind::pes && c.family == MeasurementFamily::qubit_projective)
    throw std::invalid_argument("ECS measurements are pseudospin, onoff or parity");

  auto need_single = [](const Range& r, const char* name) {
    if (!r.single())
      throw std::invalid_argument(std::string("--") + name + " must be a single value for this command");
  };
  auto need_grid = [](const Range& r, const char* name) {
    if (r.single())
      throw std::invalid_argument(std::string("--") + name + " must be a lo:hi:step grid for this command");
  };
  if (!preset && fill_defaults) {
    switch (c.command) {
    case Command::scan_phi:
    case Command::bound:
      need_single(*c.alpha, "alpha");
      break;
    case Command::scan_alpha:
      need_single(*c.phi, "phi");
      break;
    case Command::threshold:
      need_grid(*c.alpha, "alpha");
      need_single(*c.phi, "phi");
      break;
    default:
      break;
    }
  }
  if (c.command == Command::bound &&
      !(c.layout == LayoutName::threeplus6 || c.layout == LayoutName::threeplus7))
    throw std::invalid_argument("bound needs the 3p7 or 3p6 layout");
  if (c.command == Command::threshold && c.layout == LayoutName::chsh)
    throw std::invalid_argument("threshold needs a Leggett layout");
  return c;
}

std::string usage_text()
{
  CLI::App app{"Leggett and CHSH inequality lab for entangled coherent states", "leggett_lab"};
  RawOptions o;
  declare(app, o);
  app.set_config("--config", "", "key = value file; flags override it");
  return app.help();
}

} // namespace

std::string_view to_string(Command c)
{
  switch (c) {
  case Command::scan_phi:
    return "scan-phi";
  case Command::scan_alpha:
    return "scan-alpha";
  case Command::threshold:
    return "threshold";
  case Command::chsh:
    return "chsh";
  case Command::bound:
    return "bound";
  case Command::reproduce:
    return "reproduce";
  }
  return "?";
}

Command parse_command(std::string_view text)
{
  for (Command c : {Command::scan_phi, Command::scan_alpha, Command::threshold, Command::chsh, Command::bound,
                    Command::reproduce})
    if (text == to_string(c))
      return c;
  throw std::invalid_argument("unknown command: " + std::string(text));
}

std::string_view to_string(OutputFormat f)
{
  switch (f) {
  case OutputFormat::csv:
    return "csv";
  case OutputFormat::json:
    return "json";
  case OutputFormat::svg:
    return "svg";
  }
  return "?";
}

OutputFormat parse_format(std::string_view text)
{
  for (OutputFormat f : {OutputFormat::csv, OutputFormat::json, OutputFormat::svg})
    if (text == to_string(f))
      return f;
  throw std::invalid_argument("unknown format: " + std::string(text));
}

std::vector<double> Range::values() const
{
  if (single())
    return {lo};
  std::vector<double> out;
  for (std::size_t i = 0;; ++i) {
    const double v = lo + static_cast<double>(i) * step;
    if (!(v < hi + step / 2.0))
      break;
    out.push_back(v);
  }
  return out;
}

Range parse_range(std::string_view text)
{
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  for (std::size_t i = 0; i <= text.size(); ++i)
    if (i == text.size() || text[i] == ':') {
      parts.push_back(text.substr(begin, i - begin));
      begin = i + 1;
    }
  if (parts.size() == 1) {
    const double v = parse_number(parts[0]);
    return {v, v, 0.0};
  }
  if (parts.size() != 3)
    throw std::invalid_argument("range must be a value or lo:hi:step, got '" + std::string(text) + "'");
  const Range r{parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2])};
  if (!(r.step > 0.0))
    throw std::invalid_argument("range step must be positive");
  if (r.hi < r.lo)
    throw std::invalid_argument("range needs lo <= hi");
  return r;
}

std::string to_string(const Range& r)
{
  if (r.single())
    return format_exact(r.lo);
  return format_exact(r.lo) + ":" + format_exact(r.hi) + ":" + format_exact(r.step);
}

LeggettTask RunConfig::task() const
{
  LeggettTask t;
  t.state = state;
  t.family = family;
  t.layout = layout;
  t.bound_mode = bound;
  t.optimize = optimize;
  t.rotation_mode = rotation;
  t.bound_search = default_bound_search(seed);
  t.bound_search.starts = starts;
  t.rigid_search = default_rigid_search(seed);
  t.rigid_search.starts = 2 * starts;
  t.chsh_search = default_chsh_search(seed);
  t.chsh_search.starts = std::max(1, starts / 2);
  t.threads = threads;
  t.bound_search.threads = threads;
  t.rigid_search.threads = threads;
  t.chsh_search.threads = threads;
  return t;
}

ParsedArguments parse_command_line(const std::vector<std::string>& args)
{
  CLI::App app{"Leggett and CHSH inequality lab for entangled coherent states", "leggett_lab"};
  RawOptions o;
  declare(app, o);
  app.set_config("--config", "", "key = value file; flags override it");

  ParsedArguments out;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out.help = app.help();
    return out;
  } catch (const CLI::ParseError& e) {
    throw ArgumentError(e.what(), app.help());
  }
  try {
    out.config = resolve(o, true);
  } catch (const std::invalid_argument& e) {
    throw ArgumentError(e.what(), app.help());
  }
  return out;
}

std::string canonical_string(const RunConfig& c)
{
  std::ostringstream s;
  s << "command = " << to_string(c.command) << '\n';
  if (!c.figure.empty())
    s << "figure = " << c.figure << '\n';
  s << "state = " << to_string(c.state) << '\n';
  s << "family = " << to_string(c.family) << '\n';
  s << "layout = " << to_string(c.layout) << '\n';
  if (c.alpha)
    s << "alpha = " << to_string(*c.alpha) << '\n';
  if (c.phi)
    s << "phi = " << to_string(*c.phi) << '\n';
  s << "bound = " << to_string(c.bound) << '\n';
  s << "optimize = " << (c.optimize ? "true" : "false") << '\n';
  s << "rotation = " << to_string(c.rotation) << '\n';
  s << "starts = " << c.starts << '\n';
  s << "seed = " << c.seed << '\n';
  s << "threads = " << c.threads << '\n';
  s << "tolerance = " << format_exact(c.tolerance) << '\n';
  s << "with-chsh = " << (c.with_chsh ? "true" : "false") << '\n';
  s << "output = " << c.output << '\n';
  s << "format = " << to_string(c.format) << '\n';
  return s.str();
}

RunConfig parse_config_text(const std::string& text)
{
  CLI::App app{"leggett_lab config", "leggett_lab"};
  RawOptions o;
  declare(app, o);
  std::istringstream in(text);
  try {
    app.parse_from_stream(in);
    return resolve(o, true);
  } catch (const CLI::ParseError& e) {
    throw ArgumentError(e.what(), usage_text());
  } catch (const std::invalid_argument& e) {
    throw ArgumentError(e.what(), usage_text());
  }
}

} // namespace leggett::cli
