#pragma once

#include "leggett/correlation.hpp"
#include "leggett/geometry.hpp"
#include "leggett/inequality.hpp"
#include "leggett/studies.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace leggett::cli {

enum class Command
{
  scan_phi,
  scan_alpha,
  threshold,
  chsh,
  bound,
  reproduce
};

std::string_view to_string(Command c);
Command parse_command(std::string_view text);

enum class OutputFormat
{
  csv,
  json,
  svg
};

std::string_view to_string(OutputFormat f);
OutputFormat parse_format(std::string_view text);

/// A single value "x" or a grid "lo:hi:step". Grid points are lo + i step
/// for every i with lo + i step < hi + step/2.
struct Range
{
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;

  bool single() const { return step == 0.0; }
  std::vector<double> values() const;
  friend bool operator==(const Range&, const Range&) = default;
};

/// Throws std::invalid_argument on malformed text, lo > hi or step <= 0.
Range parse_range(std::string_view text);
/// Inverse of parse_range with round-trip number formatting.
std::string to_string(const Range& r);

struct RunConfig
{
  Command command = Command::scan_phi;
  /// fig3, fig4, fig5 or fig6; reproduce only.
  std::string figure;
  StateKind state = StateKind::ecs_minus;
  MeasurementFamily family = MeasurementFamily::pseudo_spin;
  LayoutName layout = LayoutName::threeplus7;
  /// Always set except for reproduce, where unset means the figure preset.
  std::optional<Range> alpha;
  std::optional<Range> phi;
  BoundMode bound = BoundMode::state_corrected;
  bool optimize = false;
  RotationMode rotation = RotationMode::shared;
  /// Starts for the f_min search; rigid rotations use twice as many and the
  /// CHSH search half.
  int starts = 32;
  std::uint64_t seed = 0;
  /// Worker threads, 0 for the hardware count. Never changes the output.
  unsigned threads = 0;
  double tolerance = 1e-3;
  bool with_chsh = false;
  /// Output file, or the output directory for reproduce.
  std::string output;
  OutputFormat format = OutputFormat::csv;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;

  LeggettTask task() const;
};

/// Command-line or config-file problem; carries the usage text.
class ArgumentError : public std::runtime_error
{
public:
  ArgumentError(const std::string& what, std::string usage) : std::runtime_error(what), usage_(std::move(usage)) {}
  const std::string& usage() const { return usage_; }

private:
  std::string usage_;
};

struct ParsedArguments
{
  RunConfig config;
  /// Set for --help; the text goes to standard output.
  std::string help;
};

/// Parses argv (without the program name). Precedence: flags, then the
/// --config file, then LEGGETT_LAB_SEED for the seed, then defaults.
/// Unset ranges and output paths get per-command defaults.
ParsedArguments parse_command_line(const std::vector<std::string>& args);

/// One "key = value" line per field in a fixed order.
std::string canonical_string(const RunConfig& config);

/// Reads the canonical form (or any config-file text).
RunConfig parse_config_text(const std::string& text);

} // namespace leggett::cli
