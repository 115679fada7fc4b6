#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace leggett {

struct ParameterRange
{
  double lo = 0.0;
  double hi = 1.0;
};

using Objective = std::function<double(const std::vector<double>&)>;

struct SearchConfig
{
  int starts = 32;
  std::uint64_t seed = 0;
  /// Simplex iterations per start, restarts included.
  int max_iterations = 4000;
  /// Converged once the spread of objective values across the simplex is
  /// at most this (and the simplex has collapsed to 1e-7).
  double tolerance = 1e-10;
  /// Box the starting points are drawn from. The search itself is
  /// unconstrained; the objectives here are periodic in their angles.
  std::vector<ParameterRange> ranges;
  /// When non-empty, start #0 begins here instead of the first sequence point.
  std::vector<double> initial;
  /// Fresh simplices built around a converged point before accepting it.
  int restarts = 3;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct StartOutcome
{
  std::vector<double> point;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct SearchResult
{
  std::vector<double> point;
  double value = 0.0;
  std::size_t best_start = 0;
  /// False when the winning start ran out of iterations.
  bool converged = false;
  long evaluations = 0;
  std::vector<StartOutcome> starts;

  /// Number of starts that finished within tol of the best value.
  std::size_t agreeing_starts(double tol) const;
};

/// Starting points: a Halton sequence with a seed-derived random shift
/// (mod 1) mapped into the ranges, with config.initial as point 0.
std::vector<std::vector<double>> start_points(const SearchConfig& config);

/// Nelder-Mead descent from every start point. The best start wins, the
/// lower index on ties, so the result does not depend on thread scheduling.
SearchResult simplex_minimize(const Objective& objective, const SearchConfig& config);

/// f(x, w): an objective smoothed with width w, exact at w = 0.
using SmoothedObjective = std::function<double(const std::vector<double>&, double)>;

/// Multi-start search for objectives with kinks (sums of absolute values),
/// where a plain simplex stalls on the creases. Every start is carried
/// through the decreasing smoothing widths and finished on the exact
/// objective, each stage seeded by the previous minimizer.
SearchResult continuation_minimize(const SmoothedObjective& objective, const std::vector<double>& widths,
                                   const SearchConfig& config);

/// Runs body(i) for i in [0, n) on a small thread pool. Results must be
/// written to per-index slots. The exception from the lowest failing
/// index is rethrown after all workers finish.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body)
{
  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::size_t error_index = n;

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };

  std::vector<std::thread> pool;
  const auto count = static_cast<std::size_t>(threads) < n ? threads : static_cast<unsigned>(n);
  pool.reserve(count);
  for (unsigned t = 0; t < count; ++t)
    pool.emplace_back(worker);
  for (auto& t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
}

} // namespace leggett
