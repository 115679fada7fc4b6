#include "leggett/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace leggett {

namespace {

constexpr int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

double radical_inverse(std::uint64_t index, int base)
{
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

// Standard coefficients: reflection 1, expansion 2, contraction 1/2, shrink 1/2.
class Simplex
{
public:
  Simplex(const Objective& f, std::vector<double> step, double diameter = 1e-7)
      : f_(f), step_(std::move(step)), diameter_(diameter)
  {
  }

  StartOutcome run(std::vector<double> x0, int max_iterations, double tolerance, int restarts)
  {
    StartOutcome out;
    build(x0);
    out.converged = descend(max_iterations, tolerance, out.iterations);
    for (int r = 0; r < restarts && out.converged; ++r) {
      const double before = values_[0];
      build(std::vector<double>(points_[0]));
      out.converged = descend(max_iterations, tolerance, out.iterations);
      if (before - values_[0] <= tolerance)
        break;
    }
    out.point = points_[0];
    out.value = values_[0];
    return out;
  }

  long evaluations() const { return evaluations_; }

private:
  double eval(const std::vector<double>& x)
  {
    ++evaluations_;
    const double v = f_(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  }

  void build(const std::vector<double>& x0)
  {
    const std::size_t k = x0.size();
    points_.assign(k + 1, x0);
    values_.assign(k + 1, 0.0);
    for (std::size_t i = 0; i < k; ++i)
      points_[i + 1][i] += step_[i];
    for (std::size_t i = 0; i <= k; ++i)
      values_[i] = eval(points_[i]);
    order();
  }

  void order()
  {
    std::vector<std::size_t> idx(values_.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values_[a] < values_[b]; });
    std::vector<std::vector<double>> p;
    std::vector<double> v;
    for (auto i : idx) {
      p.push_back(std::move(points_[i]));
      v.push_back(values_[i]);
    }
    points_ = std::move(p);
    values_ = std::move(v);
  }

  bool collapsed(double tolerance) const
  {
    if (values_.back() - values_.front() > tolerance)
      return false;
    double diameter = 0.0;
    for (std::size_t i = 1; i < points_.size(); ++i)
      for (std::size_t j = 0; j < points_[i].size(); ++j)
        diameter = std::max(diameter, std::abs(points_[i][j] - points_[0][j]));
    return diameter <= diameter_;
  }

  std::vector<double> along(const std::vector<double>& c, const std::vector<double>& w, double t) const
  {
    std::vector<double> x(c.size());
    for (std::size_t j = 0; j < c.size(); ++j)
      x[j] = c[j] + t * (w[j] - c[j]);
    return x;
  }

  bool descend(int max_iterations, double tolerance, int& iterations)
  {
    const std::size_t n = points_.size() - 1;
    while (iterations < max_iterations) {
      if (collapsed(tolerance))
        return true;
      ++iterations;

      std::vector<double> c(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          c[j] += points_[i][j] / static_cast<double>(n);

      const auto& worst = points_[n];
      const std::vector<double> xr = along(c, worst, -1.0);
      const double fr = eval(xr);

      if (fr < values_[0]) {
        const std::vector<double> xe = along(c, worst, -2.0);
        const double fe = eval(xe);
        if (fe < fr)
          replace_worst(xe, fe);
        else
          replace_worst(xr, fr);
      } else if (fr < values_[n - 1]) {
        replace_worst(xr, fr);
      } else {
        const bool outside = fr < values_[n];
        const std::vector<double> xc = along(c, worst, outside ? -0.5 : 0.5);
        const double fc = eval(xc);
        if (fc < (outside ? fr : values_[n])) {
          replace_worst(xc, fc);
        } else {
          for (std::size_t i = 1; i <= n; ++i) {
            points_[i] = along(points_[0], points_[i], 0.5);
            values_[i] = eval(points_[i]);
          }
        }
      }
      order();
    }
    return collapsed(tolerance);
  }

  void replace_worst(const std::vector<double>& x, double fx)
  {
    points_.back() = x;
    values_.back() = fx;
  }

  const Objective& f_;
  std::vector<double> step_;
  double diameter_;
  std::vector<std::vector<double>> points_;
  std::vector<double> values_;
  long evaluations_ = 0;
};

} // namespace

std::size_t SearchResult::agreeing_starts(double tol) const
{
  std::size_t count = 0;
  for (const auto& s : starts)
    if (s.value <= value + tol)
      ++count;
  return count;
}

std::vector<std::vector<double>> start_points(const SearchConfig& config)
{
  const std::size_t k = config.ranges.size();
  if (k == 0 || k > std::size(primes))
    throw std::invalid_argument("start_points: need between 1 and 16 parameter ranges");
  if (config.starts < 1)
    throw std::invalid_argument("start_points: need at least one start");
  if (!config.initial.empty() && config.initial.size() != k)
    throw std::invalid_argument("start_points: initial point has the wrong dimension");

  std::mt19937_64 rng(config.seed ^ 0x9E3779B97F4A7C15ull);
  std::vector<double> shift(k);
  for (auto& s : shift)
    s = static_cast<double>(rng() >> 11) * 0x1.0p-53;

  std::vector<std::vector<double>> out(static_cast<std::size_t>(config.starts), std::vector<double>(k));
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t d = 0; d < k; ++d) {
      double u = radical_inverse(i + 1, primes[d]) + shift[d];
      u -= std::floor(u);
      const auto& r = config.ranges[d];
      out[i][d] = r.lo + u * (r.hi - r.lo);
    }
  }
  if (!config.initial.empty())
    out[0] = config.initial;
  return out;
}

namespace {

std::vector<double> initial_step(const SearchConfig& config, double fraction)
{
  std::vector<double> step(config.ranges.size());
  for (std::size_t d = 0; d < step.size(); ++d) {
    const double width = config.ranges[d].hi - config.ranges[d].lo;
    step[d] = fraction * (width > 0.0 ? width : 1.0);
  }
  return step;
}

void pick_best(SearchResult& result)
{
  for (std::size_t i = 0; i < result.starts.size(); ++i)
    if (i == 0 || result.starts[i].value < result.value) {
      result.value = result.starts[i].value;
      result.best_start = i;
    }
  result.point = result.starts[result.best_start].point;
  result.converged = result.starts[result.best_start].converged;
}

} // namespace

SearchResult simplex_minimize(const Objective& objective, const SearchConfig& config)
{
  const auto starts = start_points(config);
  const std::vector<double> step = initial_step(config, 0.1);

  SearchResult result;
  result.starts.resize(starts.size());
  std::vector<long> evaluations(starts.size(), 0);
  parallel_for(starts.size(), config.threads, [&](std::size_t i) {
    Simplex s(objective, step);
    result.starts[i] = s.run(starts[i], config.max_iterations, config.tolerance, config.restarts);
    evaluations[i] = s.evaluations();
  });

  for (long e : evaluations)
    result.evaluations += e;
  pick_best(result);
  return result;
}

SearchResult continuation_minimize(const SmoothedObjective& objective, const std::vector<double>& widths,
                                   const SearchConfig& config)
{
  for (std::size_t i = 0; i < widths.size(); ++i)
    if (!(widths[i] > 0.0) || (i > 0 && !(widths[i] < widths[i - 1])))
      throw std::invalid_argument("continuation_minimize: widths must be positive and decreasing");

  const auto starts = start_points(config);
  SearchResult result;
  result.starts.resize(starts.size());
  std::vector<long> evaluations(starts.size(), 0);
  parallel_for(starts.size(), config.threads, [&](std::size_t i) {
    std::vector<double> x = starts[i];
    int iterations = 0;
    // Each stage starts from the previous minimizer with a simplex ten times smaller.
    double fraction = 0.1;
    for (std::size_t stage = 0; stage <= widths.size(); ++stage) {
      const double w = stage < widths.size() ? widths[stage] : 0.0;
      const Objective f = [&](const std::vector<double>& p) { return objective(p, w); };
      // A smoothed stage only has to locate its minimizer to within about w.
      const bool last = stage == widths.size();
      Simplex s(f, initial_step(config, fraction), last ? 1e-7 : std::max(1e-7, 0.1 * w));
      StartOutcome o = s.run(x, config.max_iterations, last ? config.tolerance : std::max(config.tolerance, 1e-3 * w * w),
                             last ? config.restarts : 0);
      evaluations[i] += s.evaluations();
      iterations += o.iterations;
      x = o.point;
      if (last) {
        o.iterations = iterations;
        result.starts[i] = std::move(o);
      }
      fraction = std::max(fraction * 0.1, 1e-4);
    }
  });

  for (long e : evaluations)
    result.evaluations += e;
  pick_best(result);
  return result;
}

} // namespace leggett
