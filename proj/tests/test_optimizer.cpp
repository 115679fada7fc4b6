#include "leggett/optimizer.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

using namespace leggett;

namespace {

double bowl(const std::vector<double>& x)
{
  static const double c[] = {0.3, -1.2, 2.0, 0.7};
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    s += (x[i] - c[i]) * (x[i] - c[i]);
  return s;
}

double rosenbrock(const std::vector<double>& x)
{
  return 100.0 * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]) + (1.0 - x[0]) * (1.0 - x[0]);
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

} // namespace

TEST_SUITE("optimizer")
{
  TEST_CASE("convex bowl in four dimensions")
  {
    SearchConfig c;
    c.starts = 4;
    c.seed = 3;
    c.ranges.assign(4, {-3.0, 3.0});
    const SearchResult r = simplex_minimize(bowl, c);
    REQUIRE(r.point.size() == 4);
    CHECK(std::abs(r.point[0] - 0.3) < 1e-6);
    CHECK(std::abs(r.point[1] + 1.2) < 1e-6);
    CHECK(std::abs(r.point[2] - 2.0) < 1e-6);
    CHECK(std::abs(r.point[3] - 0.7) < 1e-6);
    CHECK(r.converged);
    CHECK(r.agreeing_starts(1e-8) == 4);
  }

  TEST_CASE("Rosenbrock valley")
  {
    SearchConfig c;
    c.starts = 8;
    c.seed = 11;
    c.ranges.assign(2, {-2.0, 2.0});
    const SearchResult r = simplex_minimize(rosenbrock, c);
    CHECK(std::abs(r.point[0] - 1.0) < 1e-4);
    CHECK(std::abs(r.point[1] - 1.0) < 1e-4);
    CHECK(r.value < 1e-8);
  }

  TEST_CASE("identical configuration gives identical bits for any thread count")
  {
    SearchConfig c;
    c.starts = 12;
    c.seed = 99;
    c.ranges.assign(2, {-2.0, 2.0});
    c.threads = 1;
    const SearchResult a = simplex_minimize(rosenbrock, c);
    const SearchResult b = simplex_minimize(rosenbrock, c);
    c.threads = 3;
    const SearchResult t = simplex_minimize(rosenbrock, c);
    for (const SearchResult* r : {&b, &t}) {
      CHECK(same_bits(a.value, r->value));
      CHECK(same_bits(a.point[0], r->point[0]));
      CHECK(same_bits(a.point[1], r->point[1]));
      CHECK(a.best_start == r->best_start);
      CHECK(a.evaluations == r->evaluations);
    }
  }

  TEST_CASE("continuation search reaches the corner of a sum of absolute values")
  {
    SearchConfig c;
    c.starts = 4;
    c.seed = 2;
    c.ranges.assign(2, {-2.0, 2.0});
    const SmoothedObjective f = [](const std::vector<double>& x, double w) {
      auto a = [w](double t) { return std::sqrt(t * t + w * w); };
      return a(x[0] - 0.3) + 2.0 * a(x[1] + 0.5) + a(x[0] + x[1] + 0.2);
    };
    const SearchResult r = continuation_minimize(f, {1e-2, 1e-4, 1e-6}, c);
    CHECK(std::abs(r.point[0] - 0.3) < 1e-6);
    CHECK(std::abs(r.point[1] + 0.5) < 1e-6);
    CHECK(r.value < 1e-6);
    CHECK(r.agreeing_starts(1e-6) == 4);
    CHECK_THROWS_AS(continuation_minimize(f, {1e-4, 1e-2}, c), std::invalid_argument);
  }

  TEST_CASE("start points")
  {
    SearchConfig c;
    c.starts = 50;
    c.seed = 5;
    c.ranges = {{-1.0, 1.0}, {0.0, 3.0}, {10.0, 11.0}};
    const auto p = start_points(c);
    REQUIRE(p.size() == 50);
    for (const auto& x : p) {
      REQUIRE(x.size() == 3);
      for (std::size_t k = 0; k < 3; ++k) {
        CHECK(x[k] >= c.ranges[k].lo);
        CHECK(x[k] <= c.ranges[k].hi);
      }
    }
    c.initial = {0.5, 0.5, 10.5};
    CHECK(start_points(c)[0] == c.initial);
    CHECK(start_points(c)[1] == p[1]);
    c.seed = 6;
    CHECK(start_points(c)[1] != p[1]);
  }

  TEST_CASE("exhausted iterations are flagged but still returned")
  {
    SearchConfig c;
    c.starts = 2;
    c.max_iterations = 5;
    c.ranges.assign(2, {-2.0, 2.0});
    const SearchResult r = simplex_minimize(rosenbrock, c);
    CHECK_FALSE(r.converged);
    CHECK(std::isfinite(r.value));
    CHECK(r.point.size() == 2);
  }

  TEST_CASE("parallel_for merges by index and rethrows the lowest failure")
  {
    std::vector<int> out(100, -1);
    parallel_for(out.size(), 4, [&](std::size_t i) { out[i] = static_cast<int>(i * i); });
    for (std::size_t i = 0; i < out.size(); ++i)
      CHECK(out[i] == static_cast<int>(i * i));

    try {
      parallel_for(50, 4, [](std::size_t i) {
        if (i % 7 == 3)
          throw std::runtime_error(std::to_string(i));
      });
      FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "3");
    }
  }
}
