#include <cmath>
#include <random>

#include "doctest.h"
#include "fieldscope/breakpoint.hpp"
#include "fieldscope/corpus.hpp"
#include "scree_oracle.hpp"

using namespace fieldscope;

namespace {

ScreeSeries series_of(const std::vector<double>& values, bool with_ids = true) {
  ScreeSeries s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    ScreePoint p;
    p.rank = static_cast<int>(i) + 1;
    p.value = values[i];
    if (with_ids) p.journal_id = "j" + std::to_string(i + 1);
    s.points.push_back(p);
  }
  return s;
}

std::vector<double> random_non_increasing(std::mt19937& rng, int len) {
  std::uniform_real_distribution<double> step(0.0, 5.0);
  std::vector<double> v(static_cast<std::size_t>(len));
  double cur = 100.0 + step(rng) * 10.0;
  for (auto& x : v) {
    x = cur;
    cur -= step(rng);
    if (cur < 0.0) cur = 0.0;
  }
  return v;
}

}  // namespace

TEST_CASE("two-line series: frozen expected breakpoint") {
  // steep 100..20 over ranks 1-5, then a -1 slope tail; both segments exact at k=5
  auto s = series_of({100, 80, 60, 40, 20, 19, 18, 17, 16, 15});
  BreakpointFit fit = fit_breakpoint(s, ScreeMode::vertical_error);
  CHECK(fit.k == 5);
  CHECK(fit.sse_total == doctest::Approx(0.0));
  CHECK(fit.sse_by_k.at(2) == doctest::Approx(1203.333333).epsilon(1e-6));
  CHECK(fit.sse_by_k.at(4) == doctest::Approx(193.392857).epsilon(1e-6));
  CHECK(fit.sse_by_k.at(6) == doctest::Approx(171.904762).epsilon(1e-6));
  CHECK(fit.segment1.slope == doctest::Approx(-20.0));
  CHECK(fit.segment2.slope == doctest::Approx(-1.0));

  BreakpointFit hfit = fit_breakpoint(s, ScreeMode::horizontal_error);
  CHECK(hfit.k == 5);
}

TEST_CASE("perfectly linear series ties toward the smallest k") {
  auto fit = fit_breakpoint(series_of({10, 9, 8, 7, 6, 5}), ScreeMode::vertical_error);
  CHECK(fit.k == 2);
  CHECK(fit.sse_total == doctest::Approx(0.0));
}

TEST_CASE("all-equal series is degenerate with k=2") {
  auto fit = fit_breakpoint(series_of({3, 3, 3, 3, 3}), ScreeMode::vertical_error);
  CHECK(fit.k == 2);
  CHECK(fit.degenerate);
}

TEST_CASE("series too short or rising is rejected") {
  CHECK_THROWS_AS(fit_breakpoint(series_of({5, 4}), ScreeMode::vertical_error), DataError);
  CHECK_THROWS_AS(fit_breakpoint(series_of({5, 6, 4}), ScreeMode::vertical_error), DataError);
}

TEST_CASE("select_core returns the top-k journals") {
  auto s = series_of({100, 80, 60, 40, 20, 19, 18, 17, 16, 15});
  auto fit = fit_breakpoint(s, ScreeMode::vertical_error);
  auto core = select_core(s, fit);
  CHECK(core == std::set<std::string>{"j1", "j2", "j3", "j4", "j5"});

  // boundary: k = len-1 keeps all but the last journal
  auto linear = series_of({10, 9, 8, 7});
  BreakpointFit forced = fit_breakpoint(linear, ScreeMode::vertical_error);
  forced.k = 3;
  CHECK(select_core(linear, forced).size() == 3);

  auto no_ids = series_of({9, 8, 7, 1}, false);
  auto f2 = fit_breakpoint(no_ids, ScreeMode::vertical_error);
  CHECK_THROWS_AS(select_core(no_ids, f2), DataError);
}

TEST_CASE("exhaustive-oracle equivalence on random series") {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> len_dist(5, 200);
  for (int trial = 0; trial < 60; ++trial) {
    auto values = random_non_increasing(rng, len_dist(rng));
    for (ScreeMode mode : {ScreeMode::vertical_error, ScreeMode::horizontal_error}) {
      auto fit = fit_breakpoint(series_of(values), mode);
      auto [oracle_k, oracle_sse] = testsupport::oracle_breakpoint(values, mode);
      CHECK(fit.k == oracle_k);
      CHECK(fit.sse_total == doctest::Approx(oracle_sse).epsilon(1e-9));
    }
  }
}

TEST_CASE("vertical-mode argmin is invariant under affine value maps") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    auto values = random_non_increasing(rng, 40);
    auto base = fit_breakpoint(series_of(values), ScreeMode::vertical_error);
    std::vector<double> scaled(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) scaled[i] = 3.5 * values[i] + 11.0;
    auto mapped = fit_breakpoint(series_of(scaled), ScreeMode::vertical_error);
    CHECK(base.k == mapped.k);
    CHECK(mapped.sse_total == doctest::Approx(3.5 * 3.5 * base.sse_total).epsilon(1e-9));
  }
}

// For arbitrary series a longer flat tail can legitimately move the SSE
// argmin to a smaller k (verified against the brute-force oracle), so the
// tail-extension check is pinned to exact two-line shapes, where the corner
// is the unique zero-error breakpoint at every tail length.
TEST_CASE("extending the flat tail of a two-line series keeps the corner") {
  for (int corner = 4; corner <= 12; ++corner) {
    std::vector<double> values;
    for (int i = 1; i <= corner; ++i) values.push_back(10.0 * (corner - i) + 5.0);
    for (int tail = 0; tail < 8; ++tail) {
      values.push_back(5.0);
      auto fit = fit_breakpoint(series_of(values), ScreeMode::vertical_error);
      CHECK(fit.k == corner);
      CHECK(fit.sse_total == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("fit is bit-deterministic") {
  std::mt19937 rng(1234);
  auto values = random_non_increasing(rng, 120);
  auto a = fit_breakpoint(series_of(values), ScreeMode::vertical_error);
  auto b = fit_breakpoint(series_of(values), ScreeMode::vertical_error);
  CHECK(a.k == b.k);
  CHECK(a.sse_total == b.sse_total);
  CHECK(a.segment1.slope == b.segment1.slope);
  CHECK(a.segment2.intercept == b.segment2.intercept);
}
