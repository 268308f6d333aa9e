#include "fieldscope/breakpoint.hpp"

#include <cmath>
#include <stdexcept>

#include "fieldscope/corpus.hpp"

namespace fieldscope {

std::string to_string(ScreeMode m) {
  return m == ScreeMode::vertical_error ? "vertical-error" : "horizontal-error";
}

ScreeMode scree_mode_from(const std::string& s) {
  if (s == "vertical-error") return ScreeMode::vertical_error;
  if (s == "horizontal-error") return ScreeMode::horizontal_error;
  throw DataError("unknown scree mode: " + s);
}

namespace {

struct SegmentFit {
  LineFit line;
  double sse = 0.0;
};

// OLS of y on x with fixed left-to-right summation order. A segment whose x
// values are all equal (possible in horizontal-error mode) falls back to the
// best constant predictor, the mean.
SegmentFit ols(const std::vector<double>& xs, const std::vector<double>& ys,
               std::size_t begin, std::size_t end) {
  SegmentFit out;
  std::size_t n = end - begin;
  if (n == 1) {
    out.line = {0.0, ys[begin]};
    return out;
  }
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  double mx = sx / static_cast<double>(n);
  double my = sy / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) {
    out.line = {0.0, my};
  } else {
    out.line.slope = sxy / sxx;
    out.line.intercept = my - out.line.slope * mx;
  }
  for (std::size_t i = begin; i < end; ++i) {
    double pred = out.line.intercept + out.line.slope * xs[i];
    double r = ys[i] - pred;
    out.sse += r * r;
  }
  return out;
}

}  // namespace

BreakpointFit fit_breakpoint(const ScreeSeries& series, ScreeMode mode) {
  const auto& pts = series.points;
  std::size_t n = pts.size();
  if (n < 3) {
    throw DataError("scree fit needs at least 3 points, got " + std::to_string(n));
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (pts[i + 1].value > pts[i].value + 1e-12) {
      throw DataError("scree series must be non-increasing (rank " +
                      std::to_string(pts[i + 1].rank) + " rises)");
    }
  }

  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (mode == ScreeMode::vertical_error) {
      xs[i] = static_cast<double>(pts[i].rank);
      ys[i] = pts[i].value;
    } else {
      xs[i] = pts[i].value;
      ys[i] = static_cast<double>(pts[i].rank);
    }
  }

  BreakpointFit best;
  best.mode = mode;
  bool first = true;
  bool all_tied = true;
  double first_sse = 0.0;
  // k is the 1-based rank of the shared point: segment1 = points[0..k-1],
  // segment2 = points[k-1..n-1].
  for (std::size_t k = 2; k <= n - 1; ++k) {
    SegmentFit s1 = ols(xs, ys, 0, k);
    SegmentFit s2 = ols(xs, ys, k - 1, n);
    double sse = s1.sse + s2.sse;
    best.sse_by_k[static_cast<int>(k)] = sse;
    if (first) {
      first_sse = sse;
    } else if (std::abs(sse - first_sse) > 1e-12) {
      all_tied = false;
    }
    if (first || sse < best.sse_total) {
      best.k = static_cast<int>(k);
      best.segment1 = s1.line;
      best.segment2 = s2.line;
      best.sse_total = sse;
      first = false;
    }
  }
  best.degenerate = all_tied && n > 3;
  return best;
}

std::set<std::string> select_core(const ScreeSeries& series, const BreakpointFit& fit) {
  std::set<std::string> out;
  if (fit.k < 1 || static_cast<std::size_t>(fit.k) > series.points.size()) {
    throw DataError("breakpoint fit does not belong to this series");
  }
  for (int i = 0; i < fit.k; ++i) {
    const auto& p = series.points[static_cast<std::size_t>(i)];
    if (p.journal_id.empty()) {
      throw DataError("series carries no journal identity at rank " + std::to_string(p.rank));
    }
    out.insert(p.journal_id);
  }
  return out;
}

}  // namespace fieldscope
