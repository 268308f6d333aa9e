#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace fieldscope {

struct ScreePoint {
  int rank = 0;  // 1-based
  double value = 0.0;
  std::string journal_id;  // optional
};

struct ScreeSeries {
  std::vector<ScreePoint> points;
};

enum class ScreeMode { vertical_error, horizontal_error };

std::string to_string(ScreeMode m);
ScreeMode scree_mode_from(const std::string& s);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

struct BreakpointFit {
  int k = 0;  // last rank of the steep segment; the point is shared by both segments
  ScreeMode mode = ScreeMode::vertical_error;
  LineFit segment1;
  LineFit segment2;
  double sse_total = 0.0;
  std::map<int, double> sse_by_k;
  bool degenerate = false;  // every candidate tied (e.g. all values equal)
};

// Two-segment least squares over a non-increasing ranked series. Candidate
// breakpoints k run over [2, len-1]; ties resolve toward the smallest k.
// vertical_error regresses value on rank, horizontal_error rank on value.
BreakpointFit fit_breakpoint(const ScreeSeries& series, ScreeMode mode);

// Journals at ranks 1..k. Errors when the series carries no journal identities.
std::set<std::string> select_core(const ScreeSeries& series, const BreakpointFit& fit);

}  // namespace fieldscope
