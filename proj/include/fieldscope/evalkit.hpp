#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fieldscope/corpus.hpp"

namespace fieldscope {

enum class Approach { a0, a1, a2, a3 };
std::string to_string(Approach a);
Approach approach_from(std::string_view s);

// journal_id -> rating in {1.0, 0.5, 0.0}
struct ScopeRatings {
  std::map<std::string, double> rating;
  static ScopeRatings load(const std::filesystem::path& file);
};

struct ScopeCounts {
  int high = 0;
  int medium = 0;
  int low = 0;
};

// (high + 0.5 * medium) / |journals|
struct ScopePrecision {
  double precision = 0.0;
  ScopeCounts counts;
};
ScopePrecision precision_by_scope(const std::set<std::string>& journals,
                                  const ScopeRatings& ratings);

// (high + medium within journals) / total_recall
double recall_journals(const std::set<std::string>& journals, const ScopeRatings& ratings,
                       int total_recall);

struct RelevanceBallot {
  std::string pub_id;
  Approach approach = Approach::a0;
  int relevant = 0;
  int not_relevant = 0;
  int no_answer = 0;
};

struct RaterVote {
  std::string pub_id;
  Approach approach = Approach::a0;
  std::string rater_id;
  std::string field;
  std::string subfield;
  int vote = 0;  // 1 relevant, 0 not relevant, -1 no answer
};

struct BallotFile {
  std::vector<RelevanceBallot> ballots;
  std::vector<RaterVote> votes;  // present only for rater-level files
  bool rater_level = false;
};
BallotFile load_ballots(const std::filesystem::path& file);
std::vector<RelevanceBallot> aggregate_votes(const std::vector<RaterVote>& votes);

// relevant / (relevant + not_relevant); no_answer excluded.
double item_precision(const RelevanceBallot& ballot);

// Unweighted mean of item_precision; all ballots must share one approach.
double approach_precision(const std::vector<RelevanceBallot>& ballots);

// R = items with item_precision >= threshold; per approach, the share of R
// the approach retrieved according to the membership map.
std::map<Approach, double> publication_recall(
    const std::vector<RelevanceBallot>& ballots,
    const std::map<std::string, std::set<Approach>>& membership, double relevance_threshold);

// Default membership: each item belongs to its sampling stratum only.
std::map<std::string, std::set<Approach>> stratum_membership(
    const std::vector<RelevanceBallot>& ballots);

struct RaterMatrix {
  std::vector<std::vector<long long>> counts;  // items x categories
};

struct KappaReport {
  double kappa = 0.0;
  double observed_agreement = 0.0;  // mean per-item agreement
  double expected_agreement = 0.0;  // sum of squared category shares
  std::string band;
  bool degenerate = false;  // expected agreement is 1
};

std::string landis_koch_band(double kappa);

// Fleiss's kappa in the varying-raters-per-item generalization.
KappaReport fleiss_kappa(const RaterMatrix& matrix);

// Builds the items-x-{relevant,not relevant} matrix from ballots, dropping
// no_answer votes per item.
RaterMatrix ballots_to_matrix(const std::vector<RelevanceBallot>& ballots);

// approach_precision computed within each rater background group.
// Groups with zero answered votes are omitted.
std::map<std::string, std::map<Approach, double>> precision_by_background(
    const std::vector<RaterVote>& votes, bool by_subfield = false);

}  // namespace fieldscope
