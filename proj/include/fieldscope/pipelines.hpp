#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fieldscope/breakpoint.hpp"
#include "fieldscope/corpus.hpp"
#include "fieldscope/evalkit.hpp"
#include "fieldscope/lexquery.hpp"

namespace fieldscope {

struct DelineationConfig {
  double cluster_overlap_threshold = 0.006;
  double journal_share_threshold = 0.002;
  int min_journal_pubs = 50;
  bool min_pubs_basis_in_cluster = true;  // alternative: whole-journal window total
  int top_n = 100;
  ScreeMode scree_mode = ScreeMode::vertical_error;
  std::string nano_pattern = "nano*";
  std::set<JournalStatus> excluded_statuses = {JournalStatus::ceased,
                                               JournalStatus::discontinued};
  std::map<Scheme, std::string> category_names = {
      {Scheme::wos_like, "Nanoscience & Nanotechnology"},
      {Scheme::sjr_like, "Nanoscience & Nanotechnology"},
  };
  std::string window = "2008-2015";
  std::optional<int> year_min;
  std::optional<int> year_max;
  bool pct_after_exclusion = true;
  bool exclude_multidisciplinary_in_step6 = true;

  void validate() const;
};

struct DelineationResult {
  Approach approach = Approach::a1;
  // journal_id -> step tags (step3-scree, step4-prefix, step7-scree,
  // cluster-share, category, seed)
  std::map<std::string, std::vector<std::string>> provenance;

  std::set<std::string> journals() const;
  void tag(const std::string& journal_id, const std::string& step);
};

struct StepLog {
  std::vector<std::pair<std::string, long long>> counts;
  std::vector<std::string> warnings;
  void note(std::string what, long long n) { counts.emplace_back(std::move(what), n); }
  void warn(std::string what) { warnings.push_back(std::move(what)); }
};

DelineationResult run_category_approach(const JournalRegistry& registry,
                                        const DelineationConfig& config, Scheme scheme);

// Cluster overlap then journal share, as two successive threshold filters.
DelineationResult run_publication_level(const std::vector<PubIdx>& matched_pubs,
                                        const ClusterAssignments& assignments,
                                        const Corpus& corpus, const JournalRegistry& registry,
                                        const DelineationConfig& config,
                                        StepLog* log = nullptr);

struct OriginInput {
  Origin origin = Origin::scopus_like;
  const Corpus* corpus = nullptr;
  QueryPtr query;
  Scheme category_scheme = Scheme::sjr_like;
};

// The seven-step journal-level procedure, run per origin and unioned.
DelineationResult run_journal_level(const std::vector<OriginInput>& origins,
                                    const JournalRegistry& registry,
                                    const DelineationConfig& config, StepLog* log = nullptr);

struct VennReport {
  // pattern ("a1", "a1&a2", "a1&a2&a3", ...) -> sorted journal ids
  std::map<std::string, std::vector<std::string>> members;
  std::map<std::string, std::size_t> counts() const;
  std::size_t total() const;
};

VennReport compare(const std::vector<DelineationResult>& results);

// DelineationResult round-trip through the JSON result format.
std::string result_to_json(const DelineationResult& result);
DelineationResult result_from_json_file(const std::filesystem::path& file);
std::string venn_to_json(const VennReport& report);

}  // namespace fieldscope
