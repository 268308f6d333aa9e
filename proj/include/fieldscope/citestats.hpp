#pragma once

#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "fieldscope/breakpoint.hpp"
#include "fieldscope/corpus.hpp"

namespace fieldscope {

struct TallyRow {
  int rank = 0;  // 1-based
  std::string journal_id;
  std::string canonical_title;
  long long citations = 0;
  double pct = 0.0;  // fraction of included citations
};

struct CitationTally {
  std::vector<TallyRow> rows;  // citations desc, canonical_title asc on ties
  std::set<std::string> excluded;
  long long dropped_unknown = 0;  // citations to journals absent from the registry
  long long total_included = 0;
};

struct TallyOptions {
  // Percentages over post-exclusion citations (the default) or over all
  // resolvable citations.
  bool pct_after_exclusion = true;
};

// Counts every cited_journal_id occurrence across `pubs`; duplicates within
// one record count once per occurrence.
CitationTally cited_journal_tally(const std::vector<PubIdx>& pubs, const Corpus& corpus,
                                  const JournalRegistry& registry,
                                  const std::set<std::string>& exclusion,
                                  const TallyOptions& options = {});

// Journals flagged multidisciplinary plus those in the scheme's catch-all
// category (wos-like: Multidisciplinary [Sciences]; sjr-like: General).
std::set<std::string> multidisciplinary_set(const JournalRegistry& registry, Scheme scheme);

// First min(n, rows) rows as a ranked descending pct series. n >= 2 and the
// tally must have at least 2 rows for a later scree fit to make sense.
ScreeSeries top_n(const CitationTally& tally, int n);

// CSV: rank,journal_id,canonical_title,citations,pct (pct with 6 decimals).
void export_tally_csv(const CitationTally& tally, std::ostream& out);

}  // namespace fieldscope
