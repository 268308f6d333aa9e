#include "fieldscope/citestats.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "fieldscope/text.hpp"

namespace fieldscope {

CitationTally cited_journal_tally(const std::vector<PubIdx>& pubs, const Corpus& corpus,
                                  const JournalRegistry& registry,
                                  const std::set<std::string>& exclusion,
                                  const TallyOptions& options) {
  CitationTally out;
  std::map<std::string, long long> counts;
  long long total_all = 0;
  for (PubIdx i : pubs) {
    for (const auto& cid : corpus.pub(i).cited_journal_ids) {
      if (!registry.contains(cid)) {
        ++out.dropped_unknown;
        continue;
      }
      ++total_all;
      if (exclusion.contains(cid)) {
        out.excluded.insert(cid);
        continue;
      }
      ++counts[cid];
    }
  }
  for (const auto& [id, n] : counts) out.total_included += n;

  long long denom = options.pct_after_exclusion ? out.total_included : total_all;
  out.rows.reserve(counts.size());
  for (const auto& [id, n] : counts) {
    TallyRow row;
    row.journal_id = id;
    row.canonical_title = registry.at(id).canonical_title;
    row.citations = n;
    row.pct = denom > 0 ? static_cast<double>(n) / static_cast<double>(denom) : 0.0;
    out.rows.push_back(std::move(row));
  }
  std::sort(out.rows.begin(), out.rows.end(), [](const TallyRow& a, const TallyRow& b) {
    if (a.citations != b.citations) return a.citations > b.citations;
    return a.canonical_title < b.canonical_title;
  });
  for (std::size_t i = 0; i < out.rows.size(); ++i) out.rows[i].rank = static_cast<int>(i) + 1;
  return out;
}

std::set<std::string> multidisciplinary_set(const JournalRegistry& registry, Scheme scheme) {
  std::set<std::string> out;
  for (const auto& r : registry.records()) {
    bool hit = r.multidisciplinary;
    if (!hit) {
      if (scheme == Scheme::wos_like) {
        hit = r.in_category(scheme, "multidisciplinary sciences") ||
              r.in_category(scheme, "multidisciplinary");
      } else {
        hit = r.in_category(scheme, "general");
      }
    }
    if (hit) out.insert(r.journal_id);
  }
  return out;
}

ScreeSeries top_n(const CitationTally& tally, int n) {
  if (n < 2) throw DataError("top_n requires n >= 2");
  if (tally.rows.size() < 2) {
    throw DataError("tally has fewer than 2 rows; scree fit undefined");
  }
  ScreeSeries series;
  std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(n), tally.rows.size());
  series.points.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    series.points.push_back({tally.rows[i].rank, tally.rows[i].pct, tally.rows[i].journal_id});
  }
  return series;
}

void export_tally_csv(const CitationTally& tally, std::ostream& out) {
  out << "rank,journal_id,canonical_title,citations,pct\n";
  char buf[32];
  for (const auto& row : tally.rows) {
    std::snprintf(buf, sizeof(buf), "%.6f", row.pct);
    std::string title = row.canonical_title;
    bool quote = title.find(',') != std::string::npos || title.find('"') != std::string::npos;
    if (quote) {
      std::string q = "\"";
      for (char c : title) {
        if (c == '"') q += "\"\"";
        else q.push_back(c);
      }
      q += "\"";
      title = q;
    }
    out << row.rank << ',' << row.journal_id << ',' << title << ',' << row.citations << ','
        << buf << "\n";
  }
}

}  // namespace fieldscope
