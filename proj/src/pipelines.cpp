#include "fieldscope/pipelines.hpp"

#include <algorithm>
#include <fstream>

#include "fieldscope/citestats.hpp"
#include "json.hpp"

namespace fieldscope {

using nlohmann::json;

void DelineationConfig::validate() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(cluster_overlap_threshold) || !in_unit(journal_share_threshold)) {
    throw DataError("thresholds must lie in [0, 1]");
  }
  if (top_n < 3) throw DataError("top_n must be at least 3");
  if (min_journal_pubs < 0) throw DataError("min_journal_pubs must be non-negative");
}

std::set<std::string> DelineationResult::journals() const {
  std::set<std::string> out;
  for (const auto& [id, tags] : provenance) out.insert(id);
  return out;
}

void DelineationResult::tag(const std::string& journal_id, const std::string& step) {
  auto& tags = provenance[journal_id];
  if (std::find(tags.begin(), tags.end(), step) == tags.end()) tags.push_back(step);
}

DelineationResult run_category_approach(const JournalRegistry& registry,
                                        const DelineationConfig& config, Scheme scheme) {
  config.validate();
  DelineationResult out;
  out.approach = Approach::a1;
  auto it = config.category_names.find(scheme);
  std::string category = it != config.category_names.end() ? it->second : std::string();
  for (const auto& id : registry.in_category(scheme, category, config.excluded_statuses)) {
    out.tag(id, "category");
  }
  return out;
}

DelineationResult run_publication_level(const std::vector<PubIdx>& matched_pubs,
                                        const ClusterAssignments& assignments,
                                        const Corpus& corpus, const JournalRegistry& registry,
                                        const DelineationConfig& config, StepLog* log) {
  config.validate();
  StepLog local;
  StepLog& lg = log ? *log : local;

  std::set<std::string> matched_ids;
  for (PubIdx i : matched_pubs) matched_ids.insert(corpus.pub(i).pub_id);
  lg.note("matched publications", static_cast<long long>(matched_ids.size()));

  // cluster overlap: |matched in cluster| / |cluster|
  std::set<std::string> kept_clusters;
  for (const auto& [cluster, members] : assignments.members) {
    if (members.empty()) continue;
    long long inside = 0;
    for (const auto& pub : members) {
      if (matched_ids.contains(pub)) ++inside;
    }
    double overlap = static_cast<double>(inside) / static_cast<double>(members.size());
    if (overlap >= config.cluster_overlap_threshold) kept_clusters.insert(cluster);
  }
  lg.note("clusters kept", static_cast<long long>(kept_clusters.size()));

  // journal share inside kept clusters
  std::map<std::string, long long> in_cluster_pubs;  // journal -> pubs in kept clusters
  long long covered = 0;
  for (const auto& cluster : kept_clusters) {
    for (const auto& pub_id : assignments.members.at(cluster)) {
      auto idx = corpus.index_of(pub_id);
      if (!idx) continue;  // assignment for a pub outside this corpus extract
      ++in_cluster_pubs[corpus.pub(*idx).journal_id];
      ++covered;
    }
  }
  lg.note("publications in kept clusters", covered);

  DelineationResult out;
  out.approach = Approach::a2;
  for (const auto& [journal_id, inside] : in_cluster_pubs) {
    const JournalRecord& rec = registry.at(journal_id);
    auto wt = rec.per_window_totals.find(config.window);
    long long total = wt == rec.per_window_totals.end() ? 0 : wt->second;
    if (total <= 0) {
      lg.warn("journal '" + journal_id + "' has no window total for " + config.window +
              "; skipped");
      continue;
    }
    double share = static_cast<double>(inside) / static_cast<double>(total);
    long long pubs_basis = config.min_pubs_basis_in_cluster ? inside : total;
    if (share >= config.journal_share_threshold && pubs_basis >= config.min_journal_pubs) {
      out.tag(journal_id, "cluster-share");
    }
  }
  lg.note("journals selected", static_cast<long long>(out.provenance.size()));
  return out;
}

namespace {

std::set<std::string> set_minus(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::set<std::string> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.begin()));
  return out;
}

std::set<std::string> set_or(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::set<std::string> out = a;
  out.insert(b.begin(), b.end());
  return out;
}

}  // namespace

DelineationResult run_journal_level(const std::vector<OriginInput>& origins,
                                    const JournalRegistry& registry,
                                    const DelineationConfig& config, StepLog* log) {
  config.validate();
  if (origins.empty()) throw DataError("run_journal_level needs at least one origin corpus");
  StepLog local;
  StepLog& lg = log ? *log : local;

  std::set<std::string> multidisciplinary =
      set_or(multidisciplinary_set(registry, Scheme::wos_like),
             multidisciplinary_set(registry, Scheme::sjr_like));

  EvalFilters filters;
  filters.year_min = config.year_min;
  filters.year_max = config.year_max;

  TallyOptions tally_options{config.pct_after_exclusion};

  DelineationResult out;
  out.approach = Approach::a3;

  for (const auto& origin : origins) {
    const std::string tag = to_string(origin.origin);
    const Corpus& corpus = *origin.corpus;

    // Step 1: harvest by lexical query
    std::vector<PubIdx> pubs = evaluate(origin.query, corpus, filters);
    if (pubs.empty()) {
      throw DataError("origin '" + tag + "' retrieved no publications");
    }
    lg.note(tag + " step1 publications", static_cast<long long>(pubs.size()));

    // Step 2: cited-journal tally, multidisciplinary removed
    CitationTally tally = cited_journal_tally(pubs, corpus, registry, multidisciplinary,
                                              tally_options);
    lg.note(tag + " step2 cited journals", static_cast<long long>(tally.rows.size()));

    // Step 3: scree test over the most-cited journals
    ScreeSeries series = top_n(tally, config.top_n);
    BreakpointFit fit = fit_breakpoint(series, config.scree_mode);
    std::set<std::string> step3 = select_core(series, fit);
    lg.note(tag + " step3 core journals (k)", fit.k);

    // Step 4: active journals with the prefix in their titles, minus step 3
    std::set<std::string> prefix =
        title_prefix_search(registry, config.nano_pattern, {JournalStatus::active});
    std::set<std::string> step4 = set_minus(prefix, step3);
    lg.note(tag + " step4 prefix journals", static_cast<long long>(step4.size()));

    // Step 5: category journals plus step 4, minus step 3
    auto cat_name = config.category_names.find(origin.category_scheme);
    std::set<std::string> category = registry.in_category(
        origin.category_scheme,
        cat_name == config.category_names.end() ? std::string() : cat_name->second,
        config.excluded_statuses);
    std::set<std::string> step5 = set_minus(set_or(category, step4), step3);
    lg.note(tag + " step5 journals", static_cast<long long>(step5.size()));

    // Step 6: citation analysis of the step-5 journals' own output
    std::vector<PubIdx> step5_pubs;
    for (const auto& jid : step5) {
      for (PubIdx i : corpus.pubs_of_journal(jid)) {
        const auto& p = corpus.pub(i);
        if (filters.year_min && p.year < *filters.year_min) continue;
        if (filters.year_max && p.year > *filters.year_max) continue;
        step5_pubs.push_back(i);
      }
    }
    std::sort(step5_pubs.begin(), step5_pubs.end());
    lg.note(tag + " step6 publications", static_cast<long long>(step5_pubs.size()));

    std::set<std::string> step7;
    if (!step5_pubs.empty()) {
      CitationTally tally6 = cited_journal_tally(
          step5_pubs, corpus, registry,
          config.exclude_multidisciplinary_in_step6 ? multidisciplinary
                                                    : std::set<std::string>{},
          tally_options);
      if (tally6.rows.size() >= 3) {
        // Step 7: scree again; keep only previously unidentified journals
        ScreeSeries series7 = top_n(tally6, config.top_n);
        BreakpointFit fit7 = fit_breakpoint(series7, config.scree_mode);
        std::set<std::string> core7 = select_core(series7, fit7);
        step7 = set_minus(core7, set_or(step3, step5));
        lg.note(tag + " step7 new journals", static_cast<long long>(step7.size()));
      }
    }

    for (const auto& id : step3) out.tag(id, "step3-scree");
    for (const auto& id : step4) out.tag(id, "step4-prefix");
    for (const auto& id : step7) out.tag(id, "step7-scree");
    // a scree-found journal that also carries the prefix keeps both tags
    for (const auto& id : step3) {
      if (prefix.contains(id)) out.tag(id, "step4-prefix");
    }
    lg.note(tag + " journals", static_cast<long long>(
                                   step3.size() + step4.size() + step7.size()));
  }

  lg.note("union journals", static_cast<long long>(out.provenance.size()));
  return out;
}

VennReport compare(const std::vector<DelineationResult>& results) {
  if (results.size() < 2 || results.size() > 3) {
    throw DataError("compare expects 2 or 3 delineation results");
  }
  std::set<Approach> seen;
  for (const auto& r : results) {
    if (!seen.insert(r.approach).second) {
      throw DataError("duplicate approach tag: " + to_string(r.approach));
    }
  }

  std::map<std::string, std::set<std::string>> sets;  // approach label -> journals
  for (const auto& r : results) sets[to_string(r.approach)] = r.journals();

  std::set<std::string> all;
  for (const auto& [label, js] : sets) all.insert(js.begin(), js.end());

  VennReport report;
  for (const auto& id : all) {
    std::string pattern;
    for (const auto& [label, js] : sets) {
      if (!js.contains(id)) continue;
      if (!pattern.empty()) pattern += "&";
      pattern += label;
    }
    report.members[pattern].push_back(id);
  }
  for (auto& [pattern, ids] : report.members) std::sort(ids.begin(), ids.end());
  return report;
}

std::map<std::string, std::size_t> VennReport::counts() const {
  std::map<std::string, std::size_t> out;
  for (const auto& [pattern, ids] : members) out[pattern] = ids.size();
  return out;
}

std::size_t VennReport::total() const {
  std::size_t n = 0;
  for (const auto& [pattern, ids] : members) n += ids.size();
  return n;
}

std::string result_to_json(const DelineationResult& result) {
  json j;
  j["approach"] = to_string(result.approach);
  json arr = json::array();
  for (const auto& [id, tags] : result.provenance) {
    arr.push_back({{"journal_id", id}, {"provenance", tags}});
  }
  j["journals"] = arr;
  return j.dump(2) + "\n";
}

DelineationResult result_from_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open result file: " + file.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError(file.string() + ": invalid JSON: " + e.what());
  }
  DelineationResult out;
  try {
    out.approach = approach_from(j.at("approach").get<std::string>());
    for (const auto& item : j.at("journals")) {
      std::string id = item.at("journal_id").get<std::string>();
      if (item.contains("provenance")) {
        for (const auto& t : item["provenance"]) out.tag(id, t.get<std::string>());
      }
      if (out.provenance[id].empty()) out.tag(id, "unspecified");
    }
  } catch (const json::exception& e) {
    throw DataError(file.string() + ": malformed result: " + e.what());
  }
  return out;
}

std::string venn_to_json(const VennReport& report) {
  json j;
  json counts = json::object();
  json members = json::object();
  for (const auto& [pattern, ids] : report.members) {
    counts[pattern] = ids.size();
    members[pattern] = ids;
  }
  j["counts"] = counts;
  j["members"] = members;
  j["total"] = report.total();
  return j.dump(2) + "\n";
}

}  // namespace fieldscope
