#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "fieldscope/pipelines.hpp"
#include "synthetic.hpp"

using namespace fieldscope;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = FIELDSCOPE_FIXTURE_DIR;

DelineationResult result_with(Approach a, std::initializer_list<std::string> ids) {
  DelineationResult r;
  r.approach = a;
  for (const auto& id : ids) r.tag(id, "test");
  return r;
}

}  // namespace

TEST_CASE("category approach counts on the bundled registry") {
  auto registry = JournalRegistry::load(kFixtures / "registry.jsonl");
  DelineationConfig config;

  config.excluded_statuses = {JournalStatus::ceased};
  auto wos = run_category_approach(registry, config, Scheme::wos_like);
  CHECK(wos.journals().size() == 88);
  for (const auto& [id, tags] : wos.provenance) {
    CHECK(tags == std::vector<std::string>{"category"});
  }

  config.excluded_statuses = {JournalStatus::ceased, JournalStatus::discontinued};
  auto sjr = run_category_approach(registry, config, Scheme::sjr_like);
  CHECK(sjr.journals().size() == 87);

  auto empty = run_category_approach(JournalRegistry::from_records({}), config, Scheme::wos_like);
  CHECK(empty.journals().empty());
}

TEST_CASE("cluster overlap threshold arithmetic distinguishes 60% from 0.6%") {
  // three clusters of 100 with 70/50/0 matching publications
  std::vector<JournalRecord> js(1);
  js[0].journal_id = "j";
  js[0].canonical_title = "J";
  js[0].per_window_totals["2008-2015"] = 1000;
  auto reg = JournalRegistry::from_records(js);

  std::vector<PublicationRecord> pubs;
  ClusterAssignments ca;
  int seq = 0;
  auto add = [&](const std::string& cluster, bool matched) {
    PublicationRecord p;
    p.pub_id = "p" + std::to_string(++seq);
    p.year = 2010;
    p.journal_id = "j";
    p.title = matched ? "match" : "other";
    pubs.push_back(p);
    ca.cluster_of[p.pub_id] = cluster;
    ca.members[cluster].push_back(p.pub_id);
  };
  for (int i = 0; i < 100; ++i) add("c1", i < 70);
  for (int i = 0; i < 100; ++i) add("c2", i < 50);
  for (int i = 0; i < 100; ++i) add("c3", false);
  Corpus corpus = Corpus::from_records(pubs, reg);
  std::vector<PubIdx> matched;
  for (PubIdx i = 0; i < corpus.size(); ++i) {
    if (corpus.pub(i).title == "match") matched.push_back(i);
  }

  DelineationConfig config;
  config.min_journal_pubs = 0;
  StepLog log;

  config.cluster_overlap_threshold = 0.6;
  run_publication_level(matched, ca, corpus, reg, config, &log);
  CHECK(log.counts[1] == std::pair<std::string, long long>{"clusters kept", 1});

  StepLog log2;
  config.cluster_overlap_threshold = 0.006;
  run_publication_level(matched, ca, corpus, reg, config, &log2);
  CHECK(log2.counts[1] == std::pair<std::string, long long>{"clusters kept", 2});
}

TEST_CASE("publication-level approach recovers exactly the planted journals") {
  auto planted = testsupport::make_planted_publication_level();
  Corpus corpus = Corpus::from_records(planted.pubs, planted.registry);
  std::vector<PubIdx> matched;
  for (PubIdx i = 0; i < corpus.size(); ++i) {
    if (corpus.pub(i).title == "field subject record") matched.push_back(i);
  }

  DelineationConfig config;
  StepLog log;
  auto result = run_publication_level(matched, planted.assignments, corpus, planted.registry,
                                      config, &log);
  CHECK(result.journals() == planted.core);
  CHECK(result.provenance.at("field-01") == std::vector<std::string>{"cluster-share"});

  // the journal with no window total is skipped with a warning
  bool warned = false;
  for (const auto& w : log.warnings) warned = warned || w.find("no-total") != std::string::npos;
  CHECK(warned);

  SUBCASE("raising thresholds never adds journals") {
    auto base = result.journals();
    DelineationConfig strict = config;
    strict.journal_share_threshold = 0.02;
    auto tightened =
        run_publication_level(matched, planted.assignments, corpus, planted.registry, strict)
            .journals();
    for (const auto& id : tightened) CHECK(base.contains(id));

    strict = config;
    strict.cluster_overlap_threshold = 0.5;
    auto tightened2 =
        run_publication_level(matched, planted.assignments, corpus, planted.registry, strict)
            .journals();
    for (const auto& id : tightened2) CHECK(base.contains(id));
  }

  SUBCASE("the whole-journal basis for the publication floor is selectable") {
    DelineationConfig alt = config;
    alt.min_pubs_basis_in_cluster = false;
    // every surviving journal has a window total of 5000 >= 50, so the
    // small-output journal (share 40/5000 >= 0.002, 40 in-cluster) now passes
    auto r = run_publication_level(matched, planted.assignments, corpus, planted.registry, alt);
    auto expected = planted.core;
    expected.insert("small-output");
    CHECK(r.journals() == expected);
  }
}

TEST_CASE("journal-level pipeline on the planted corpus") {
  auto planted = testsupport::make_planted_journal_level(91, Origin::wos_like, 40, 20, 5);
  Corpus corpus = Corpus::from_records(planted.pubs, planted.registry);

  DelineationConfig config;
  config.year_min = 2008;
  config.year_max = 2016;

  OriginInput origin;
  origin.origin = Origin::wos_like;
  origin.corpus = &corpus;
  origin.query = parse_query("TS=nano*", QueryDialect::wos());
  origin.category_scheme = Scheme::wos_like;

  StepLog log;
  auto result = run_journal_level({origin}, planted.registry, config, &log);

  auto expected = planted.core;
  expected.insert(planted.hidden);
  CHECK(result.journals() == expected);

  // scree core is 14 journals, the prefix step adds 6, the second scree adds 1
  CHECK(result.provenance.at("core-01") == std::vector<std::string>{"step3-scree", "step4-prefix"});
  CHECK(result.provenance.at("core-15") == std::vector<std::string>{"step4-prefix"});
  CHECK(result.provenance.at(planted.hidden) == std::vector<std::string>{"step7-scree"});

  // the multidisciplinary trap journal is screened out
  CHECK_FALSE(result.journals().contains(planted.trap));

  // steps 3 and 5 never intersect
  std::set<std::string> step3, step5ish;
  for (const auto& [id, tags] : result.provenance) {
    for (const auto& t : tags) {
      if (t == "step3-scree") step3.insert(id);
    }
  }
  for (const auto& [what, n] : log.counts) {
    if (what == "wos-like step3 core journals (k)") CHECK(n == 14);
    if (what == "wos-like step4 prefix journals") CHECK(n == 6);
    if (what == "wos-like step7 new journals") CHECK(n == 1);
  }

  SUBCASE("an origin with no matching publications is an error") {
    OriginInput bad = origin;
    bad.query = parse_query("TS=zzzqqq*", QueryDialect::wos());
    CHECK_THROWS_WITH_AS(run_journal_level({bad}, planted.registry, config),
                         doctest::Contains("wos-like"), DataError);
  }

  SUBCASE("the pipeline is deterministic across runs") {
    auto again = run_journal_level({origin}, planted.registry, config);
    CHECK(again.provenance == result.provenance);
  }
}

TEST_CASE("venn comparison of the bundled approach fixtures") {
  auto a1 = result_from_json_file(kFixtures / "result_a1.json");
  auto a2 = result_from_json_file(kFixtures / "result_a2.json");
  auto a3 = result_from_json_file(kFixtures / "result_a3.json");

  VennReport venn = compare({a1, a2, a3});
  auto counts = venn.counts();
  CHECK(counts.at("a1&a2&a3") == 44);
  CHECK(counts.at("a1&a2") == 7);
  CHECK(counts.at("a1&a3") == 15);
  CHECK(counts.at("a2&a3") == 4);
  CHECK(counts.at("a1") == 22);
  CHECK(counts.at("a2") == 21);
  CHECK(counts.at("a3") == 50);
  CHECK(venn.total() == 163);

  // per-approach totals rebuild from the pattern buckets
  CHECK(44 + 7 + 15 + 22 == a1.journals().size());
  CHECK(44 + 7 + 4 + 21 == a2.journals().size());
  CHECK(44 + 15 + 4 + 50 == a3.journals().size());

  SUBCASE("identical sets collapse into the shared bucket") {
    auto x = result_with(Approach::a1, {"p", "q"});
    auto y = result_with(Approach::a2, {"p", "q"});
    auto v = compare({x, y});
    CHECK(v.counts().at("a1&a2") == 2);
    CHECK(v.total() == 2);
  }

  SUBCASE("disjoint sets occupy only singleton buckets") {
    auto x = result_with(Approach::a1, {"p"});
    auto y = result_with(Approach::a2, {"q"});
    auto v = compare({x, y});
    CHECK(v.counts().at("a1") == 1);
    CHECK(v.counts().at("a2") == 1);
    CHECK(v.counts().count("a1&a2") == 0);
  }

  SUBCASE("duplicate approach tags are rejected") {
    CHECK_THROWS_AS(compare({a1, a1}), DataError);
    CHECK_THROWS_AS(compare({a1}), DataError);
  }
}

TEST_CASE("delineation results round-trip through JSON") {
  auto a3 = result_from_json_file(kFixtures / "result_a3.json");
  fs::path tmp = fs::temp_directory_path() / "fs_result_roundtrip.json";
  {
    std::ofstream out(tmp);
    out << result_to_json(a3);
  }
  auto back = result_from_json_file(tmp);
  CHECK(back.approach == a3.approach);
  CHECK(back.provenance == a3.provenance);
}

TEST_CASE("config validation") {
  DelineationConfig c;
  c.cluster_overlap_threshold = 1.5;
  CHECK_THROWS_AS(c.validate(), DataError);
  c = DelineationConfig{};
  c.top_n = 2;
  CHECK_THROWS_AS(c.validate(), DataError);
}
