#include "fieldscope/reproduce.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fieldscope/evalkit.hpp"
#include "fieldscope/lexquery.hpp"
#include "fieldscope/pipelines.hpp"
#include "fieldscope/text.hpp"
#include "json.hpp"

namespace fieldscope {

namespace {

std::string fmt(double v, int decimals = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string describe_set_diff(const std::set<std::string>& expected,
                              const std::set<std::string>& got) {
  std::string out;
  int shown = 0;
  for (const auto& id : expected) {
    if (!got.contains(id) && shown < 5) {
      out += " missing:" + id;
      ++shown;
    }
  }
  shown = 0;
  for (const auto& id : got) {
    if (!expected.contains(id) && shown < 5) {
      out += " extra:" + id;
      ++shown;
    }
  }
  return out;
}

struct Checker {
  ReproduceReport& report;

  void close(const std::string& name, double expected, double got, double tol) {
    ReproduceCheck c;
    c.name = name;
    c.expected = fmt(expected) + " +/- " + fmt(tol, 3);
    c.computed = fmt(got);
    c.pass = std::abs(expected - got) <= tol;
    report.checks.push_back(std::move(c));
  }

  void exact(const std::string& name, long long expected, long long got) {
    ReproduceCheck c;
    c.name = name;
    c.expected = std::to_string(expected);
    c.computed = std::to_string(got);
    c.pass = expected == got;
    report.checks.push_back(std::move(c));
  }

  void truthy(const std::string& name, bool pass, const std::string& expected,
              const std::string& got) {
    report.checks.push_back({name, expected, got, pass});
  }
};

}  // namespace

bool ReproduceReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::string ReproduceReport::render() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.pass ? "PASS" : "FAIL") << "  " << c.name << ": expected " << c.expected
        << ", computed " << c.computed << "\n";
  }
  out << (all_pass() ? "reproduction OK" : "reproduction FAILED") << " ("
      << fmt(elapsed_seconds, 3) << " s)\n";
  return out.str();
}

std::string ReproduceReport::to_json() const {
  nlohmann::json j;
  j["all_pass"] = all_pass();
  j["elapsed_seconds"] = elapsed_seconds;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name},
                   {"expected", c.expected},
                   {"computed", c.computed},
                   {"pass", c.pass}});
  }
  j["checks"] = arr;
  return j.dump(2) + "\n";
}

ReproduceReport run_reproduction(const std::filesystem::path& dir) {
  auto t0 = std::chrono::steady_clock::now();
  ReproduceReport report;
  Checker check{report};

  JournalRegistry registry = JournalRegistry::load(dir / "registry.jsonl");

  DelineationConfig config;

  // -- journal sets ---------------------------------------------------------
  DelineationResult a1 = result_from_json_file(dir / "result_a1.json");
  DelineationResult a2 = result_from_json_file(dir / "result_a2.json");
  DelineationResult a3 = result_from_json_file(dir / "result_a3.json");

  check.exact("A1 journals", 88, static_cast<long long>(a1.journals().size()));
  check.exact("A2 journals", 76, static_cast<long long>(a2.journals().size()));
  check.exact("A3 journals", 113, static_cast<long long>(a3.journals().size()));

  // the category pipeline must regenerate the A1 fixture from the registry
  DelineationResult a1_run = run_category_approach(registry, config, Scheme::wos_like);
  check.truthy("A1 equals category pipeline output", a1_run.journals() == a1.journals(),
               "identical sets",
               a1_run.journals() == a1.journals()
                   ? "identical sets"
                   : "differ:" + describe_set_diff(a1.journals(), a1_run.journals()));

  check.exact("registry category journals (wos-like)", 88,
              static_cast<long long>(
                  registry.in_category(Scheme::wos_like, "Nanoscience & Nanotechnology",
                                       {JournalStatus::ceased})
                      .size()));
  check.exact("registry category journals (sjr-like)", 87,
              static_cast<long long>(
                  registry
                      .in_category(Scheme::sjr_like, "Nanoscience & Nanotechnology",
                                   {JournalStatus::ceased, JournalStatus::discontinued})
                      .size()));
  check.exact("active journals matching nano*", 91,
              static_cast<long long>(
                  title_prefix_search(registry, "nano*", {JournalStatus::active}).size()));

  // -- venn counts ----------------------------------------------------------
  VennReport venn = compare({a1, a2, a3});
  auto counts = venn.counts();
  auto count_of = [&counts](const std::string& k) -> long long {
    auto it = counts.find(k);
    return it == counts.end() ? 0 : static_cast<long long>(it->second);
  };
  check.exact("venn a1&a2&a3", 44, count_of("a1&a2&a3"));
  check.exact("venn a1&a2", 7, count_of("a1&a2"));
  check.exact("venn a1&a3", 15, count_of("a1&a3"));
  check.exact("venn a2&a3", 4, count_of("a2&a3"));
  check.exact("venn a1 only", 22, count_of("a1"));
  check.exact("venn a2 only", 21, count_of("a2"));
  check.exact("venn a3 only", 50, count_of("a3"));
  check.exact("venn total", 163, static_cast<long long>(venn.total()));

  // -- journal-level precision and recall -----------------------------------
  ScopeRatings ratings = ScopeRatings::load(dir / "scope_ratings.csv");
  const int total_recall = 163;

  struct Expect {
    const DelineationResult* result;
    std::string label;
    double precision;
    double recall;
    int high, medium, low;
  };
  const Expect expected[] = {
      {&a1, "A1", 76.5 / 88.0, 80.0 / 163.0, 73, 7, 8},
      {&a2, "A2", 65.0 / 76.0, 72.0 / 163.0, 58, 14, 4},
      {&a3, "A3", 100.0 / 113.0, 105.0 / 163.0, 95, 10, 8},
  };
  for (const auto& e : expected) {
    ScopePrecision p = precision_by_scope(e.result->journals(), ratings);
    check.exact(e.label + " high-precision journals", e.high, p.counts.high);
    check.exact(e.label + " medium-precision journals", e.medium, p.counts.medium);
    check.exact(e.label + " low-precision journals", e.low, p.counts.low);
    check.close(e.label + " journal precision", e.precision, p.precision, 0.005);
    double r = recall_journals(e.result->journals(), ratings, total_recall);
    check.close(e.label + " journal recall", e.recall, r, 0.005);
  }

  // -- publication-level precision from the expert sample --------------------
  BallotFile ballots = load_ballots(dir / "ballots.csv");
  check.exact("sample ballots", 50, static_cast<long long>(ballots.ballots.size()));

  Corpus sample = Corpus::load(dir / "sample_pubs.jsonl", registry);
  check.exact("sample corpus publications", 50, static_cast<long long>(sample.size()));

  std::map<Approach, std::vector<RelevanceBallot>> by_approach;
  for (const auto& b : ballots.ballots) by_approach[b.approach].push_back(b);
  const std::pair<Approach, double> table3[] = {
      {Approach::a0, 0.56}, {Approach::a1, 0.47}, {Approach::a2, 0.62}, {Approach::a3, 0.56}};
  for (const auto& [a, want] : table3) {
    check.close(to_string(a) + " publication precision", want,
                approach_precision(by_approach.at(a)), 0.01);
  }

  long long strong = 0;
  for (const auto& b : ballots.ballots) {
    if (item_precision(b) >= 0.8) ++strong;
  }
  check.exact("sample items with precision >= 0.8", 13, strong);

  // -- bundled query files parse --------------------------------------------
  QueryFile scopus_queries = parse_query_file(dir / "queries_scopus.txt", QueryDialect::scopus());
  QueryFile wos_queries = parse_query_file(dir / "queries_wos.txt", QueryDialect::wos());
  check.truthy("query files parse with a root query",
               scopus_queries.final_query != nullptr && wos_queries.final_query != nullptr,
               "both roots present",
               scopus_queries.final_query && wos_queries.final_query ? "both roots present"
                                                                     : "missing root");

  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace fieldscope
