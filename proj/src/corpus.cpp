#include "fieldscope/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fieldscope/text.hpp"
#include "json.hpp"

namespace fieldscope {

using nlohmann::json;

std::string to_string(DocType v) {
  switch (v) {
    case DocType::article: return "article";
    case DocType::review: return "review";
    case DocType::other: return "other";
  }
  return "other";
}

std::string to_string(Origin v) {
  return v == Origin::scopus_like ? "scopus-like" : "wos-like";
}

std::string to_string(JournalStatus v) {
  switch (v) {
    case JournalStatus::active: return "active";
    case JournalStatus::ceased: return "ceased";
    case JournalStatus::discontinued: return "discontinued";
  }
  return "active";
}

std::string to_string(Scheme v) {
  return v == Scheme::wos_like ? "wos-like" : "sjr-like";
}

std::string to_string(Field v) {
  switch (v) {
    case Field::title: return "title";
    case Field::abstract: return "abstract";
    case Field::author_keywords: return "author_keywords";
    case Field::keywords_plus: return "keywords_plus";
  }
  return "title";
}

DocType doc_type_from(std::string_view s) {
  if (s == "article") return DocType::article;
  if (s == "review") return DocType::review;
  if (s == "other") return DocType::other;
  throw DataError("unknown doc_type: " + std::string(s));
}

Origin origin_from(std::string_view s) {
  if (s == "scopus-like") return Origin::scopus_like;
  if (s == "wos-like") return Origin::wos_like;
  throw DataError("unknown origin: " + std::string(s));
}

JournalStatus status_from(std::string_view s) {
  if (s == "active") return JournalStatus::active;
  if (s == "ceased") return JournalStatus::ceased;
  if (s == "discontinued") return JournalStatus::discontinued;
  throw DataError("unknown status: " + std::string(s));
}

Scheme scheme_from(std::string_view s) {
  if (s == "wos-like") return Scheme::wos_like;
  if (s == "sjr-like") return Scheme::sjr_like;
  throw DataError("unknown scheme: " + std::string(s));
}

const std::vector<std::string>& PublicationRecord::keyword_list(Field f) const {
  return f == Field::author_keywords ? author_keywords : keywords_plus;
}

bool JournalRecord::in_category(Scheme scheme, std::string_view normalized_name) const {
  for (const auto& [s, name] : categories) {
    if (s == scheme && normalize_title(name) == normalized_name) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// JournalRegistry

namespace {

std::string strip_issn(std::string_view s) {
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c)) out.push_back(static_cast<char>(std::toupper(c)));
  }
  return out;
}

JournalRecord journal_from_json(const json& j, const std::string& where) {
  JournalRecord r;
  try {
    r.journal_id = j.at("journal_id").get<std::string>();
    r.canonical_title = j.at("canonical_title").get<std::string>();
    if (j.contains("aliases")) r.aliases = j["aliases"].get<std::vector<std::string>>();
    if (j.contains("issns")) r.issns = j["issns"].get<std::vector<std::string>>();
    if (j.contains("status")) r.status = status_from(j["status"].get<std::string>());
    if (j.contains("categories")) {
      for (const auto& c : j["categories"]) {
        r.categories.emplace_back(scheme_from(c.at("scheme").get<std::string>()),
                                  c.at("category").get<std::string>());
      }
    }
    if (j.contains("multidisciplinary")) r.multidisciplinary = j["multidisciplinary"].get<bool>();
    if (j.contains("covered_in")) {
      for (const auto& o : j["covered_in"]) r.covered_in.insert(origin_from(o.get<std::string>()));
    }
    if (j.contains("per_window_totals")) {
      for (auto it = j["per_window_totals"].begin(); it != j["per_window_totals"].end(); ++it) {
        r.per_window_totals[it.key()] = it.value().get<long long>();
      }
    }
  } catch (const json::exception& e) {
    throw DataError(where + ": malformed journal record: " + e.what());
  }
  return r;
}

}  // namespace

JournalRegistry JournalRegistry::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open registry file: " + file.string());
  std::vector<JournalRecord> records;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.starts_with("//")) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw DataError(file.string() + ":" + std::to_string(lineno) +
                      ": invalid JSON: " + e.what());
    }
    records.push_back(journal_from_json(j, file.string() + ":" + std::to_string(lineno)));
  }
  return from_records(std::move(records));
}

JournalRegistry JournalRegistry::from_records(std::vector<JournalRecord> records) {
  JournalRegistry reg;
  reg.records_ = std::move(records);
  reg.build_lookup();
  return reg;
}

void JournalRegistry::build_lookup() {
  by_id_.clear();
  by_norm_title_.clear();
  by_issn_.clear();
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (!by_id_.emplace(r.journal_id, i).second) {
      throw DataError("duplicate journal_id: " + r.journal_id);
    }
    auto add_title = [&](const std::string& t) {
      std::string key = normalize_title(t);
      if (key.empty()) return;
      auto [it, fresh] = by_norm_title_.emplace(key, i);
      if (!fresh && it->second != i) {
        throw DataError("journal title '" + t + "' maps to both '" +
                        records_[it->second].journal_id + "' and '" + r.journal_id + "'");
      }
    };
    add_title(r.canonical_title);
    for (const auto& a : r.aliases) add_title(a);
    for (const auto& issn : r.issns) {
      std::string key = strip_issn(issn);
      auto [it, fresh] = by_issn_.emplace(key, i);
      if (!fresh && it->second != i) {
        throw DataError("ISSN '" + issn + "' maps to two journals");
      }
    }
  }
}

const JournalRecord* JournalRegistry::resolve(std::string_view name_or_issn) const {
  std::string issn_key = strip_issn(name_or_issn);
  if (auto it = by_issn_.find(issn_key); it != by_issn_.end()) return &records_[it->second];
  if (auto it = by_norm_title_.find(normalize_title(name_or_issn)); it != by_norm_title_.end()) {
    return &records_[it->second];
  }
  return nullptr;
}

const JournalRecord* JournalRegistry::find(const std::string& journal_id) const {
  auto it = by_id_.find(journal_id);
  return it == by_id_.end() ? nullptr : &records_[it->second];
}

const JournalRecord& JournalRegistry::at(const std::string& journal_id) const {
  const JournalRecord* r = find(journal_id);
  if (!r) throw DataError("unknown journal_id: " + journal_id);
  return *r;
}

std::set<std::string> JournalRegistry::in_category(
    Scheme scheme, std::string_view category,
    const std::set<JournalStatus>& exclude_statuses) const {
  std::string want = normalize_title(category);
  std::set<std::string> out;
  for (const auto& r : records_) {
    if (exclude_statuses.contains(r.status)) continue;
    if (r.in_category(scheme, want)) out.insert(r.journal_id);
  }
  return out;
}

// ---------------------------------------------------------------------------
// ClusterAssignments

ClusterAssignments ClusterAssignments::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open cluster file: " + file.string());
  ClusterAssignments out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1) {
      if (line != "pub_id,cluster_id") {
        throw DataError(file.string() + ": expected header 'pub_id,cluster_id'");
      }
      continue;
    }
    auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw DataError(file.string() + ":" + std::to_string(lineno) + ": expected two columns");
    }
    std::string pub = line.substr(0, comma);
    std::string cluster = line.substr(comma + 1);
    auto [it, fresh] = out.cluster_of.emplace(pub, cluster);
    if (!fresh && it->second != cluster) {
      throw DataError(file.string() + ":" + std::to_string(lineno) + ": pub '" + pub +
                      "' assigned to two clusters");
    }
    if (fresh) out.members[cluster].push_back(pub);
  }
  for (auto& [c, pubs] : out.members) std::sort(pubs.begin(), pubs.end());
  return out;
}

// ---------------------------------------------------------------------------
// Corpus

namespace {

PublicationRecord pub_from_json(const json& j, const std::string& where) {
  PublicationRecord r;
  try {
    r.pub_id = j.at("pub_id").get<std::string>();
    r.doc_type = doc_type_from(j.at("doc_type").get<std::string>());
    r.year = j.at("year").get<int>();
    r.title = j.value("title", std::string());
    r.abstract = j.value("abstract", std::string());
    if (j.contains("author_keywords"))
      r.author_keywords = j["author_keywords"].get<std::vector<std::string>>();
    if (j.contains("keywords_plus"))
      r.keywords_plus = j["keywords_plus"].get<std::vector<std::string>>();
    r.journal_id = j.at("journal_id").get<std::string>();
    if (j.contains("cited_journal_ids"))
      r.cited_journal_ids = j["cited_journal_ids"].get<std::vector<std::string>>();
    r.origin = origin_from(j.at("origin").get<std::string>());
  } catch (const json::exception& e) {
    throw DataError(where + ": malformed publication record: " + e.what());
  }
  return r;
}

}  // namespace

Corpus Corpus::load(const std::filesystem::path& file, const JournalRegistry& registry) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open publications file: " + file.string());
  std::vector<PublicationRecord> records;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.starts_with("//")) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw DataError(file.string() + ":" + std::to_string(lineno) +
                      ": invalid JSON: " + e.what());
    }
    records.push_back(pub_from_json(j, file.string() + ":" + std::to_string(lineno)));
  }
  return from_records(std::move(records), registry);
}

Corpus Corpus::from_records(std::vector<PublicationRecord> records,
                            const JournalRegistry& registry) {
  Corpus c;
  c.pubs_ = std::move(records);
  for (std::size_t i = 0; i < c.pubs_.size(); ++i) {
    const auto& p = c.pubs_[i];
    if (p.pub_id.empty()) throw DataError("record " + std::to_string(i + 1) + ": empty pub_id");
    if (!c.by_id_.emplace(p.pub_id, static_cast<PubIdx>(i)).second) {
      throw DataError("duplicate pub_id: " + p.pub_id);
    }
    if (!registry.contains(p.journal_id)) {
      throw DataError("record '" + p.pub_id + "': journal_id '" + p.journal_id +
                      "' not present in the registry");
    }
    for (const auto& cid : p.cited_journal_ids) {
      if (!registry.contains(cid)) {
        throw DataError("record '" + p.pub_id + "': cited journal '" + cid +
                        "' not present in the registry");
      }
    }
  }
  c.build_indexes();
  return c;
}

void Corpus::build_indexes() {
  for (PubIdx i = 0; i < pubs_.size(); ++i) {
    const auto& p = pubs_[i];
    by_journal_[p.journal_id].push_back(i);
    auto add_value = [&](Field f, std::string_view value, std::uint32_t value_idx) {
      auto& idx = index_[static_cast<int>(f)];
      for (const auto& t : tokenize_positions(value)) {
        idx[t.token].push_back({i, value_idx, static_cast<std::uint32_t>(t.pos)});
      }
    };
    add_value(Field::title, p.title, 0);
    add_value(Field::abstract, p.abstract, 0);
    for (std::uint32_t k = 0; k < p.author_keywords.size(); ++k) {
      add_value(Field::author_keywords, p.author_keywords[k], k);
    }
    for (std::uint32_t k = 0; k < p.keywords_plus.size(); ++k) {
      add_value(Field::keywords_plus, p.keywords_plus[k], k);
    }
  }
}

std::optional<PubIdx> Corpus::index_of(std::string_view pub_id) const {
  auto it = by_id_.find(std::string(pub_id));
  return it == by_id_.end() ? std::nullopt : std::optional<PubIdx>(it->second);
}

const std::vector<PubIdx>& Corpus::pubs_of_journal(const std::string& journal_id) const {
  static const std::vector<PubIdx> kEmpty;
  auto it = by_journal_.find(journal_id);
  return it == by_journal_.end() ? kEmpty : it->second;
}

std::vector<PubIdx> Corpus::all_pubs() const {
  std::vector<PubIdx> out(pubs_.size());
  for (PubIdx i = 0; i < pubs_.size(); ++i) out[i] = i;
  return out;
}

}  // namespace fieldscope
