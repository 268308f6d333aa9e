#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fieldscope {

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class DocType { article, review, other };
enum class Origin { scopus_like, wos_like };
enum class JournalStatus { active, ceased, discontinued };
enum class Scheme { wos_like, sjr_like };
enum class Field { title, abstract, author_keywords, keywords_plus };

std::string to_string(DocType v);
std::string to_string(Origin v);
std::string to_string(JournalStatus v);
std::string to_string(Scheme v);
std::string to_string(Field v);
DocType doc_type_from(std::string_view s);
Origin origin_from(std::string_view s);
JournalStatus status_from(std::string_view s);
Scheme scheme_from(std::string_view s);

inline constexpr Field kAllFields[] = {Field::title, Field::abstract,
                                       Field::author_keywords,
                                       Field::keywords_plus};

struct PublicationRecord {
  std::string pub_id;
  DocType doc_type = DocType::article;
  int year = 0;
  std::string title;
  std::string abstract;
  std::vector<std::string> author_keywords;
  std::vector<std::string> keywords_plus;
  std::string journal_id;
  std::vector<std::string> cited_journal_ids;
  Origin origin = Origin::scopus_like;

  const std::vector<std::string>& keyword_list(Field f) const;
};

struct JournalRecord {
  std::string journal_id;
  std::string canonical_title;
  std::vector<std::string> aliases;
  std::vector<std::string> issns;
  JournalStatus status = JournalStatus::active;
  std::vector<std::pair<Scheme, std::string>> categories;
  bool multidisciplinary = false;
  std::set<Origin> covered_in;
  std::map<std::string, long long> per_window_totals;  // "YYYY-YYYY" -> count

  bool in_category(Scheme scheme, std::string_view normalized_name) const;
};

class JournalRegistry {
 public:
  JournalRegistry() = default;
  static JournalRegistry load(const std::filesystem::path& file);
  static JournalRegistry from_records(std::vector<JournalRecord> records);

  // Alias/ISSN-aware lookup; nullptr when nothing matches.
  const JournalRecord* resolve(std::string_view name_or_issn) const;
  const JournalRecord* find(const std::string& journal_id) const;
  const JournalRecord& at(const std::string& journal_id) const;
  bool contains(const std::string& journal_id) const { return find(journal_id) != nullptr; }

  std::set<std::string> in_category(Scheme scheme, std::string_view category,
                                    const std::set<JournalStatus>& exclude_statuses) const;

  const std::vector<JournalRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

 private:
  void build_lookup();
  std::vector<JournalRecord> records_;
  std::map<std::string, std::size_t> by_id_;
  std::map<std::string, std::size_t> by_norm_title_;
  std::map<std::string, std::size_t> by_issn_;
};

struct ClusterAssignments {
  static ClusterAssignments load(const std::filesystem::path& file);

  std::map<std::string, std::string> cluster_of;               // pub_id -> cluster_id
  std::map<std::string, std::vector<std::string>> members;     // cluster_id -> pub_ids, sorted
};

using PubIdx = std::uint32_t;

// Immutable after construction; indexes are a pure function of the records.
class Corpus {
 public:
  struct Posting {
    PubIdx pub;
    std::uint32_t value_idx;  // which field value (keywords are one value each)
    std::uint32_t pos;        // token ordinal within that value
    auto operator<=>(const Posting&) const = default;
  };
  using TokenIndex = std::map<std::string, std::vector<Posting>>;

  static Corpus load(const std::filesystem::path& file, const JournalRegistry& registry);
  static Corpus from_records(std::vector<PublicationRecord> records,
                             const JournalRegistry& registry);

  std::size_t size() const { return pubs_.size(); }
  const PublicationRecord& pub(PubIdx i) const { return pubs_[i]; }
  const std::vector<PublicationRecord>& pubs() const { return pubs_; }
  std::optional<PubIdx> index_of(std::string_view pub_id) const;

  const TokenIndex& tokens(Field f) const { return index_[static_cast<int>(f)]; }
  const std::vector<PubIdx>& pubs_of_journal(const std::string& journal_id) const;
  const std::map<std::string, std::vector<PubIdx>>& journal_map() const { return by_journal_; }

  std::vector<PubIdx> all_pubs() const;

 private:
  void build_indexes();
  std::vector<PublicationRecord> pubs_;
  std::map<std::string, PubIdx> by_id_;
  std::map<std::string, std::vector<PubIdx>> by_journal_;
  TokenIndex index_[4];
};

}  // namespace fieldscope
