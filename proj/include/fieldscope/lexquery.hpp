#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fieldscope/corpus.hpp"

namespace fieldscope {

struct ParseError : std::runtime_error {
  ParseError(std::size_t offset, const std::string& message)
      : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": " + message),
        offset(offset) {}
  std::size_t offset;
};

struct QueryNode;
using QueryPtr = std::shared_ptr<const QueryNode>;

struct QueryNode {
  enum class Kind { field_scope, term, phrase, and_op, or_op, not_op };
  Kind kind;

  std::set<Field> fields;                  // field_scope
  std::string pattern;                     // term ('*' wildcards allowed anywhere)
  std::vector<std::string> phrase_tokens;  // phrase: one pattern per token
  std::vector<QueryPtr> children;          // scope: 1; not: positive, negative; and/or: 2+

  static QueryPtr scope(std::set<Field> fields, QueryPtr child);
  static QueryPtr term(std::string pattern);
  static QueryPtr phrase(std::vector<std::string> tokens);
  static QueryPtr and_of(std::vector<QueryPtr> children);
  static QueryPtr or_of(std::vector<QueryPtr> children);
  static QueryPtr not_of(QueryPtr positive, QueryPtr negative);
};

bool query_equal(const QueryPtr& a, const QueryPtr& b);

struct QueryDialect {
  enum class Kind { scopus_like, wos_like };
  Kind kind = Kind::scopus_like;

  static const QueryDialect& scopus();
  static const QueryDialect& wos();

  std::string scope_keyword() const;      // TITLE-ABS-KEY vs TS=
  std::string not_spelling() const;       // AND NOT vs NOT
  const std::set<Field>& scope_fields() const;
};

using QueryEnv = std::map<std::string, QueryPtr>;

// Operator precedence NOT > AND > OR; parentheses group; sub-query references
// (#n) resolve from the environment at parse time.
QueryPtr parse_query(std::string_view text, const QueryDialect& dialect,
                     const QueryEnv& env = {});

std::string print_query(const QueryPtr& query, const QueryDialect& dialect);

struct QueryFile {
  QueryEnv blocks;
  std::vector<std::string> block_order;
  QueryPtr final_query;  // null when the file declares none
};

// Lines `#<n> <query>` or `#<n> = <query>`; `FINAL QUERY <query>` marks the
// root; `//` comment lines and blank lines are ignored.
QueryFile parse_query_file(const std::filesystem::path& file, const QueryDialect& dialect);

struct EvalFilters {
  std::optional<int> year_min;
  std::optional<int> year_max;
  std::set<DocType> doc_types;  // empty means all
};

// Exact boolean evaluation over the corpus index; case-insensitive; '*'
// matches any run within a single token; phrases match contiguous token
// sequences within one field value. Returns sorted pub ordinals.
std::vector<PubIdx> evaluate(const QueryPtr& query, const Corpus& corpus,
                             const EvalFilters& filters = {});

std::vector<std::string> pub_ids_of(const std::vector<PubIdx>& pubs, const Corpus& corpus);

// Journals whose canonical title or any alias contains a token matching the
// pattern, restricted to the given statuses.
std::set<std::string> title_prefix_search(const JournalRegistry& registry,
                                          std::string_view pattern,
                                          const std::set<JournalStatus>& statuses);

}  // namespace fieldscope
