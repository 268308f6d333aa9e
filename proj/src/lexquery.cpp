#include "fieldscope/lexquery.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "fieldscope/text.hpp"

namespace fieldscope {

// ---------------------------------------------------------------------------
// AST constructors

QueryPtr QueryNode::scope(std::set<Field> fields, QueryPtr child) {
  auto n = std::make_shared<QueryNode>();
  n->kind = Kind::field_scope;
  n->fields = std::move(fields);
  n->children = {std::move(child)};
  return n;
}

QueryPtr QueryNode::term(std::string pattern) {
  auto n = std::make_shared<QueryNode>();
  n->kind = Kind::term;
  n->pattern = std::move(pattern);
  return n;
}

QueryPtr QueryNode::phrase(std::vector<std::string> tokens) {
  auto n = std::make_shared<QueryNode>();
  n->kind = Kind::phrase;
  n->phrase_tokens = std::move(tokens);
  return n;
}

QueryPtr QueryNode::and_of(std::vector<QueryPtr> children) {
  auto n = std::make_shared<QueryNode>();
  n->kind = Kind::and_op;
  n->children = std::move(children);
  return n;
}

QueryPtr QueryNode::or_of(std::vector<QueryPtr> children) {
  auto n = std::make_shared<QueryNode>();
  n->kind = Kind::or_op;
  n->children = std::move(children);
  return n;
}

QueryPtr QueryNode::not_of(QueryPtr positive, QueryPtr negative) {
  auto n = std::make_shared<QueryNode>();
  n->kind = Kind::not_op;
  n->children = {std::move(positive), std::move(negative)};
  return n;
}

bool query_equal(const QueryPtr& a, const QueryPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->fields != b->fields || a->pattern != b->pattern ||
      a->phrase_tokens != b->phrase_tokens || a->children.size() != b->children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a->children.size(); ++i) {
    if (!query_equal(a->children[i], b->children[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Dialect

const QueryDialect& QueryDialect::scopus() {
  static const QueryDialect d{Kind::scopus_like};
  return d;
}

const QueryDialect& QueryDialect::wos() {
  static const QueryDialect d{Kind::wos_like};
  return d;
}

std::string QueryDialect::scope_keyword() const {
  return kind == Kind::scopus_like ? "TITLE-ABS-KEY" : "TS=";
}

std::string QueryDialect::not_spelling() const {
  return kind == Kind::scopus_like ? "AND NOT" : "NOT";
}

const std::set<Field>& QueryDialect::scope_fields() const {
  static const std::set<Field> scopus_fields = {Field::title, Field::abstract,
                                                Field::author_keywords};
  static const std::set<Field> wos_fields = {Field::title, Field::abstract,
                                             Field::author_keywords, Field::keywords_plus};
  return kind == Kind::scopus_like ? scopus_fields : wos_fields;
}

// ---------------------------------------------------------------------------
// Scanner

namespace {

struct Token {
  enum class Kind { lparen, rparen, and_kw, or_kw, not_kw, scope_kw, ref, pattern, end };
  Kind kind;
  std::size_t offset = 0;
  std::string text;  // ref label without '#'; pattern text (lowercased)
};

bool is_pattern_char(unsigned char c) { return std::isalnum(c) || c == '*'; }

bool word_at(std::string_view s, std::size_t i, std::string_view word) {
  if (i + word.size() > s.size()) return false;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (std::toupper(static_cast<unsigned char>(s[i + k])) != word[k]) return false;
  }
  std::size_t next = i + word.size();
  if (next < s.size() && (std::isalnum(static_cast<unsigned char>(s[next])) || s[next] == '*' ||
                          s[next] == '-')) {
    return false;  // longer word continues
  }
  return true;
}

std::vector<Token> scan(std::string_view s, const QueryDialect& dialect) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    std::size_t at = i;
    if (c == '(') {
      out.push_back({Token::Kind::lparen, at, ""});
      ++i;
      continue;
    }
    if (c == ')') {
      out.push_back({Token::Kind::rparen, at, ""});
      ++i;
      continue;
    }
    if (c == '#') {
      std::size_t j = i + 1;
      while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i + 1) throw ParseError(at, "expected a label after '#'");
      out.push_back({Token::Kind::ref, at, std::string(s.substr(i + 1, j - i - 1))});
      i = j;
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < s.size() && s[j] != '"') ++j;
      if (j >= s.size()) throw ParseError(at, "unterminated quoted phrase");
      out.push_back({Token::Kind::pattern, at, to_lower(s.substr(i + 1, j - i - 1))});
      i = j + 1;
      continue;
    }
    // Scope keywords take precedence over generic words.
    if (dialect.kind == QueryDialect::Kind::scopus_like && word_at(s, i, "TITLE-ABS-KEY")) {
      out.push_back({Token::Kind::scope_kw, at, ""});
      i += 13;
      continue;
    }
    if (dialect.kind == QueryDialect::Kind::wos_like && i + 1 < s.size() &&
        std::toupper(static_cast<unsigned char>(s[i])) == 'T' &&
        std::toupper(static_cast<unsigned char>(s[i + 1])) == 'S') {
      std::size_t j = i + 2;
      while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && (s[j] == '=' || s[j] == '(')) {
        out.push_back({Token::Kind::scope_kw, at, ""});
        i = (s[j] == '=') ? j + 1 : j;  // a '(' stays for the parser
        continue;
      }
    }
    if (word_at(s, i, "AND")) {
      out.push_back({Token::Kind::and_kw, at, ""});
      i += 3;
      continue;
    }
    if (word_at(s, i, "OR")) {
      out.push_back({Token::Kind::or_kw, at, ""});
      i += 2;
      continue;
    }
    if (word_at(s, i, "NOT")) {
      out.push_back({Token::Kind::not_kw, at, ""});
      i += 3;
      continue;
    }
    if (is_pattern_char(c) || c == '-') {
      // Bare pattern: word characters, '*', and interior hyphens (which split
      // into phrase tokens later, same as quoted "nano-flow").
      std::size_t j = i;
      while (j < s.size() &&
             (is_pattern_char(static_cast<unsigned char>(s[j])) || s[j] == '-')) {
        ++j;
      }
      out.push_back({Token::Kind::pattern, at, to_lower(s.substr(i, j - i))});
      i = j;
      continue;
    }
    throw ParseError(at, "unexpected character '" + std::string(1, s[i]) + "'");
  }
  out.push_back({Token::Kind::end, s.size(), ""});
  return out;
}

// Stray closing parentheses with no group open are dropped (appendix query
// texts carry a few); unclosed groups still error at end of input.
void drop_unmatched_closers(std::vector<Token>& tokens) {
  int depth = 0;
  std::vector<Token> kept;
  kept.reserve(tokens.size());
  for (auto& t : tokens) {
    if (t.kind == Token::Kind::lparen) ++depth;
    if (t.kind == Token::Kind::rparen) {
      if (depth == 0) continue;
      --depth;
    }
    kept.push_back(std::move(t));
  }
  tokens = std::move(kept);
}

// Splits a raw pattern on non-token characters; '*' stays inside tokens.
std::vector<std::string> pattern_tokens(const std::string& raw) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : raw) {
    if (is_pattern_char(c)) {
      cur.push_back(static_cast<char>(c));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const QueryDialect& dialect, const QueryEnv& env)
      : tokens_(std::move(tokens)), dialect_(dialect), env_(env) {}

  QueryPtr parse() {
    QueryPtr q = parse_or(false);
    const Token& t = peek();
    if (t.kind != Token::Kind::end) {
      throw ParseError(t.offset, "unexpected trailing input");
    }
    return q;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  QueryPtr parse_or(bool in_scope) {
    std::vector<QueryPtr> parts{parse_and(in_scope)};
    while (peek().kind == Token::Kind::or_kw) {
      take();
      parts.push_back(parse_and(in_scope));
    }
    if (parts.size() == 1) return parts[0];
    return QueryNode::or_of(std::move(parts));
  }

  QueryPtr parse_and(bool in_scope) {
    std::vector<QueryPtr> parts{parse_not(in_scope)};
    while (peek().kind == Token::Kind::and_kw) {
      take();
      if (peek().kind == Token::Kind::not_kw) {
        take();
        QueryPtr lhs = parts.size() == 1 ? parts[0] : QueryNode::and_of(std::move(parts));
        parts = {QueryNode::not_of(lhs, parse_not(in_scope))};
      } else {
        parts.push_back(parse_not(in_scope));
      }
    }
    if (parts.size() == 1) return parts[0];
    return QueryNode::and_of(std::move(parts));
  }

  QueryPtr parse_not(bool in_scope) {
    QueryPtr acc = parse_primary(in_scope);
    while (peek().kind == Token::Kind::not_kw) {
      take();
      acc = QueryNode::not_of(acc, parse_primary(in_scope));
    }
    return acc;
  }

  QueryPtr parse_primary(bool in_scope) {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::lparen: {
        take();
        QueryPtr inner = parse_or(in_scope);
        const Token& close = peek();
        if (close.kind == Token::Kind::rparen) {
          take();
        } else if (close.kind != Token::Kind::end) {
          throw ParseError(close.offset, "expected ')'");
        }
        // end-of-input closes remaining groups
        return inner;
      }
      case Token::Kind::scope_kw: {
        take();
        if (in_scope) throw ParseError(t.offset, "nested field scope");
        QueryPtr child;
        if (peek().kind == Token::Kind::lparen) {
          take();
          child = parse_or(true);
          const Token& close = peek();
          if (close.kind == Token::Kind::rparen) {
            take();
          } else if (close.kind != Token::Kind::end) {
            throw ParseError(close.offset, "expected ')'");
          }
        } else if (peek().kind == Token::Kind::pattern) {
          child = make_leaf(take());
        } else {
          throw ParseError(peek().offset, "expected a term, phrase, or '(' after field scope");
        }
        return QueryNode::scope(dialect_.scope_fields(), child);
      }
      case Token::Kind::ref: {
        take();
        auto it = env_.find("#" + t.text);
        if (it == env_.end()) {
          throw ParseError(t.offset, "unknown sub-query label #" + t.text);
        }
        return it->second;
      }
      case Token::Kind::pattern: {
        if (!in_scope) {
          throw ParseError(t.offset, "term outside a field scope");
        }
        return make_leaf(take());
      }
      default:
        throw ParseError(t.offset, "expected a term, phrase, #reference, or '('");
    }
  }

  QueryPtr make_leaf(const Token& t) {
    std::vector<std::string> toks = pattern_tokens(t.text);
    if (toks.empty()) throw ParseError(t.offset, "empty pattern");
    if (toks.size() == 1) return QueryNode::term(toks[0]);
    return QueryNode::phrase(std::move(toks));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const QueryDialect& dialect_;
  const QueryEnv& env_;
};

}  // namespace

QueryPtr parse_query(std::string_view text, const QueryDialect& dialect, const QueryEnv& env) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw ParseError(0, "empty query");
  }
  std::vector<Token> tokens = scan(text, dialect);
  drop_unmatched_closers(tokens);
  return Parser(std::move(tokens), dialect, env).parse();
}

// ---------------------------------------------------------------------------
// Printer

namespace {

void print_node(const QueryPtr& q, const QueryDialect& d, std::string& out, bool in_scope);

void print_child(const QueryPtr& q, const QueryDialect& d, std::string& out, bool in_scope) {
  bool composite = q->kind == QueryNode::Kind::and_op || q->kind == QueryNode::Kind::or_op ||
                   q->kind == QueryNode::Kind::not_op;
  if (composite) out.push_back('(');
  print_node(q, d, out, in_scope);
  if (composite) out.push_back(')');
}

void print_node(const QueryPtr& q, const QueryDialect& d, std::string& out, bool in_scope) {
  switch (q->kind) {
    case QueryNode::Kind::term:
      out += q->pattern;
      break;
    case QueryNode::Kind::phrase: {
      out.push_back('"');
      for (std::size_t i = 0; i < q->phrase_tokens.size(); ++i) {
        if (i) out.push_back(' ');
        out += q->phrase_tokens[i];
      }
      out.push_back('"');
      break;
    }
    case QueryNode::Kind::field_scope: {
      if (d.kind == QueryDialect::Kind::scopus_like) {
        out += "TITLE-ABS-KEY(";
      } else {
        out += "TS=(";
      }
      print_node(q->children[0], d, out, true);
      out.push_back(')');
      break;
    }
    case QueryNode::Kind::and_op: {
      for (std::size_t i = 0; i < q->children.size(); ++i) {
        if (i) out += " AND ";
        print_child(q->children[i], d, out, in_scope);
      }
      break;
    }
    case QueryNode::Kind::or_op: {
      for (std::size_t i = 0; i < q->children.size(); ++i) {
        if (i) out += " OR ";
        print_child(q->children[i], d, out, in_scope);
      }
      break;
    }
    case QueryNode::Kind::not_op: {
      print_child(q->children[0], d, out, in_scope);
      out += d.kind == QueryDialect::Kind::scopus_like ? " AND NOT " : " NOT ";
      print_child(q->children[1], d, out, in_scope);
      break;
    }
  }
}

}  // namespace

std::string print_query(const QueryPtr& query, const QueryDialect& dialect) {
  std::string out;
  print_node(query, dialect, out, false);
  return out;
}

// ---------------------------------------------------------------------------
// Query files

QueryFile parse_query_file(const std::filesystem::path& file, const QueryDialect& dialect) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open query file: " + file.string());
  QueryFile out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    std::string_view body(line);
    body.remove_prefix(start);
    if (body.starts_with("//")) continue;
    try {
      if (body.starts_with("FINAL QUERY")) {
        body.remove_prefix(11);
        out.final_query = parse_query(body, dialect, out.blocks);
        continue;
      }
      if (!body.starts_with("#")) {
        throw ParseError(0, "expected '#<label>' or 'FINAL QUERY'");
      }
      std::size_t j = 1;
      while (j < body.size() && std::isalnum(static_cast<unsigned char>(body[j]))) ++j;
      if (j == 1) throw ParseError(0, "expected a label after '#'");
      std::string label(body.substr(0, j));
      body.remove_prefix(j);
      std::size_t eq = body.find_first_not_of(" \t");
      if (eq != std::string_view::npos && body[eq] == '=') body.remove_prefix(eq + 1);
      if (out.blocks.contains(label)) {
        throw ParseError(0, "label " + label + " defined twice");
      }
      QueryPtr q = parse_query(body, dialect, out.blocks);
      out.blocks.emplace(label, q);
      out.block_order.push_back(label);
    } catch (const ParseError& e) {
      throw DataError(file.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

using PubSet = std::vector<PubIdx>;  // sorted unique

PubSet set_union(const PubSet& a, const PubSet& b) {
  PubSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

PubSet set_intersection(const PubSet& a, const PubSet& b) {
  PubSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

PubSet set_difference(const PubSet& a, const PubSet& b) {
  PubSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void sort_unique(PubSet& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Vocabulary keys matching a pattern; a literal prefix bounds the scan.
template <typename Fn>
void for_matching_tokens(const Corpus::TokenIndex& index, const std::string& pattern, Fn&& fn) {
  if (!has_wildcard(pattern)) {
    auto it = index.find(pattern);
    if (it != index.end()) fn(it->second);
    return;
  }
  std::string prefix = pattern.substr(0, pattern.find('*'));
  auto it = prefix.empty() ? index.begin() : index.lower_bound(prefix);
  for (; it != index.end(); ++it) {
    if (!prefix.empty() && it->first.compare(0, prefix.size(), prefix) != 0) break;
    if (wildcard_match(pattern, it->first)) fn(it->second);
  }
}

struct Evaluator {
  const Corpus& corpus;

  PubSet eval(const QueryPtr& q, const std::set<Field>* fields) const {
    switch (q->kind) {
      case QueryNode::Kind::field_scope:
        return eval(q->children[0], &q->fields);
      case QueryNode::Kind::term:
        return eval_term(q->pattern, fields);
      case QueryNode::Kind::phrase:
        return eval_phrase(q->phrase_tokens, fields);
      case QueryNode::Kind::and_op: {
        PubSet acc = eval(q->children[0], fields);
        for (std::size_t i = 1; i < q->children.size() && !acc.empty(); ++i) {
          acc = set_intersection(acc, eval(q->children[i], fields));
        }
        return acc;
      }
      case QueryNode::Kind::or_op: {
        PubSet acc;
        for (const auto& c : q->children) acc = set_union(acc, eval(c, fields));
        return acc;
      }
      case QueryNode::Kind::not_op:
        return set_difference(eval(q->children[0], fields), eval(q->children[1], fields));
    }
    return {};
  }

  PubSet eval_term(const std::string& pattern, const std::set<Field>* fields) const {
    if (!fields) throw DataError("term evaluated outside a field scope");
    PubSet out;
    for (Field f : *fields) {
      for_matching_tokens(corpus.tokens(f), pattern, [&](const std::vector<Corpus::Posting>& ps) {
        for (const auto& p : ps) out.push_back(p.pub);
      });
    }
    sort_unique(out);
    return out;
  }

  PubSet eval_phrase(const std::vector<std::string>& tokens, const std::set<Field>* fields) const {
    if (!fields) throw DataError("phrase evaluated outside a field scope");
    PubSet out;
    for (Field f : *fields) {
      const auto& index = corpus.tokens(f);
      // (pub, value) -> positions where the current phrase prefix ends
      std::map<std::pair<PubIdx, std::uint32_t>, std::vector<std::uint32_t>> active;
      for (std::size_t ti = 0; ti < tokens.size(); ++ti) {
        std::map<std::pair<PubIdx, std::uint32_t>, std::vector<std::uint32_t>> hits;
        for_matching_tokens(index, tokens[ti], [&](const std::vector<Corpus::Posting>& ps) {
          for (const auto& p : ps) hits[{p.pub, p.value_idx}].push_back(p.pos);
        });
        // a wildcard token can hit several vocabulary words; order the positions
        for (auto& [key, positions] : hits) std::sort(positions.begin(), positions.end());
        if (ti == 0) {
          active = std::move(hits);
        } else {
          std::map<std::pair<PubIdx, std::uint32_t>, std::vector<std::uint32_t>> next;
          for (const auto& [key, prev_ends] : active) {
            auto it = hits.find(key);
            if (it == hits.end()) continue;
            std::vector<std::uint32_t> ends;
            for (std::uint32_t e : prev_ends) {
              if (std::binary_search(it->second.begin(), it->second.end(), e + 1)) {
                ends.push_back(e + 1);
              }
            }
            if (!ends.empty()) next.emplace(key, std::move(ends));
          }
          active = std::move(next);
        }
        if (active.empty()) break;
      }
      for (const auto& [key, ends] : active) out.push_back(key.first);
    }
    sort_unique(out);
    return out;
  }
};

bool passes_filters(const PublicationRecord& p, const EvalFilters& f) {
  if (f.year_min && p.year < *f.year_min) return false;
  if (f.year_max && p.year > *f.year_max) return false;
  if (!f.doc_types.empty() && !f.doc_types.contains(p.doc_type)) return false;
  return true;
}

}  // namespace

std::vector<PubIdx> evaluate(const QueryPtr& query, const Corpus& corpus,
                             const EvalFilters& filters) {
  Evaluator ev{corpus};
  PubSet matched = ev.eval(query, nullptr);
  PubSet out;
  out.reserve(matched.size());
  for (PubIdx i : matched) {
    if (passes_filters(corpus.pub(i), filters)) out.push_back(i);
  }
  return out;
}

std::vector<std::string> pub_ids_of(const std::vector<PubIdx>& pubs, const Corpus& corpus) {
  std::vector<std::string> ids;
  ids.reserve(pubs.size());
  for (PubIdx i : pubs) ids.push_back(corpus.pub(i).pub_id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::set<std::string> title_prefix_search(const JournalRegistry& registry,
                                          std::string_view pattern,
                                          const std::set<JournalStatus>& statuses) {
  std::string pat = to_lower(pattern);
  std::set<std::string> out;
  for (const auto& r : registry.records()) {
    if (!statuses.contains(r.status)) continue;
    auto title_matches = [&](const std::string& title) {
      for (const auto& tok : tokenize(title)) {
        if (wildcard_match(pat, tok)) return true;
      }
      return false;
    };
    if (title_matches(r.canonical_title)) {
      out.insert(r.journal_id);
      continue;
    }
    for (const auto& a : r.aliases) {
      if (title_matches(a)) {
        out.insert(r.journal_id);
        break;
      }
    }
  }
  return out;
}

}  // namespace fieldscope
