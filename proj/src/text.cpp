#include "fieldscope/text.hpp"

#include <cctype>
#include <cmath>

namespace fieldscope {

namespace {

bool is_word_byte(unsigned char c) { return std::isalnum(c) != 0; }

// Positions of UTF-8 en dash / em dash sequences.
bool is_dash_at(std::string_view s, std::size_t i) {
  return i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xE2 &&
         static_cast<unsigned char>(s[i + 1]) == 0x80 &&
         (static_cast<unsigned char>(s[i + 2]) == 0x93 ||
          static_cast<unsigned char>(s[i + 2]) == 0x94);
}

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) out.push_back(static_cast<char>(std::tolower(c)));
  return out;
}

std::string normalize_title(std::string_view raw) {
  // Trailing subtitle after an en/em dash is dropped; ASCII hyphens are
  // ordinary punctuation (journals routinely hyphenate their own names).
  std::string head;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (is_dash_at(raw, i)) break;
    head.push_back(raw[i]);
  }

  std::string out;
  out.reserve(head.size());
  auto push_word_gap = [&out]() {
    if (!out.empty() && out.back() != ' ') out.push_back(' ');
  };
  for (std::size_t i = 0; i < head.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(head[i]);
    if (is_word_byte(c)) {
      out.push_back(static_cast<char>(std::tolower(c)));
    } else if (c == '&') {
      push_word_gap();
      out += "and";
      out.push_back(' ');
    } else {
      push_word_gap();
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : text) {
    if (is_word_byte(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::vector<TokenAt> tokenize_positions(std::string_view text) {
  std::vector<TokenAt> out;
  std::string cur;
  for (unsigned char c : text) {
    if (is_word_byte(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back({std::move(cur), out.size()});
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back({std::move(cur), out.size()});
  return out;
}

bool has_wildcard(std::string_view pattern) {
  return pattern.find('*') != std::string_view::npos;
}

bool wildcard_match(std::string_view pattern, std::string_view token) {
  // Iterative glob with single-star backtracking.
  std::size_t p = 0, t = 0;
  std::size_t star = std::string_view::npos, mark = 0;
  while (t < token.size()) {
    if (p < pattern.size() && (pattern[p] == token[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

std::string slugify(std::string_view s) {
  std::string out;
  bool gap = false;
  for (unsigned char c : s) {
    if (std::isalnum(c)) {
      if (gap && !out.empty()) out.push_back('-');
      gap = false;
      out.push_back(static_cast<char>(std::tolower(c)));
    } else {
      gap = true;
    }
  }
  return out;
}

double round_half_up(double v, int decimals) {
  double scale = std::pow(10.0, decimals);
  return std::floor(v * scale + 0.5) / scale;
}

}  // namespace fieldscope
