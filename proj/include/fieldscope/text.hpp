#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fieldscope {

// Canonical key for journal title matching: case-fold, "&" -> "and",
// strip punctuation, collapse whitespace, drop a trailing subtitle after
// an en/em dash.
std::string normalize_title(std::string_view raw);

// Lowercase alphanumeric tokens; every other byte separates.
std::vector<std::string> tokenize(std::string_view text);

struct TokenAt {
  std::string token;
  std::size_t pos;  // ordinal within the value, 0-based
};
std::vector<TokenAt> tokenize_positions(std::string_view text);

// Glob match with '*' only (zero or more characters, any position).
// Both sides are expected to be already case-folded.
bool wildcard_match(std::string_view pattern, std::string_view token);

bool has_wildcard(std::string_view pattern);

std::string to_lower(std::string_view s);

// Slug for identifiers: lowercase alnum runs joined by '-'.
std::string slugify(std::string_view s);

// Half-up rounding for report display; internal math stays unrounded.
double round_half_up(double v, int decimals);

}  // namespace fieldscope
