#include "fieldscope/evalkit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fieldscope {

std::string to_string(Approach a) {
  switch (a) {
    case Approach::a0: return "a0";
    case Approach::a1: return "a1";
    case Approach::a2: return "a2";
    case Approach::a3: return "a3";
  }
  return "a0";
}

Approach approach_from(std::string_view s) {
  if (s == "a0" || s == "A0") return Approach::a0;
  if (s == "a1" || s == "A1") return Approach::a1;
  if (s == "a2" || s == "A2") return Approach::a2;
  if (s == "a3" || s == "A3") return Approach::a3;
  throw DataError("unknown approach: " + std::string(s));
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  cells.push_back(std::move(cur));
  return cells;
}

int parse_int(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError(where + ": expected an integer, got '" + s + "'");
  }
}

}  // namespace

ScopeRatings ScopeRatings::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open ratings file: " + file.string());
  ScopeRatings out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.starts_with("//")) continue;
    if (lineno == 1 && line.starts_with("journal_id")) continue;
    auto cells = split_csv_line(line);
    if (cells.size() < 2) {
      throw DataError(file.string() + ":" + std::to_string(lineno) + ": expected two columns");
    }
    double r = std::stod(cells[1]);
    if (r != 0.0 && r != 0.5 && r != 1.0) {
      throw DataError(file.string() + ":" + std::to_string(lineno) +
                      ": rating must be one of {1, 0.5, 0}");
    }
    out.rating[cells[0]] = r;
  }
  return out;
}

ScopePrecision precision_by_scope(const std::set<std::string>& journals,
                                  const ScopeRatings& ratings) {
  ScopePrecision out;
  std::vector<std::string> missing;
  for (const auto& id : journals) {
    auto it = ratings.rating.find(id);
    if (it == ratings.rating.end()) {
      missing.push_back(id);
      continue;
    }
    if (it->second == 1.0) ++out.counts.high;
    else if (it->second == 0.5) ++out.counts.medium;
    else ++out.counts.low;
  }
  if (!missing.empty()) {
    std::string msg = "unrated journals:";
    for (const auto& id : missing) msg += " " + id;
    throw DataError(msg);
  }
  if (!journals.empty()) {
    out.precision = (out.counts.high + 0.5 * out.counts.medium) /
                    static_cast<double>(journals.size());
  }
  return out;
}

double recall_journals(const std::set<std::string>& journals, const ScopeRatings& ratings,
                       int total_recall) {
  if (total_recall <= 0) throw DataError("total_recall must be positive");
  ScopePrecision p = precision_by_scope(journals, ratings);
  return static_cast<double>(p.counts.high + p.counts.medium) / total_recall;
}

BallotFile load_ballots(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open ballot file: " + file.string());
  BallotFile out;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.starts_with("//")) continue;
    auto cells = split_csv_line(line);
    std::string where = file.string() + ":" + std::to_string(lineno);
    if (!header_seen) {
      header_seen = true;
      if (cells.size() >= 6 && cells[2] == "rater_id") {
        out.rater_level = true;
      } else if (cells.size() >= 5 && cells[2] == "relevant") {
        out.rater_level = false;
      } else {
        throw DataError(where + ": unrecognized ballot header");
      }
      continue;
    }
    if (out.rater_level) {
      if (cells.size() < 6) throw DataError(where + ": expected six columns");
      RaterVote v;
      v.pub_id = cells[0];
      v.approach = approach_from(cells[1]);
      v.rater_id = cells[2];
      v.field = cells[3];
      v.subfield = cells[4];
      const std::string& raw = cells[5];
      if (raw == "1" || raw == "relevant") v.vote = 1;
      else if (raw == "0" || raw == "not_relevant") v.vote = 0;
      else if (raw == "na" || raw == "no_answer" || raw.empty()) v.vote = -1;
      else throw DataError(where + ": vote must be 1, 0, or na");
      out.votes.push_back(std::move(v));
    } else {
      if (cells.size() < 5) throw DataError(where + ": expected five columns");
      RelevanceBallot b;
      b.pub_id = cells[0];
      b.approach = approach_from(cells[1]);
      b.relevant = parse_int(cells[2], where);
      b.not_relevant = parse_int(cells[3], where);
      b.no_answer = parse_int(cells[4], where);
      if (b.relevant < 0 || b.not_relevant < 0 || b.no_answer < 0) {
        throw DataError(where + ": counts must be non-negative");
      }
      out.ballots.push_back(std::move(b));
    }
  }
  if (out.rater_level) out.ballots = aggregate_votes(out.votes);
  return out;
}

std::vector<RelevanceBallot> aggregate_votes(const std::vector<RaterVote>& votes) {
  std::map<std::pair<std::string, Approach>, RelevanceBallot> agg;
  std::vector<std::pair<std::string, Approach>> order;
  for (const auto& v : votes) {
    auto key = std::make_pair(v.pub_id, v.approach);
    auto [it, fresh] = agg.try_emplace(key);
    if (fresh) {
      it->second.pub_id = v.pub_id;
      it->second.approach = v.approach;
      order.push_back(key);
    }
    if (v.vote == 1) ++it->second.relevant;
    else if (v.vote == 0) ++it->second.not_relevant;
    else ++it->second.no_answer;
  }
  std::vector<RelevanceBallot> out;
  out.reserve(order.size());
  for (const auto& key : order) out.push_back(agg.at(key));
  return out;
}

double item_precision(const RelevanceBallot& ballot) {
  int answered = ballot.relevant + ballot.not_relevant;
  if (answered < 1) {
    throw DataError("ballot '" + ballot.pub_id + "' has no answered votes");
  }
  return static_cast<double>(ballot.relevant) / answered;
}

double approach_precision(const std::vector<RelevanceBallot>& ballots) {
  if (ballots.empty()) throw DataError("approach_precision needs at least one ballot");
  Approach a = ballots.front().approach;
  double sum = 0.0;
  for (const auto& b : ballots) {
    if (b.approach != a) {
      throw DataError("mixed approaches in one precision computation (" + to_string(a) +
                      " vs " + to_string(b.approach) + ")");
    }
    sum += item_precision(b);
  }
  return sum / static_cast<double>(ballots.size());
}

std::map<std::string, std::set<Approach>> stratum_membership(
    const std::vector<RelevanceBallot>& ballots) {
  std::map<std::string, std::set<Approach>> out;
  for (const auto& b : ballots) out[b.pub_id].insert(b.approach);
  return out;
}

std::map<Approach, double> publication_recall(
    const std::vector<RelevanceBallot>& ballots,
    const std::map<std::string, std::set<Approach>>& membership, double relevance_threshold) {
  if (relevance_threshold <= 0.0 || relevance_threshold > 1.0) {
    throw DataError("relevance threshold must be in (0, 1]");
  }
  std::vector<const RelevanceBallot*> relevant;
  for (const auto& b : ballots) {
    if (item_precision(b) >= relevance_threshold) relevant.push_back(&b);
  }
  if (relevant.empty()) throw DataError("no items reach the relevance threshold; recall undefined");
  std::map<Approach, double> out;
  for (Approach a : {Approach::a0, Approach::a1, Approach::a2, Approach::a3}) {
    long long hit = 0;
    for (const auto* b : relevant) {
      auto it = membership.find(b->pub_id);
      if (it != membership.end() && it->second.contains(a)) ++hit;
    }
    out[a] = static_cast<double>(hit) / static_cast<double>(relevant.size());
  }
  return out;
}

std::string landis_koch_band(double kappa) {
  if (kappa < 0.0) return "poor";
  if (kappa <= 0.20) return "slight";
  if (kappa <= 0.40) return "fair";
  if (kappa <= 0.60) return "moderate";
  if (kappa <= 0.80) return "substantial";
  return "almost perfect";
}

KappaReport fleiss_kappa(const RaterMatrix& matrix) {
  const auto& m = matrix.counts;
  if (m.size() < 2) throw DataError("fleiss_kappa needs at least 2 items");
  std::size_t categories = m.front().size();
  if (categories < 2) throw DataError("fleiss_kappa needs at least 2 categories");

  double sum_pi = 0.0;
  std::vector<double> col(categories, 0.0);
  double total_votes = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != categories) throw DataError("ragged rater matrix");
    long long ni = 0;
    for (std::size_t j = 0; j < categories; ++j) {
      if (m[i][j] < 0) throw DataError("negative vote count");
      ni += m[i][j];
      col[j] += static_cast<double>(m[i][j]);
    }
    if (ni < 2) {
      throw DataError("item " + std::to_string(i + 1) + " has fewer than 2 votes");
    }
    total_votes += static_cast<double>(ni);
    long long agree = 0;
    for (std::size_t j = 0; j < categories; ++j) agree += m[i][j] * (m[i][j] - 1);
    sum_pi += static_cast<double>(agree) / (static_cast<double>(ni) * (ni - 1));
  }

  KappaReport out;
  out.observed_agreement = sum_pi / static_cast<double>(m.size());
  double pe = 0.0;
  for (std::size_t j = 0; j < categories; ++j) {
    double pj = col[j] / total_votes;
    pe += pj * pj;
  }
  out.expected_agreement = pe;
  if (pe >= 1.0) {
    // every vote in one category: agreement is trivially perfect
    out.kappa = 1.0;
    out.degenerate = true;
  } else {
    out.kappa = (out.observed_agreement - pe) / (1.0 - pe);
  }
  out.band = landis_koch_band(out.kappa);
  return out;
}

RaterMatrix ballots_to_matrix(const std::vector<RelevanceBallot>& ballots) {
  RaterMatrix out;
  out.counts.reserve(ballots.size());
  for (const auto& b : ballots) {
    out.counts.push_back({b.relevant, b.not_relevant});
  }
  return out;
}

std::map<std::string, std::map<Approach, double>> precision_by_background(
    const std::vector<RaterVote>& votes, bool by_subfield) {
  std::map<std::string, std::vector<RaterVote>> groups;
  for (const auto& v : votes) {
    groups[by_subfield ? v.subfield : v.field].push_back(v);
  }
  std::map<std::string, std::map<Approach, double>> out;
  for (const auto& [group, group_votes] : groups) {
    auto ballots = aggregate_votes(group_votes);
    std::map<Approach, std::vector<RelevanceBallot>> by_approach;
    for (const auto& b : ballots) {
      if (b.relevant + b.not_relevant == 0) continue;  // group answered nothing for this item
      by_approach[b.approach].push_back(b);
    }
    for (const auto& [a, bs] : by_approach) {
      out[group][a] = approach_precision(bs);
    }
  }
  return out;
}

}  // namespace fieldscope
