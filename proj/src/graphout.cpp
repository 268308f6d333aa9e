#include "fieldscope/graphout.hpp"

#include <algorithm>

namespace fieldscope {

JournalGraph build_journal_graph(const std::vector<PubIdx>& pubs, const Corpus& corpus,
                                 const JournalRegistry& registry,
                                 const std::set<std::string>& node_universe,
                                 const std::map<Approach, std::set<std::string>>& approach_sets,
                                 const GraphOptions& options) {
  if (node_universe.empty()) throw DataError("graph node universe is empty");
  for (const auto& id : node_universe) {
    if (!registry.contains(id)) {
      throw DataError("universe journal '" + id + "' not present in the registry");
    }
  }

  JournalGraph g;
  g.directed = options.directed;
  for (const auto& id : node_universe) {
    g.nodes[id].label = registry.at(id).canonical_title;
  }

  for (PubIdx i : pubs) {
    const auto& p = corpus.pub(i);
    if (!node_universe.contains(p.journal_id)) continue;
    for (const auto& [approach, js] : approach_sets) {
      if (js.contains(p.journal_id)) ++g.nodes[p.journal_id].approach_pubs[approach];
    }
    for (const auto& cited : p.cited_journal_ids) {
      if (!node_universe.contains(cited)) continue;
      if (cited == p.journal_id && !options.self_loops) continue;
      auto key = std::make_pair(p.journal_id, cited);
      if (!options.directed && key.first > key.second) std::swap(key.first, key.second);
      ++g.edges[key];
      ++g.nodes[cited].citations_received;
    }
  }
  return g;
}

void export_edge_list(const JournalGraph& graph, std::ostream& out) {
  for (const auto& [key, weight] : graph.edges) {
    out << key.first << '\t' << key.second << '\t' << weight << '\n';
  }
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += "\"\"";
    else q.push_back(c);
  }
  q += "\"";
  return q;
}

}  // namespace

void export_labeled_network(const JournalGraph& graph, std::ostream& out) {
  out << "*nodes\n";
  out << "journal_id,label,citations_received,a1_pubs,a2_pubs,a3_pubs\n";
  auto overlay = [](const JournalGraph::Node& n, Approach a) {
    auto it = n.approach_pubs.find(a);
    return it == n.approach_pubs.end() ? 0LL : it->second;
  };
  for (const auto& [id, node] : graph.nodes) {
    out << id << ',' << csv_quote(node.label) << ',' << node.citations_received << ','
        << overlay(node, Approach::a1) << ',' << overlay(node, Approach::a2) << ','
        << overlay(node, Approach::a3) << '\n';
  }
  out << "*edges\n";
  out << "source_id,target_id,weight\n";
  for (const auto& [key, weight] : graph.edges) {
    out << key.first << ',' << key.second << ',' << weight << '\n';
  }
}

}  // namespace fieldscope
