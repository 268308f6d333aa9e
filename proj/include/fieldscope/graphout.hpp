#pragma once

#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "fieldscope/corpus.hpp"
#include "fieldscope/evalkit.hpp"

namespace fieldscope {

struct JournalGraph {
  struct Node {
    std::string label;
    long long citations_received = 0;
    std::map<Approach, long long> approach_pubs;
  };
  std::map<std::string, Node> nodes;
  // key normalized to (min, max) when undirected
  std::map<std::pair<std::string, std::string>, long long> edges;
  bool directed = false;
};

struct GraphOptions {
  bool directed = false;
  bool self_loops = false;
};

// One unit of weight per reference from a publication's journal to a cited
// journal, both restricted to the node universe. Approach journal sets, when
// given, become per-node publication-count overlays.
JournalGraph build_journal_graph(const std::vector<PubIdx>& pubs, const Corpus& corpus,
                                 const JournalRegistry& registry,
                                 const std::set<std::string>& node_universe,
                                 const std::map<Approach, std::set<std::string>>& approach_sets = {},
                                 const GraphOptions& options = {});

// TSV: source_id <TAB> target_id <TAB> weight, sorted.
void export_edge_list(const JournalGraph& graph, std::ostream& out);

// Two sections: "*nodes" CSV then "*edges" CSV; nodes carry label, citation
// total, and a1_pubs,a2_pubs,a3_pubs overlay columns.
void export_labeled_network(const JournalGraph& graph, std::ostream& out);

}  // namespace fieldscope
