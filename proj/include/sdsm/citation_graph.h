// Copyright 2026 The sdsm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SDSM_CITATION_GRAPH_H_
#define SDSM_CITATION_GRAPH_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sdsm/corpus.h"

namespace sdsm {

// Directed citation graph over paper ordinals. Adjacency lists are sorted
// and duplicate-free; no self-loops.
struct CitationGraph {
  size_t n = 0;
  std::vector<std::vector<uint32_t>> out_adj;  // u cites out_adj[u]
  std::vector<std::vector<uint32_t>> in_adj;   // in_adj[v] cite v

  bool has_edge(uint32_t u, uint32_t v) const;
  size_t edge_count() const;
  size_t degree(uint32_t u) const {
    return out_adj[u].size() + in_adj[u].size();
  }
  // Same nodes, every edge reversed.
  CitationGraph transposed() const;
};

struct GraphBuildStats {
  uint64_t rows_read = 0;
  uint64_t skipped_malformed = 0;
  uint64_t dropped_unknown_endpoint = 0;
  uint64_t dropped_self_loops = 0;
  uint64_t dropped_duplicates = 0;
};

struct GraphBuildResult {
  CitationGraph graph;
  GraphBuildStats stats;
};

// Reads a tab-separated (citing_id, cited_id) edge file and keeps edges
// with both endpoints in the corpus. Throws std::runtime_error when the
// file cannot be read; malformed rows are counted, never fatal.
GraphBuildResult build_graph(const Corpus& corpus,
                             const std::string& edges_path);

// Builds a graph directly from ordinal edges (fixtures, tests). Self-loops
// and duplicates are silently dropped.
CitationGraph graph_from_edges(
    size_t n, const std::vector<std::pair<uint32_t, uint32_t>>& edges);

enum class RelationKind : uint32_t {
  kDC = 0,
  kCC = 1,
  kBC = 2,
  kUnion = 3,
  kIntersection = 4,
};

struct RelationPair {
  uint32_t a = 0;
  uint32_t b = 0;
  uint32_t count = 1;

  bool operator==(const RelationPair& o) const {
    return a == o.a && b == o.b && count == o.count;
  }
};

// For directed sets a cites b. Undirected sets keep a < b canonical order.
struct RelationPairSet {
  RelationKind kind = RelationKind::kDC;
  bool directed = false;
  std::vector<RelationPair> pairs;

  bool operator==(const RelationPairSet& o) const {
    return kind == o.kind && directed == o.directed && pairs == o.pairs;
  }
};

struct MineStats {
  uint64_t skipped_high_degree = 0;
};

// One directed pair per edge, count 1, ordered by (citing, cited).
RelationPairSet mine_dc(const CitationGraph& graph);

// Co-citation: count(a,b) = |common citers|. Citing papers with out-degree
// above the cap are skipped (hub blowup guard) and reported via stats.
RelationPairSet mine_cc(const CitationGraph& graph,
                        uint32_t max_out_degree = 200,
                        MineStats* stats = nullptr);

// Bibliographic coupling: count(a,b) = |common references|. Cited papers
// with in-degree above the cap are skipped.
RelationPairSet mine_bc(const CitationGraph& graph,
                        uint32_t max_in_degree = 200,
                        MineStats* stats = nullptr);

// Directed pairs folded to a < b; mirrored duplicates merge by summing
// counts. Undirected input is returned unchanged.
RelationPairSet canonicalize_undirected(const RelationPairSet& set);

enum class CombineMode { kUnion, kIntersection };

// Union: every input is down-sampled (seeded, without replacement) to the
// smallest input's size, then concatenated, so each relation type
// contributes equally. Intersection: pairs present in every input with
// count = min across inputs. Directed inputs are canonicalized first.
// Throws std::runtime_error on fewer than two inputs.
RelationPairSet combine(const std::vector<RelationPairSet>& sets,
                        CombineMode mode, uint64_t seed);

void save_pairset(const RelationPairSet& set, const std::string& path);
RelationPairSet load_pairset(const std::string& path);

void save_graph(const CitationGraph& graph, const std::string& path);
CitationGraph load_graph(const std::string& path);

}  // namespace sdsm

#endif  // SDSM_CITATION_GRAPH_H_
