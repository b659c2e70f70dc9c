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

#include "sdsm/citation_graph.h"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include "sdsm/rng.h"
#include "sdsm/store.h"

namespace sdsm {

bool CitationGraph::has_edge(uint32_t u, uint32_t v) const {
  const auto& adj = out_adj[u];
  return std::binary_search(adj.begin(), adj.end(), v);
}

size_t CitationGraph::edge_count() const {
  size_t total = 0;
  for (const auto& adj : out_adj) total += adj.size();
  return total;
}

CitationGraph CitationGraph::transposed() const {
  CitationGraph t;
  t.n = n;
  t.out_adj = in_adj;
  t.in_adj = out_adj;
  return t;
}

namespace {

CitationGraph from_clean_edges(size_t n,
                               std::vector<std::pair<uint32_t, uint32_t>> e) {
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  CitationGraph g;
  g.n = n;
  g.out_adj.resize(n);
  g.in_adj.resize(n);
  for (auto [u, v] : e) {
    g.out_adj[u].push_back(v);
    g.in_adj[v].push_back(u);
  }
  // out_adj is sorted by construction; in_adj needs its own pass.
  for (auto& adj : g.in_adj) std::sort(adj.begin(), adj.end());
  return g;
}

}  // namespace

GraphBuildResult build_graph(const Corpus& corpus,
                             const std::string& edges_path) {
  std::ifstream in(edges_path);
  if (!in) throw std::runtime_error("cannot open edge file: " + edges_path);

  GraphBuildResult result;
  GraphBuildStats& stats = result.stats;
  std::vector<std::pair<uint32_t, uint32_t>> edges;

  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    stats.rows_read++;
    size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string::npos) {
      stats.skipped_malformed++;
      continue;
    }
    size_t u = corpus.find(line.substr(0, tab));
    size_t v = corpus.find(line.substr(tab + 1));
    if (u == Corpus::kNotFound || v == Corpus::kNotFound) {
      stats.dropped_unknown_endpoint++;
      continue;
    }
    if (u == v) {
      stats.dropped_self_loops++;
      continue;
    }
    edges.emplace_back(uint32_t(u), uint32_t(v));
  }

  size_t before = edges.size();
  result.graph = from_clean_edges(corpus.size(), std::move(edges));
  stats.dropped_duplicates = before - result.graph.edge_count();
  return result;
}

CitationGraph graph_from_edges(
    size_t n, const std::vector<std::pair<uint32_t, uint32_t>>& edges) {
  std::vector<std::pair<uint32_t, uint32_t>> clean;
  clean.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u != v && u < n && v < n) clean.emplace_back(u, v);
  }
  return from_clean_edges(n, std::move(clean));
}

RelationPairSet mine_dc(const CitationGraph& graph) {
  RelationPairSet set;
  set.kind = RelationKind::kDC;
  set.directed = true;
  for (uint32_t u = 0; u < graph.n; ++u) {
    for (uint32_t v : graph.out_adj[u]) set.pairs.push_back({u, v, 1});
  }
  return set;
}

namespace {

// Shared CC/BC kernel: pairs within each adjacency list of `lists`, with
// lists longer than the cap skipped. Output sorted by (a, b).
std::vector<RelationPair> pairs_within_lists(
    const std::vector<std::vector<uint32_t>>& lists, uint32_t max_degree,
    MineStats* stats) {
  std::unordered_map<uint64_t, uint32_t> counts;
  for (const auto& adj : lists) {
    if (adj.size() > max_degree) {
      if (stats) stats->skipped_high_degree++;
      continue;
    }
    for (size_t i = 0; i < adj.size(); ++i) {
      for (size_t j = i + 1; j < adj.size(); ++j) {
        // Lists are sorted, so adj[i] < adj[j] is already canonical.
        counts[(uint64_t(adj[i]) << 32) | adj[j]]++;
      }
    }
  }
  std::vector<RelationPair> pairs;
  pairs.reserve(counts.size());
  for (auto [key, count] : counts) {
    pairs.push_back({uint32_t(key >> 32), uint32_t(key), count});
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const RelationPair& x, const RelationPair& y) {
              return x.a != y.a ? x.a < y.a : x.b < y.b;
            });
  return pairs;
}

}  // namespace

RelationPairSet mine_cc(const CitationGraph& graph, uint32_t max_out_degree,
                        MineStats* stats) {
  RelationPairSet set;
  set.kind = RelationKind::kCC;
  set.directed = false;
  // Papers cited together by w form CC pairs; w's citations are out_adj[w].
  set.pairs = pairs_within_lists(graph.out_adj, max_out_degree, stats);
  return set;
}

RelationPairSet mine_bc(const CitationGraph& graph, uint32_t max_in_degree,
                        MineStats* stats) {
  RelationPairSet set;
  set.kind = RelationKind::kBC;
  set.directed = false;
  // Papers citing w together form BC pairs; w's citers are in_adj[w].
  set.pairs = pairs_within_lists(graph.in_adj, max_in_degree, stats);
  return set;
}

RelationPairSet canonicalize_undirected(const RelationPairSet& set) {
  if (!set.directed) return set;
  std::unordered_map<uint64_t, uint32_t> counts;
  for (const RelationPair& p : set.pairs) {
    uint32_t a = std::min(p.a, p.b);
    uint32_t b = std::max(p.a, p.b);
    counts[(uint64_t(a) << 32) | b] += p.count;
  }
  RelationPairSet out;
  out.kind = set.kind;
  out.directed = false;
  out.pairs.reserve(counts.size());
  for (auto [key, count] : counts) {
    out.pairs.push_back({uint32_t(key >> 32), uint32_t(key), count});
  }
  std::sort(out.pairs.begin(), out.pairs.end(),
            [](const RelationPair& x, const RelationPair& y) {
              return x.a != y.a ? x.a < y.a : x.b < y.b;
            });
  return out;
}

RelationPairSet combine(const std::vector<RelationPairSet>& sets,
                        CombineMode mode, uint64_t seed) {
  if (sets.size() < 2) {
    throw std::runtime_error("combine needs at least two pair sets");
  }
  std::vector<RelationPairSet> canon;
  canon.reserve(sets.size());
  for (const RelationPairSet& s : sets) {
    canon.push_back(canonicalize_undirected(s));
  }

  RelationPairSet out;
  out.directed = false;

  if (mode == CombineMode::kUnion) {
    out.kind = RelationKind::kUnion;
    size_t smallest = canon[0].pairs.size();
    for (const RelationPairSet& s : canon) {
      smallest = std::min(smallest, s.pairs.size());
    }
    for (size_t idx = 0; idx < canon.size(); ++idx) {
      const auto& pairs = canon[idx].pairs;
      if (pairs.size() == smallest) {
        out.pairs.insert(out.pairs.end(), pairs.begin(), pairs.end());
        continue;
      }
      Rng rng(mix_seed(seed, idx));
      for (size_t i : rng.sample_indices(pairs.size(), smallest)) {
        out.pairs.push_back(pairs[i]);
      }
    }
    return out;
  }

  out.kind = RelationKind::kIntersection;
  std::unordered_map<uint64_t, uint32_t> mins;
  for (const RelationPair& p : canon[0].pairs) {
    mins[(uint64_t(p.a) << 32) | p.b] = p.count;
  }
  for (size_t idx = 1; idx < canon.size(); ++idx) {
    std::unordered_map<uint64_t, uint32_t> next;
    for (const RelationPair& p : canon[idx].pairs) {
      auto it = mins.find((uint64_t(p.a) << 32) | p.b);
      if (it != mins.end()) {
        next[it->first] = std::min(it->second, p.count);
      }
    }
    mins = std::move(next);
  }
  out.pairs.reserve(mins.size());
  for (auto [key, count] : mins) {
    out.pairs.push_back({uint32_t(key >> 32), uint32_t(key), count});
  }
  std::sort(out.pairs.begin(), out.pairs.end(),
            [](const RelationPair& x, const RelationPair& y) {
              return x.a != y.a ? x.a < y.a : x.b < y.b;
            });
  return out;
}

void save_pairset(const RelationPairSet& set, const std::string& path) {
  BinaryWriter w(path);
  w.write_header(store::kPairSetFormat);
  w.write_u32(uint32_t(set.kind));
  w.write_u8(set.directed ? 1 : 0);
  w.write_u64(set.pairs.size());
  for (const RelationPair& p : set.pairs) {
    w.write_u32(p.a);
    w.write_u32(p.b);
    w.write_u32(p.count);
  }
  w.close();
}

RelationPairSet load_pairset(const std::string& path) {
  BinaryReader r(path);
  r.check_header(store::kPairSetFormat);
  RelationPairSet set;
  set.kind = RelationKind(r.read_u32());
  set.directed = r.read_u8() != 0;
  uint64_t n = r.read_u64();
  set.pairs.resize(n);
  for (RelationPair& p : set.pairs) {
    p.a = r.read_u32();
    p.b = r.read_u32();
    p.count = r.read_u32();
  }
  return set;
}

void save_graph(const CitationGraph& graph, const std::string& path) {
  BinaryWriter w(path);
  w.write_header(store::kGraphFormat);
  w.write_u64(graph.n);
  for (const std::vector<uint32_t>& adj : graph.out_adj) {
    w.write_u64(adj.size());
    for (uint32_t v : adj) w.write_u32(v);
  }
  w.close();
}

CitationGraph load_graph(const std::string& path) {
  BinaryReader r(path);
  r.check_header(store::kGraphFormat);
  CitationGraph g;
  g.n = r.read_u64();
  g.out_adj.resize(g.n);
  g.in_adj.resize(g.n);
  for (uint32_t u = 0; u < g.n; ++u) {
    std::vector<uint32_t>& adj = g.out_adj[u];
    adj.resize(r.read_u64());
    for (uint32_t& v : adj) {
      v = r.read_u32();
      if (v >= g.n) throw std::runtime_error("corrupt graph file: " + path);
      g.in_adj[v].push_back(u);
    }
  }
  // u ascends in the outer loop, so in_adj lists come out sorted.
  return g;
}

}  // namespace sdsm
