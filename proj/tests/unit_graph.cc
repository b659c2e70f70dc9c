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

#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "sdsm/citation_graph.h"
#include "sdsm/rng.h"
#include "sdsm/synth.h"
#include "oracles.h"
#include "testing.h"

using namespace sdsm;

namespace {

// Tiny corpus with ids "A", "B", ... for edge-file tests.
Corpus letter_corpus(int n) {
  Corpus c;
  Rng rng(1);
  for (int i = 0; i < n; ++i) {
    c.add(testing::make_paper(std::string(1, char('A' + i)), rng));
  }
  return c;
}

}  // namespace

TEST_CASE("build_graph keeps in-corpus edges and counts the rest") {
  testing::TempDir tmp("graph");
  Corpus c = letter_corpus(3);
  testing::write_file(tmp.file("e.tsv"),
                      "A\tB\n"
                      "B\tC\n"
                      "A\tA\n"         // self loop
                      "A\tZ\n"         // unknown endpoint
                      "A\tB\n"         // duplicate
                      "justonefield\n"  // malformed
                      "A\tB\tC\n");     // too many fields
  GraphBuildResult r = build_graph(c, tmp.file("e.tsv"));
  CHECK(r.stats.rows_read == 7);
  CHECK(r.stats.skipped_malformed == 2);
  CHECK(r.stats.dropped_unknown_endpoint == 1);
  CHECK(r.stats.dropped_self_loops == 1);
  CHECK(r.stats.dropped_duplicates == 1);
  CHECK(r.graph.edge_count() == 2);
  CHECK(r.graph.out_adj[0] == std::vector<uint32_t>{1});
  CHECK(r.graph.out_adj[1] == std::vector<uint32_t>{2});
  CHECK(r.graph.in_adj[2] == std::vector<uint32_t>{1});
  CHECK_THROWS_AS(build_graph(c, tmp.file("absent.tsv")),
                  std::runtime_error);
}

TEST_CASE("graph adjacency is mirrored, sorted and duplicate-free") {
  CitationGraph g = make_random_graph(120, 0.05, 3);
  size_t edges = 0;
  for (uint32_t u = 0; u < g.n; ++u) {
    CHECK(std::is_sorted(g.out_adj[u].begin(), g.out_adj[u].end()));
    CHECK(std::adjacent_find(g.out_adj[u].begin(), g.out_adj[u].end()) ==
          g.out_adj[u].end());
    CHECK(std::is_sorted(g.in_adj[u].begin(), g.in_adj[u].end()));
    for (uint32_t v : g.out_adj[u]) {
      CHECK(u != v);
      CHECK(std::binary_search(g.in_adj[v].begin(), g.in_adj[v].end(), u));
      edges++;
    }
  }
  CHECK(edges == g.edge_count());
  CHECK(edges > 0);
}

TEST_CASE("transposed reverses every edge") {
  CitationGraph g = make_random_graph(50, 0.1, 4);
  CitationGraph t = g.transposed();
  CHECK(t.n == g.n);
  CHECK(t.edge_count() == g.edge_count());
  for (uint32_t u = 0; u < g.n; ++u) {
    for (uint32_t v : g.out_adj[u]) CHECK(t.has_edge(v, u));
  }
}

TEST_CASE("random graph edge density tracks p") {
  CitationGraph g = make_random_graph(200, 0.05, 9);
  double expected = 0.05 * 200 * 199;
  CHECK(double(g.edge_count()) > expected * 0.8);
  CHECK(double(g.edge_count()) < expected * 1.2);
}

TEST_CASE("mine_dc lists one directed pair per edge") {
  SUBCASE("two-edge chain") {
    CitationGraph g = graph_from_edges(3, {{0, 1}, {1, 2}});
    RelationPairSet dc = mine_dc(g);
    CHECK(dc.directed);
    REQUIRE(dc.pairs.size() == 2);
    CHECK(dc.pairs[0] == RelationPair{0, 1, 1});
    CHECK(dc.pairs[1] == RelationPair{1, 2, 1});
  }
  SUBCASE("empty graph") {
    CitationGraph g = graph_from_edges(4, {});
    CHECK(mine_dc(g).pairs.empty());
  }
  SUBCASE("500-node fixture equals the edge set") {
    CitationGraph g = make_random_graph(500, 0.01, 17);
    RelationPairSet dc = mine_dc(g);
    CHECK(dc.pairs.size() == g.edge_count());
    for (const RelationPair& p : dc.pairs) {
      CHECK(g.has_edge(p.a, p.b));
      CHECK(p.count == 1);
    }
  }
}

TEST_CASE("mine_cc counts common citers") {
  SUBCASE("two citers of the same pair") {
    CitationGraph g = graph_from_edges(4, {{2, 0}, {2, 1}, {3, 0}, {3, 1}});
    RelationPairSet cc = mine_cc(g);
    CHECK_FALSE(cc.directed);
    REQUIRE(cc.pairs.size() == 1);
    CHECK(cc.pairs[0] == RelationPair{0, 1, 2});
  }
  SUBCASE("one citer of three papers yields three pairs") {
    CitationGraph g = graph_from_edges(4, {{3, 0}, {3, 1}, {3, 2}});
    RelationPairSet cc = mine_cc(g);
    REQUIRE(cc.pairs.size() == 3);
    for (const RelationPair& p : cc.pairs) {
      CHECK(p.count == 1);
      CHECK(p.a < p.b);
    }
  }
}

TEST_CASE("mine_bc counts common references") {
  SUBCASE("single shared reference") {
    CitationGraph g = graph_from_edges(3, {{0, 2}, {1, 2}});
    RelationPairSet bc = mine_bc(g);
    REQUIRE(bc.pairs.size() == 1);
    CHECK(bc.pairs[0] == RelationPair{0, 1, 1});
  }
  SUBCASE("two shared references") {
    CitationGraph g =
        graph_from_edges(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
    RelationPairSet bc = mine_bc(g);
    REQUIRE(bc.pairs.size() == 1);
    CHECK(bc.pairs[0] == RelationPair{0, 1, 2});
  }
}

TEST_CASE("mining matches the brute-force counts on random graphs") {
  for (uint64_t seed : {21, 22, 23}) {
    CitationGraph g = make_random_graph(200, 0.05, seed);
    CHECK(mine_dc(g).pairs == oracles::brute_dc(g));
    CHECK(mine_cc(g).pairs == oracles::brute_cc(g));
    CHECK(mine_bc(g).pairs == oracles::brute_bc(g));
  }
}

TEST_CASE("degree caps skip hub nodes in mining and in the oracle") {
  // Node 9 cites everyone (degree 9); with a cap of 4 it contributes no
  // CC pairs. Node 0 is cited by everyone, so BC skips it at the same cap.
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  for (uint32_t v = 0; v < 9; ++v) edges.push_back({9, v});
  for (uint32_t u = 1; u < 9; ++u) edges.push_back({u, 0});
  CitationGraph g = graph_from_edges(10, edges);

  MineStats cc_stats;
  RelationPairSet cc = mine_cc(g, 4, &cc_stats);
  CHECK(cc_stats.skipped_high_degree == 1);
  CHECK(cc.pairs == oracles::brute_cc(g, 4));

  MineStats bc_stats;
  RelationPairSet bc = mine_bc(g, 4, &bc_stats);
  CHECK(bc_stats.skipped_high_degree == 1);
  CHECK(bc.pairs == oracles::brute_bc(g, 4));

  // At a generous cap nothing is skipped.
  MineStats none;
  mine_cc(g, 200, &none);
  mine_bc(g, 200, &none);
  CHECK(none.skipped_high_degree == 0);
}

TEST_CASE("canonicalize_undirected folds mirrored directed pairs") {
  RelationPairSet dc;
  dc.kind = RelationKind::kDC;
  dc.directed = true;
  dc.pairs = {{1, 0, 1}, {0, 1, 1}, {2, 3, 1}};
  RelationPairSet canon = canonicalize_undirected(dc);
  CHECK_FALSE(canon.directed);
  REQUIRE(canon.pairs.size() == 2);
  CHECK(canon.pairs[0] == RelationPair{0, 1, 2});
  CHECK(canon.pairs[1] == RelationPair{2, 3, 1});

  RelationPairSet cc;
  cc.kind = RelationKind::kCC;
  cc.directed = false;
  cc.pairs = {{0, 1, 5}};
  CHECK(canonicalize_undirected(cc) == cc);
}

TEST_CASE("combine union balances inputs by down-sampling") {
  RelationPairSet big;
  big.kind = RelationKind::kCC;
  for (uint32_t i = 0; i < 10; ++i) big.pairs.push_back({i, i + 100, 1});
  RelationPairSet small;
  small.kind = RelationKind::kBC;
  for (uint32_t i = 0; i < 4; ++i) small.pairs.push_back({i, i + 200, 1});

  RelationPairSet u = combine({big, small}, CombineMode::kUnion, 5);
  CHECK(u.kind == RelationKind::kUnion);
  CHECK(u.pairs.size() == 8);
  size_t from_big = 0, from_small = 0;
  for (const RelationPair& p : u.pairs) {
    if (p.b >= 200) {
      from_small++;
    } else {
      from_big++;
    }
  }
  CHECK(from_big == 4);
  CHECK(from_small == 4);
  // Seed determinism.
  CHECK(combine({big, small}, CombineMode::kUnion, 5) == u);
}

TEST_CASE("combine intersection keeps shared pairs at the min count") {
  RelationPairSet x, y;
  x.kind = y.kind = RelationKind::kCC;
  x.pairs = {{0, 1, 3}, {2, 3, 1}};
  y.pairs = {{0, 1, 2}, {4, 5, 1}};
  RelationPairSet inter = combine({x, y}, CombineMode::kIntersection, 0);
  CHECK(inter.kind == RelationKind::kIntersection);
  REQUIRE(inter.pairs.size() == 1);
  CHECK(inter.pairs[0] == RelationPair{0, 1, 2});

  RelationPairSet a, b;
  a.kind = b.kind = RelationKind::kCC;
  a.pairs = {{0, 1, 1}};
  b.pairs = {{2, 3, 1}};
  CHECK(combine({a, b}, CombineMode::kIntersection, 0).pairs.empty());
}

TEST_CASE("combine canonicalizes directed inputs first") {
  // DC has A->B; CC pairs (A,B) via the two citers; their intersection
  // keeps (A,B) whichever direction the edge ran.
  CitationGraph g =
      graph_from_edges(4, {{2, 0}, {2, 1}, {3, 0}, {3, 1}, {1, 0}});
  RelationPairSet dc = mine_dc(g);
  RelationPairSet cc = mine_cc(g);
  RelationPairSet inter = combine({dc, cc}, CombineMode::kIntersection, 0);
  REQUIRE(inter.pairs.size() == 1);
  CHECK(inter.pairs[0].a == 0);
  CHECK(inter.pairs[0].b == 1);

  CHECK_THROWS_AS(combine({dc}, CombineMode::kUnion, 0),
                  std::runtime_error);
}

TEST_CASE("pair sets round-trip through the binary store") {
  testing::TempDir tmp("pairs");
  CitationGraph g = make_random_graph(80, 0.05, 6);
  for (const RelationPairSet& set : {mine_dc(g), mine_cc(g), mine_bc(g)}) {
    std::string path = tmp.file("s.bin");
    save_pairset(set, path);
    CHECK(load_pairset(path) == set);
  }
}

TEST_CASE("graphs round-trip through the binary store") {
  testing::TempDir tmp("gstore");
  CitationGraph g = make_random_graph(150, 0.04, 8);
  std::string path = tmp.file("g.bin");
  save_graph(g, path);
  CitationGraph back = load_graph(path);
  CHECK(back.n == g.n);
  CHECK(back.edge_count() == g.edge_count());
  bool adj_equal = back.out_adj == g.out_adj && back.in_adj == g.in_adj;
  CHECK(adj_equal);
}
