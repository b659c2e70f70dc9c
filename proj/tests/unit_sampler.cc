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

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sdsm/citation_graph.h"
#include "sdsm/sampler.h"
#include "sdsm/synth.h"
#include "oracles.h"
#include "testing.h"

using namespace sdsm;

namespace {

// Papers whose embedding text "w<i>. x<i>" identifies the ordinal, so
// batch contents can be mapped back to ordinals.
Corpus id_corpus(size_t n) {
  Corpus c;
  for (size_t i = 0; i < n; ++i) {
    Paper p;
    p.paper_id = "p" + std::to_string(i);
    p.title = "w" + std::to_string(i);
    p.abstract_text = "x" + std::to_string(i);
    p.language = "en";
    c.add(std::move(p));
  }
  return c;
}

uint32_t ordinal_of(const std::string& text) {
  // "w17. x17" -> 17.
  size_t dot = text.find('.');
  return uint32_t(std::stoul(text.substr(1, dot - 1)));
}

Corpus snippet_corpus(size_t papers, size_t words_per_abstract) {
  Corpus c;
  Rng rng(9);
  for (size_t i = 0; i < papers; ++i) {
    c.add(testing::make_paper("p" + std::to_string(i), rng,
                              words_per_abstract));
  }
  return c;
}

}  // namespace

TEST_CASE("snippet sampling skips papers too short for two spans") {
  Corpus c = snippet_corpus(1, 19);
  CHECK_THROWS_AS(sample_snippet_pairs(c, 5, 10, 20, 1),
                  std::runtime_error);
}

TEST_CASE("a paper with exactly 2*min_len tokens yields the unique split") {
  Corpus c;
  Paper p;
  p.paper_id = "p0";
  p.title = "t";
  p.abstract_text = "a b c d e f g h i j";  // 10 tokens
  p.language = "en";
  c.add(std::move(p));
  auto pairs = sample_snippet_pairs(c, 8, 5, 5, 2);
  REQUIRE(pairs.size() == 8);
  for (const SnippetPair& sp : pairs) {
    CHECK(sp.source_paper == 0);
    std::set<std::string> got = {sp.a_text, sp.b_text};
    CHECK(got == std::set<std::string>{"a b c d e", "f g h i j"});
  }
}

TEST_CASE("snippet pairs respect length bounds and provenance") {
  Corpus c = snippet_corpus(100, 60);
  Tokenizer tok;
  auto pairs = sample_snippet_pairs(c, 500, 10, 25, 3);
  REQUIRE(pairs.size() == 500);
  for (const SnippetPair& sp : pairs) {
    REQUIRE(sp.source_paper < c.size());
    const std::string& abstract = c.paper(sp.source_paper).abstract_text;
    for (const std::string* text : {&sp.a_text, &sp.b_text}) {
      size_t len = tok.count(*text);
      CHECK(len >= 10);
      CHECK(len <= 25);
      // Spans are contiguous slices of the source field.
      CHECK(abstract.find(*text) != std::string::npos);
    }
  }
  // Seed determinism.
  auto again = sample_snippet_pairs(c, 500, 10, 25, 3);
  CHECK(again.size() == pairs.size());
  bool same = true;
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].a_text != again[i].a_text ||
        pairs[i].b_text != again[i].b_text) {
      same = false;
    }
  }
  CHECK(same);
}

TEST_CASE("snippet batches never repeat a paper inside one batch") {
  Corpus c = snippet_corpus(30, 60);
  auto pairs = sample_snippet_pairs(c, 300, 10, 20, 4);
  // Track ordinals through the source_paper field before batching drops it:
  // identical batches can only mix papers, so texts are checked instead.
  std::map<std::string, uint32_t> text_owner;
  for (const SnippetPair& sp : pairs) {
    text_owner[sp.a_text] = sp.source_paper;
    text_owner[sp.b_text] = sp.source_paper;
  }
  auto batches = make_snippet_batches(pairs, 8, 5);
  CHECK(!batches.empty());
  for (const Batch& b : batches) {
    REQUIRE(b.left_texts.size() == 8);
    REQUIRE(b.right_texts.size() == 8);
    std::set<uint32_t> papers;
    for (const std::string& t : b.left_texts) {
      REQUIRE(text_owner.count(t) == 1);
      CHECK(papers.insert(text_owner[t]).second);
    }
  }
}

TEST_CASE("specter picks negatives the positive cites but the anchor does not") {
  SUBCASE("chain with no shortcut emits the transitive negative") {
    CitationGraph g = graph_from_edges(3, {{0, 1}, {1, 2}});
    RelationPairSet dc = mine_dc(g);
    RelationPairSet ab;
    ab.kind = RelationKind::kDC;
    ab.directed = true;
    ab.pairs = {{0, 1, 1}};
    auto trips = sample_specter_triplets(ab, g, 1, 0);
    REQUIRE(trips.size() == 1);
    CHECK(trips[0].anchor == 0);
    CHECK(trips[0].positive == 1);
    REQUIRE(trips[0].hard_negative.has_value());
    CHECK(*trips[0].hard_negative == 2);
  }
  SUBCASE("shortcut edge removes the candidate") {
    CitationGraph g = graph_from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    RelationPairSet ab;
    ab.kind = RelationKind::kDC;
    ab.directed = true;
    ab.pairs = {{0, 1, 1}};
    auto trips = sample_specter_triplets(ab, g, 1, 0);
    REQUIRE(trips.size() == 1);
    CHECK_FALSE(trips[0].hard_negative.has_value());
  }
}

TEST_CASE("specter negatives validate against brute-force candidates") {
  CitationGraph g = make_random_graph(120, 0.05, 71);
  RelationPairSet dc = mine_dc(g);
  auto trips = sample_specter_triplets(dc, g, 2, 72);
  CHECK(trips.size() >= dc.pairs.size());
  for (const TripletExample& t : trips) {
    CHECK(t.anchor != t.positive);
    CHECK(g.has_edge(t.anchor, t.positive));
    if (!t.hard_negative) continue;
    uint32_t neg = *t.hard_negative;
    CHECK(neg != t.anchor);
    CHECK(neg != t.positive);
    CHECK(g.has_edge(t.positive, neg));
    CHECK_FALSE(g.has_edge(t.anchor, neg));
  }
  // Distinct negatives per pair.
  std::map<std::pair<uint32_t, uint32_t>, std::set<uint32_t>> seen;
  for (const TripletExample& t : trips) {
    if (!t.hard_negative) continue;
    CHECK(seen[{t.anchor, t.positive}].insert(*t.hard_negative).second);
  }
}

TEST_CASE("scincl windows are inclusive rank ranges") {
  Matrix emb(10, 3);
  Rng rng(81);
  for (double& v : emb.data) v = rng.uniform_real();
  ScinclResult r = sample_scincl(emb, 1, 5, 1, 2, 82);
  CHECK(r.warnings.empty());
  CHECK(!r.triplets.empty());
  for (const TripletExample& t : r.triplets) {
    REQUIRE(t.hard_negative.has_value());
    size_t pos_rank = oracles::full_sort_rank(emb, t.anchor, t.positive);
    size_t neg_rank =
        oracles::full_sort_rank(emb, t.anchor, *t.hard_negative);
    CHECK(pos_rank >= 1);
    CHECK(pos_rank <= 2);
    CHECK(neg_rank >= 5);
    CHECK(neg_rank <= 6);
  }
}

TEST_CASE("scincl clips oversized windows with a warning") {
  Matrix emb(100, 3);
  Rng rng(83);
  for (double& v : emb.data) v = rng.uniform_real();
  ScinclResult r = sample_scincl(emb, 20, 2000, 5, 1, 84);
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("clipped") != std::string::npos);
  for (const TripletExample& t : r.triplets) {
    size_t neg_rank =
        oracles::full_sort_rank(emb, t.anchor, *t.hard_negative);
    CHECK(neg_rank <= 99);
  }
}

TEST_CASE("scincl rejects malformed windows") {
  Matrix emb(10, 2);
  CHECK_THROWS_AS(sample_scincl(emb, 0, 5, 1, 1, 0), std::runtime_error);
  CHECK_THROWS_AS(sample_scincl(emb, 4, 5, 1, 1, 0), std::runtime_error);
  CHECK_THROWS_AS(sample_scincl(emb, 1, 0, 1, 1, 0), std::runtime_error);
  Matrix empty(0, 2);
  CHECK_THROWS_AS(sample_scincl(empty, 1, 5, 1, 1, 0), std::runtime_error);
}

TEST_CASE("scincl positives stay in-cluster more often than negatives") {
  // Two planted clusters around orthogonal centers.
  size_t half = 300;
  Matrix emb(2 * half, 4);
  Rng rng(85);
  for (size_t i = 0; i < emb.rows; ++i) {
    double* row = emb.row(i);
    row[i < half ? 0 : 1] = 1.0;
    for (size_t j = 0; j < 4; ++j) {
      row[j] += 0.05 * (2.0 * rng.uniform_real() - 1.0);
    }
  }
  ScinclResult r = sample_scincl(emb, 1, 400, 5, 1, 86);
  REQUIRE(!r.triplets.empty());
  size_t pos_same = 0, neg_same = 0;
  for (const TripletExample& t : r.triplets) {
    bool anchor_a = t.anchor < half;
    if ((t.positive < half) == anchor_a) pos_same++;
    if ((*t.hard_negative < half) == anchor_a) neg_same++;
  }
  double pos_rate = double(pos_same) / double(r.triplets.size());
  double neg_rate = double(neg_same) / double(r.triplets.size());
  CHECK(pos_rate > neg_rate);
  CHECK(pos_rate > 0.9);
}

TEST_CASE("triplets_from_pairs copies pairs without negatives") {
  RelationPairSet set;
  set.pairs = {{3, 5, 2}, {1, 8, 1}};
  auto trips = triplets_from_pairs(set);
  REQUIRE(trips.size() == 2);
  CHECK(trips[0] == TripletExample{3, 5, std::nullopt});
  CHECK(trips[1] == TripletExample{1, 8, std::nullopt});
}

TEST_CASE("make_batches packs full batches and drops the remainder") {
  Corpus c = id_corpus(20);
  std::vector<TripletExample> trips;
  for (uint32_t i = 0; i < 10; ++i) {
    trips.push_back({i, i + 10, std::nullopt});
  }
  auto batches = make_batches(trips, c, 4, 7);
  REQUIRE(batches.size() == 2);
  for (const Batch& b : batches) {
    CHECK(b.left_texts.size() == 4);
    CHECK(b.right_texts.size() == 4);
  }
  CHECK_THROWS_AS(make_batches(trips, c, 11, 7), std::runtime_error);
  CHECK_THROWS_AS(make_batches(trips, c, 1, 7), std::runtime_error);
}

TEST_CASE("make_batches separates triplets sharing a positive") {
  Corpus c = id_corpus(12);
  std::vector<TripletExample> trips = {
      {0, 6, std::nullopt}, {1, 6, std::nullopt}, {2, 7, std::nullopt},
      {3, 8, std::nullopt}, {4, 9, std::nullopt}, {5, 10, std::nullopt},
  };
  auto batches = make_batches(trips, c, 3, 11);
  REQUIRE(!batches.empty());
  size_t placed = 0;
  for (const Batch& b : batches) {
    // No duplicate columns, so the two triplets sharing positive 6 never
    // land in one batch.
    std::set<uint32_t> right;
    for (const std::string& t : b.right_texts) {
      CHECK(right.insert(ordinal_of(t)).second);
    }
    CHECK(b.left_texts.size() == 3);
    placed += b.left_texts.size();
  }
  CHECK(placed >= 3);
  CHECK(placed % 3 == 0);
}

TEST_CASE("make_batches keeps known positives off the off-diagonal") {
  Corpus c = id_corpus(40);
  // Ring of pairs plus crossing pairs: plenty of collision chances.
  std::vector<TripletExample> trips;
  for (uint32_t i = 0; i < 20; ++i) {
    trips.push_back({i, (i + 1) % 20, std::nullopt});
  }
  std::set<std::pair<uint32_t, uint32_t>> positives;
  for (const TripletExample& t : trips) {
    positives.insert({std::min(t.anchor, t.positive),
                      std::max(t.anchor, t.positive)});
  }
  auto batches = make_batches(trips, c, 4, 13);
  REQUIRE(!batches.empty());
  for (const Batch& b : batches) {
    std::vector<uint32_t> left, right;
    for (const std::string& t : b.left_texts) left.push_back(ordinal_of(t));
    for (const std::string& t : b.right_texts) {
      right.push_back(ordinal_of(t));
    }
    for (size_t i = 0; i < left.size(); ++i) {
      for (size_t j = 0; j < right.size(); ++j) {
        if (i == j) continue;
        // No anchor may see its own ordinal or a known positive in
        // another column.
        CHECK(left[i] != right[j]);
        std::pair<uint32_t, uint32_t> key = {
            std::min(left[i], right[j]), std::max(left[i], right[j])};
        CHECK(positives.count(key) == 0);
      }
    }
  }
}

TEST_CASE("make_batches appends hard negatives as extra columns") {
  Corpus c = id_corpus(30);
  std::vector<TripletExample> trips = {
      {0, 10, 20}, {1, 11, std::nullopt}, {2, 12, 21}, {3, 13, std::nullopt},
  };
  auto batches = make_batches(trips, c, 4, 17);
  REQUIRE(batches.size() == 1);
  const Batch& b = batches[0];
  REQUIRE(b.left_texts.size() == 4);
  REQUIRE(b.right_texts.size() == 6);  // 4 positives + 2 negatives
  std::set<uint32_t> extras = {ordinal_of(b.right_texts[4]),
                               ordinal_of(b.right_texts[5])};
  CHECK(extras == std::set<uint32_t>{20, 21});
}

TEST_CASE("no right-side ordinal repeats across a 5000-triplet run") {
  Corpus c = id_corpus(2000);
  Rng rng(19);
  std::vector<TripletExample> trips;
  while (trips.size() < 5000) {
    uint32_t a = uint32_t(rng.uniform(2000));
    uint32_t b = uint32_t(rng.uniform(2000));
    if (a == b) continue;
    std::optional<uint32_t> neg;
    if (rng.uniform(4) == 0) {
      uint32_t nv = uint32_t(rng.uniform(2000));
      if (nv != a && nv != b) neg = nv;
    }
    trips.push_back({a, b, neg});
  }
  auto batches = make_batches(trips, c, 32, 23);
  CHECK(batches.size() > 100);
  for (const Batch& b : batches) {
    std::set<uint32_t> right;
    for (const std::string& t : b.right_texts) {
      CHECK(right.insert(ordinal_of(t)).second);
    }
  }
}

TEST_CASE("make_triplet_batches uses only hard-negative triplets") {
  Corpus c = id_corpus(30);
  std::vector<TripletExample> trips = {
      {0, 10, 20}, {1, 11, std::nullopt}, {2, 12, 21},
      {3, 13, 22}, {4, 14, std::nullopt}, {5, 15, 23},
  };
  auto batches = make_triplet_batches(trips, c, 2, 29);
  REQUIRE(batches.size() == 2);  // 4 usable triplets in batches of 2
  for (const TripletTextBatch& b : batches) {
    REQUIRE(b.anchors.size() == 2);
    REQUIRE(b.positives.size() == 2);
    REQUIRE(b.negatives.size() == 2);
    for (const std::string& t : b.negatives) {
      CHECK(ordinal_of(t) >= 20);
    }
  }
  CHECK_THROWS_AS(make_triplet_batches(trips, c, 5, 29),
                  std::runtime_error);
}

TEST_CASE("triplets round-trip through the store and export as text") {
  testing::TempDir tmp("trips");
  Corpus c = id_corpus(6);
  std::vector<TripletExample> trips = {{0, 1, 2}, {3, 4, std::nullopt}};
  save_triplets(trips, tmp.file("t.bin"));
  CHECK(load_triplets(tmp.file("t.bin")) == trips);

  export_triplets_text(trips, c, tmp.file("t.tsv"));
  CHECK(testing::read_file(tmp.file("t.tsv")) ==
        "p0\tp1\tp2\np3\tp4\t-\n");
}
