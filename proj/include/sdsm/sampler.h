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

#ifndef SDSM_SAMPLER_H_
#define SDSM_SAMPLER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdsm/citation_graph.h"
#include "sdsm/corpus.h"
#include "sdsm/encoder.h"
#include "sdsm/matrix.h"

namespace sdsm {

struct TripletExample {
  uint32_t anchor = 0;
  uint32_t positive = 0;
  std::optional<uint32_t> hard_negative;

  bool operator==(const TripletExample& o) const {
    return anchor == o.anchor && positive == o.positive &&
           hard_negative == o.hard_negative;
  }
};

// Two snippets of the same paper; positives for contrastive pretraining.
struct SnippetPair {
  std::string a_text;
  std::string b_text;
  uint32_t source_paper = 0;
};

// Draws `count` snippet pairs. Each pair is two disjoint contiguous token
// spans from one field (abstract or content) of one paper, lengths in
// [min_len, max_len]. Papers with no field of at least 2*min_len tokens are
// skipped. Throws when no paper is eligible.
std::vector<SnippetPair> sample_snippet_pairs(const Corpus& corpus,
                                              size_t count,
                                              uint32_t min_len,
                                              uint32_t max_len,
                                              uint64_t seed);

// For each positive (A,B): hard-negative candidates are citations of B
// that A does not cite, minus {A,B}. Up to per_anchor triplets with
// distinct negatives per pair; a pair with no candidate yields one triplet
// with an absent negative.
std::vector<TripletExample> sample_specter_triplets(
    const RelationPairSet& pairset, const CitationGraph& graph,
    uint32_t per_anchor, uint64_t seed);

struct ScinclResult {
  std::vector<TripletExample> triplets;
  std::vector<std::string> warnings;
};

// Neighborhood-rank sampling over a node-embedding table: per anchor the
// pool is ranked by descending dot product (self excluded, rank 1 nearest,
// ties by ascending ordinal); positives come from ranks [i, i+n] and
// negatives from ranks [k, k+n], both inclusive. Windows are clipped to
// the pool with a warning when k+n exceeds it.
ScinclResult sample_scincl(const Matrix& embeddings, uint32_t i, uint32_t k,
                           uint32_t n, uint32_t per_anchor, uint64_t seed);

// Positive pairs as negative-free triplets (for plain in-batch training).
std::vector<TripletExample> triplets_from_pairs(const RelationPairSet& set);

// Packs triplets into batches of exactly n (seeded shuffle, remainder
// dropped). Texts come from each paper's "{title}. {abstract}". Within a
// batch no ordinal repeats on the right side and no known positive pair
// (any anchor-positive pair of the input, either orientation) sits off the
// diagonal; colliding triplets are deferred to later batches. Hard
// negatives are appended as extra right-side columns. Throws when fewer
// than n triplets exist.
std::vector<Batch> make_batches(const std::vector<TripletExample>& triplets,
                                const Corpus& corpus, size_t n,
                                uint64_t seed);

// Same packing idea for the hinge loss: only triplets with a hard negative
// are used, in batches of exactly n.
std::vector<TripletTextBatch> make_triplet_batches(
    const std::vector<TripletExample>& triplets, const Corpus& corpus,
    size_t n, uint64_t seed);

// Snippet pairs into contrastive batches; one paper appears at most once
// per batch (snippets of the same paper are positives by construction).
std::vector<Batch> make_snippet_batches(const std::vector<SnippetPair>& pairs,
                                        size_t n, uint64_t seed);

void save_triplets(const std::vector<TripletExample>& triplets,
                   const std::string& path);
std::vector<TripletExample> load_triplets(const std::string& path);

// Three-column (anchor_id, positive_id, negative_id or "-") audit text.
void export_triplets_text(const std::vector<TripletExample>& triplets,
                          const Corpus& corpus, const std::string& path);

}  // namespace sdsm

#endif  // SDSM_SAMPLER_H_
