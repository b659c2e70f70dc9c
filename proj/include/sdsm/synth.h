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

// Seeded synthetic fixtures: clustered multilingual corpora with citation
// edges, and plain random graphs. Used by tests and the gen-corpus command.

#ifndef SDSM_SYNTH_H_
#define SDSM_SYNTH_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sdsm/citation_graph.h"
#include "sdsm/corpus.h"

namespace sdsm {

struct LanguageShare {
  std::string code;
  double weight = 0.0;
};

struct ClusteredCorpusSpec {
  uint32_t topics = 20;
  uint32_t papers_per_topic = 50;
  // Paper i considers the `window` most recent papers of every topic as
  // citation candidates: same-topic candidates are cited with probability
  // intra_p, other-topic candidates with probability inter_p. Later papers
  // cite earlier ones only, so the graph is a DAG.
  double intra_p = 0.2;
  double inter_p = 0.002;
  uint32_t window = 6;
  std::vector<LanguageShare> languages;  // empty -> built-in six-language mix
  uint64_t seed = 0;
};

struct SynthCorpus {
  Corpus corpus;
  std::vector<std::pair<uint32_t, uint32_t>> edges;  // citing -> cited
  std::vector<uint32_t> topic_of;
};

SynthCorpus make_clustered_corpus(const ClusteredCorpusSpec& spec);

// G(n, p) digraph without self loops.
CitationGraph make_random_graph(size_t n, double p, uint64_t seed);

void write_corpus_jsonl(const Corpus& corpus, const std::string& path);
void write_edges_tsv(const Corpus& corpus,
                     const std::vector<std::pair<uint32_t, uint32_t>>& edges,
                     const std::string& path);

}  // namespace sdsm

#endif  // SDSM_SYNTH_H_
