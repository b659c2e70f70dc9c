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

#ifndef SDSM_SPLITTER_H_
#define SDSM_SPLITTER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "sdsm/citation_graph.h"
#include "sdsm/corpus.h"

namespace sdsm {

enum class Split : uint8_t {
  kTrain = 0,
  kIdt = 1,       // in-distribution test
  kOdt = 2,       // out-of-distribution test
  kExcluded = 3,
};

const char* split_name(Split s);

struct SplitSpec {
  uint32_t top_l = 30;       // number of head languages
  double idt_fraction = 0.1;  // of each head language's train+IDT portion
  // Head-language papers held out of train/IDT into ODT. The source data's
  // ODT also contains head-language papers, so the knob defaults on.
  double odt_tail_fraction = 0.05;
  uint64_t seed = 0;
};

struct SplitAssignment {
  std::vector<Split> split_of;  // indexed by paper ordinal

  size_t count(Split s) const;
};

struct SplitResult {
  SplitAssignment assignment;
  std::vector<std::string> warnings;
};

// Assigns every paper to exactly one of train/IDT/ODT/excluded:
//   (1) papers with no citation links are excluded;
//   (2) languages are ranked by paper count (ties by code) and the top_l
//       head languages split per-language into train/IDT at idt_fraction,
//       keeping the two language sets identical;
//   (3) papers in all other languages go to ODT;
//   (4) an odt_tail_fraction of each head language is held out to ODT
//       before the train/IDT split;
//   (5) English ODT papers survive only with an edge to a non-English ODT
//       paper.
// A head language too small to seat both train and IDT moves to ODT whole.
// Deterministic given spec.seed.
SplitResult split(const Corpus& corpus, const CitationGraph& graph,
                  const SplitSpec& spec);

// Pairs with both endpoints in target_split; for ODT, pairs between two
// English papers are dropped as well.
RelationPairSet split_pairs(const RelationPairSet& set,
                            const SplitAssignment& assignment,
                            Split target_split, const Corpus& corpus);

void save_assignment(const SplitAssignment& a, const std::string& path);
SplitAssignment load_assignment(const std::string& path);

// Two-column (paper_id, split) text for audit.
void export_assignment_text(const Corpus& corpus, const SplitAssignment& a,
                            const std::string& path);

}  // namespace sdsm

#endif  // SDSM_SPLITTER_H_
