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

#ifndef SDSM_CONFIG_H_
#define SDSM_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "sdsm/citation_graph.h"
#include "sdsm/encoder.h"
#include "sdsm/enrich.h"
#include "sdsm/splitter.h"

namespace sdsm {

// One of the eleven pair-selection strategies: DC, CC, BC alone, or two or
// three of them combined by union or intersection.
struct StrategySpec {
  std::vector<RelationKind> kinds;  // distinct, in DC < CC < BC order
  CombineMode mode = CombineMode::kUnion;

  std::string name() const;  // "DC∪CC"
  std::string slug() const;  // "dc-cc-union", for file names
};

// Accepts "DC", "DC∪CC", "DC∩CC∩BC" and the ASCII aliases "+" (union) and
// "&" (intersection). Throws std::runtime_error naming the defect.
StrategySpec parse_strategy(const std::string& text);

struct PipelineConfig {
  // [paths]
  std::string corpus_path;
  std::string edges_path;
  std::string workdir = "work";

  // [split]
  SplitSpec split;

  // [mine]
  StrategySpec strategy = {{RelationKind::kDC}, CombineMode::kUnion};
  uint32_t max_out_degree = 200;
  uint32_t max_in_degree = 200;

  // [encoder]
  EncoderConfig encoder;

  // [train]
  LossConfig loss;
  size_t batch_size = 64;
  uint32_t epochs = 20;
  double base_lr = 1e-2;
  uint64_t warmup_steps = 100;
  uint64_t dev_every = 50;
  bool init_from_pretrained = false;
  enum class Negatives { kNone, kSpecter, kScincl };
  Negatives negatives = Negatives::kNone;
  uint32_t negatives_per_anchor = 1;

  // [pretrain]
  bool pretrain_enabled = false;
  size_t pretrain_pairs = 2048;
  uint32_t snippet_min_len = 10;
  uint32_t snippet_max_len = 40;
  uint32_t pretrain_epochs = 2;

  // [scincl]
  uint32_t scincl_i = 20;
  uint32_t scincl_k = 2000;
  uint32_t scincl_n = 5;

  // [graph-embed]
  uint32_t node_dim = 64;
  uint32_t node_epochs = 30;
  uint32_t node_negatives = 4;
  double node_lr = 0.1;

  // [enrich]
  bool enrich_enabled = false;
  SummarizerConfig summarizer;

  // [evaluate]
  Split eval_split = Split::kIdt;
  bool eval_use_enriched = true;

  // [run]
  uint64_t seed = 0;
};

// Parses the INI-style config. Unknown sections or keys, bad values, and
// unparsable strategies raise std::runtime_error with "<name>:<line>: ..."
// diagnostics. parse_config_file reads from disk first.
PipelineConfig parse_config_text(const std::string& text,
                                 const std::string& name);
PipelineConfig parse_config_file(const std::string& path);

// Existence checks for the input paths (corpus, edges). Separate from
// parsing so gen-corpus can run against a config whose inputs it creates.
void validate_inputs(const PipelineConfig& config);

}  // namespace sdsm

#endif  // SDSM_CONFIG_H_
