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

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sdsm/config.h"
#include "sdsm/pipeline.h"
#include "sdsm/synth.h"

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<uint64_t> seed;
  std::optional<std::string> workdir;
};

void add_common(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--config", flags->config_path, "pipeline config file")
      ->required();
  cmd->add_option("--seed", flags->seed, "override [run] seed");
  cmd->add_option("--workdir", flags->workdir, "override [paths] workdir");
}

int run_pipeline_stage(const CommonFlags& flags, sdsm::Stage stage) {
  sdsm::PipelineConfig config = sdsm::parse_config_file(flags.config_path);
  if (flags.seed) config.seed = *flags.seed;
  if (flags.workdir) config.workdir = *flags.workdir;
  if (stage == sdsm::Stage::kAll) sdsm::validate_inputs(config);
  sdsm::run_stage(config, stage);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sdsm: similarity pipeline over scientific document corpora"};
  app.require_subcommand(1);

  static const sdsm::Stage kStages[] = {
      sdsm::Stage::kIngest, sdsm::Stage::kGraph,     sdsm::Stage::kMine,
      sdsm::Stage::kSplit,  sdsm::Stage::kGraphEmbed, sdsm::Stage::kSample,
      sdsm::Stage::kPretrain, sdsm::Stage::kTrain,   sdsm::Stage::kEnrich,
      sdsm::Stage::kEvaluate, sdsm::Stage::kAll,
  };
  static const char* kStageHelp[] = {
      "ingest the JSONL corpus into the binary store",
      "build the citation graph from the edge list",
      "mine DC/CC/BC pairs and the configured strategy",
      "assign train/IDT/ODT splits",
      "train node embeddings on the citation graph",
      "sample training triplets",
      "contrastive pretraining on snippet pairs",
      "train the dual encoder",
      "add English summaries to non-English papers",
      "score MAP and nDCG@10 on the evaluation split",
      "run every configured stage in order",
  };

  CommonFlags stage_flags[std::size(kStages)];
  for (size_t i = 0; i < std::size(kStages); ++i) {
    CLI::App* cmd = app.add_subcommand(sdsm::stage_name(kStages[i]),
                                       kStageHelp[i]);
    add_common(cmd, &stage_flags[i]);
    sdsm::Stage stage = kStages[i];
    CommonFlags* flags = &stage_flags[i];
    cmd->callback([flags, stage]() { run_pipeline_stage(*flags, stage); });
  }

  // Fixture generator: a clustered multilingual corpus plus edge list.
  auto* gen = app.add_subcommand("gen-corpus",
                                 "write a synthetic clustered corpus");
  sdsm::ClusteredCorpusSpec spec;
  std::string out_corpus = "corpus.jsonl";
  std::string out_edges = "edges.tsv";
  gen->add_option("--out-corpus", out_corpus, "output JSONL path");
  gen->add_option("--out-edges", out_edges, "output TSV path");
  gen->add_option("--topics", spec.topics, "number of topic clusters");
  gen->add_option("--papers-per-topic", spec.papers_per_topic,
                  "papers per cluster");
  gen->add_option("--intra-p", spec.intra_p,
                  "citation probability inside a cluster");
  gen->add_option("--inter-p", spec.inter_p,
                  "citation probability across clusters");
  gen->add_option("--window", spec.window,
                  "recent papers per topic considered for citation");
  gen->add_option("--seed", spec.seed, "generator seed");
  gen->callback([&]() {
    sdsm::SynthCorpus synth = sdsm::make_clustered_corpus(spec);
    sdsm::write_corpus_jsonl(synth.corpus, out_corpus);
    sdsm::write_edges_tsv(synth.corpus, synth.edges, out_edges);
    std::cout << "[gen-corpus] papers=" << synth.corpus.size()
              << " edges=" << synth.edges.size() << " -> " << out_corpus
              << ", " << out_edges << std::endl;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
