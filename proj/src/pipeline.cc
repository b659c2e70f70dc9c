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

#include "sdsm/pipeline.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <json.hpp>

#include "sdsm/citation_graph.h"
#include "sdsm/corpus.h"
#include "sdsm/eval.h"
#include "sdsm/graph_embed.h"
#include "sdsm/rng.h"
#include "sdsm/sampler.h"
#include "sdsm/sha256.h"
#include "sdsm/splitter.h"
#include "sdsm/store.h"
#include "sdsm/tokenizer.h"

namespace sdsm {
namespace {

namespace fs = std::filesystem;

// Per-stage randomness streams off the global seed. Reordering stages or
// adding new ones must not disturb existing streams.
constexpr uint64_t kSeedSplit = 11;
constexpr uint64_t kSeedCombine = 12;
constexpr uint64_t kSeedSample = 13;
constexpr uint64_t kSeedBatches = 14;
constexpr uint64_t kSeedPretrainPairs = 15;
constexpr uint64_t kSeedPretrainBatches = 16;
constexpr uint64_t kSeedTrainLoop = 17;
constexpr uint64_t kSeedPretrainLoop = 18;
constexpr uint64_t kSeedNode = 19;
constexpr uint64_t kSeedModelInit = 20;

struct ArtifactInfo {
  const char* file;
  Stage producer;
};

constexpr ArtifactInfo kArtifacts[] = {
    {"corpus.bin", Stage::kIngest},
    {"graph.bin", Stage::kGraph},
    {"pairs_dc.bin", Stage::kMine},
    {"pairs_cc.bin", Stage::kMine},
    {"pairs_bc.bin", Stage::kMine},
    {"pairs_train.bin", Stage::kMine},
    {"assignment.bin", Stage::kSplit},
    {"assignment.tsv", Stage::kSplit},
    {"node_embeddings.bin", Stage::kGraphEmbed},
    {"triplets.bin", Stage::kSample},
    {"triplets.tsv", Stage::kSample},
    {"model_pretrained.bin", Stage::kPretrain},
    {"pretrain_loss.txt", Stage::kPretrain},
    {"model.bin", Stage::kTrain},
    {"train_loss.txt", Stage::kTrain},
    {"corpus_enriched.bin", Stage::kEnrich},
    {"report.txt", Stage::kEvaluate},
    {"report.jsonl", Stage::kEvaluate},
};

std::string artifact_path(const PipelineConfig& config, const char* file) {
  return (fs::path(config.workdir) / file).string();
}

Stage producer_of(const char* file) {
  for (const ArtifactInfo& a : kArtifacts) {
    if (std::string(a.file) == file) return a.producer;
  }
  throw std::logic_error(std::string("unregistered artifact ") + file);
}

// Resolves an upstream artifact, or tells the user which stage makes it.
std::string require(const PipelineConfig& config, const char* file) {
  std::string path = artifact_path(config, file);
  if (!fs::exists(path)) {
    throw std::runtime_error(std::string("missing artifact ") + file +
                             "; run stage '" + stage_name(producer_of(file)) +
                             "' first");
  }
  return path;
}

void require_input(const std::string& what, const std::string& path) {
  if (path.empty()) {
    throw std::runtime_error("config has no [paths] " + what + " entry");
  }
  if (!fs::exists(path)) {
    throw std::runtime_error(what + " file does not exist: " + path);
  }
}

TrainConfig trainer_config(const PipelineConfig& config, uint64_t steps,
                           uint64_t stream) {
  TrainConfig tc;
  tc.base_lr = config.base_lr;
  tc.warmup_steps = config.warmup_steps;
  tc.steps = steps;
  tc.dev_every = config.dev_every;
  tc.seed = mix_seed(config.seed, stream);
  return tc;
}

// Holds out every 20th batch for dev-best checkpoint selection.
template <typename B>
void split_dev(std::vector<B>& batches, std::vector<B>& dev) {
  if (batches.size() < 2) return;
  std::vector<B> train;
  for (size_t i = 0; i < batches.size(); ++i) {
    if (i % 20 == 19) {
      dev.push_back(std::move(batches[i]));
    } else {
      train.push_back(std::move(batches[i]));
    }
  }
  batches.swap(train);
}

void run_ingest(const PipelineConfig& config) {
  require_input("corpus", config.corpus_path);
  Tokenizer tok;
  IngestResult result = ingest_jsonl(config.corpus_path, tok);
  save_corpus(result.corpus, artifact_path(config, "corpus.bin"));
  std::cout << "[ingest] records=" << result.stats.records_read
            << " malformed=" << result.stats.skipped_malformed
            << " empty=" << result.stats.dropped_empty
            << " merged=" << result.stats.merged_duplicates
            << " papers=" << result.corpus.size() << std::endl;
}

void run_graph(const PipelineConfig& config) {
  require_input("edges", config.edges_path);
  Corpus corpus = load_corpus(require(config, "corpus.bin"));
  GraphBuildResult result = build_graph(corpus, config.edges_path);
  save_graph(result.graph, artifact_path(config, "graph.bin"));
  std::cout << "[graph] rows=" << result.stats.rows_read
            << " malformed=" << result.stats.skipped_malformed
            << " unknown=" << result.stats.dropped_unknown_endpoint
            << " self_loops=" << result.stats.dropped_self_loops
            << " duplicates=" << result.stats.dropped_duplicates
            << " edges=" << result.graph.edge_count() << std::endl;
}

void run_mine(const PipelineConfig& config) {
  CitationGraph graph = load_graph(require(config, "graph.bin"));
  MineStats cc_stats, bc_stats;
  RelationPairSet dc = mine_dc(graph);
  RelationPairSet cc = mine_cc(graph, config.max_out_degree, &cc_stats);
  RelationPairSet bc = mine_bc(graph, config.max_in_degree, &bc_stats);
  save_pairset(dc, artifact_path(config, "pairs_dc.bin"));
  save_pairset(cc, artifact_path(config, "pairs_cc.bin"));
  save_pairset(bc, artifact_path(config, "pairs_bc.bin"));

  RelationPairSet chosen;
  if (config.strategy.kinds.size() == 1) {
    switch (config.strategy.kinds[0]) {
      case RelationKind::kDC: chosen = dc; break;
      case RelationKind::kCC: chosen = cc; break;
      default: chosen = bc; break;
    }
  } else {
    std::vector<RelationPairSet> inputs;
    for (RelationKind k : config.strategy.kinds) {
      if (k == RelationKind::kDC) inputs.push_back(dc);
      else if (k == RelationKind::kCC) inputs.push_back(cc);
      else inputs.push_back(bc);
    }
    chosen = combine(inputs, config.strategy.mode,
                     mix_seed(config.seed, kSeedCombine));
  }
  save_pairset(chosen, artifact_path(config, "pairs_train.bin"));
  std::cout << "[mine] strategy=" << config.strategy.slug()
            << " dc=" << dc.pairs.size() << " cc=" << cc.pairs.size()
            << " bc=" << bc.pairs.size() << " chosen=" << chosen.pairs.size()
            << " skipped_hubs="
            << cc_stats.skipped_high_degree + bc_stats.skipped_high_degree
            << std::endl;
}

void run_split(const PipelineConfig& config) {
  Corpus corpus = load_corpus(require(config, "corpus.bin"));
  CitationGraph graph = load_graph(require(config, "graph.bin"));
  SplitSpec spec = config.split;
  spec.seed = mix_seed(config.seed, kSeedSplit);
  SplitResult result = split(corpus, graph, spec);
  for (const std::string& w : result.warnings) {
    std::cerr << "[split] warning: " << w << std::endl;
  }
  save_assignment(result.assignment, artifact_path(config, "assignment.bin"));
  export_assignment_text(corpus, result.assignment,
                         artifact_path(config, "assignment.tsv"));
  std::cout << "[split] train=" << result.assignment.count(Split::kTrain)
            << " idt=" << result.assignment.count(Split::kIdt)
            << " odt=" << result.assignment.count(Split::kOdt)
            << " excluded=" << result.assignment.count(Split::kExcluded)
            << std::endl;
}

void run_graph_embed(const PipelineConfig& config) {
  CitationGraph graph = load_graph(require(config, "graph.bin"));
  Matrix table = train_node_embeddings(graph, config.node_dim,
                                       config.node_epochs,
                                       config.node_negatives,
                                       mix_seed(config.seed, kSeedNode),
                                       config.node_lr);
  save_matrix(table, artifact_path(config, "node_embeddings.bin"));
  std::cout << "[graph-embed] nodes=" << table.rows << " dim=" << table.cols
            << std::endl;
}

void run_sample(const PipelineConfig& config) {
  Corpus corpus = load_corpus(require(config, "corpus.bin"));
  SplitAssignment assignment =
      load_assignment(require(config, "assignment.bin"));

  std::vector<TripletExample> triplets;
  if (config.negatives == PipelineConfig::Negatives::kScincl) {
    Matrix table = load_matrix(require(config, "node_embeddings.bin"));
    ScinclResult result =
        sample_scincl(table, config.scincl_i, config.scincl_k, config.scincl_n,
                      config.negatives_per_anchor,
                      mix_seed(config.seed, kSeedSample));
    for (const std::string& w : result.warnings) {
      std::cerr << "[sample] warning: " << w << std::endl;
    }
    // Keep triplets fully inside the train split.
    for (const TripletExample& t : result.triplets) {
      if (assignment.split_of[t.anchor] != Split::kTrain) continue;
      if (assignment.split_of[t.positive] != Split::kTrain) continue;
      if (t.hard_negative &&
          assignment.split_of[*t.hard_negative] != Split::kTrain) {
        continue;
      }
      triplets.push_back(t);
    }
  } else {
    RelationPairSet pairs = load_pairset(require(config, "pairs_train.bin"));
    RelationPairSet train_pairs =
        split_pairs(pairs, assignment, Split::kTrain, corpus);
    if (config.negatives == PipelineConfig::Negatives::kSpecter) {
      CitationGraph graph = load_graph(require(config, "graph.bin"));
      triplets = sample_specter_triplets(train_pairs, graph,
                                         config.negatives_per_anchor,
                                         mix_seed(config.seed, kSeedSample));
    } else {
      triplets = triplets_from_pairs(train_pairs);
    }
  }
  save_triplets(triplets, artifact_path(config, "triplets.bin"));
  export_triplets_text(triplets, corpus, artifact_path(config, "triplets.tsv"));
  std::cout << "[sample] triplets=" << triplets.size() << std::endl;
}

void run_pretrain(const PipelineConfig& config) {
  Corpus corpus = load_corpus(require(config, "corpus.bin"));
  SplitAssignment assignment =
      load_assignment(require(config, "assignment.bin"));
  Corpus train_corpus;
  for (uint32_t i = 0; i < corpus.size(); ++i) {
    if (assignment.split_of[i] == Split::kTrain) train_corpus.add(corpus.paper(i));
  }
  std::vector<SnippetPair> pairs = sample_snippet_pairs(
      train_corpus, config.pretrain_pairs, config.snippet_min_len,
      config.snippet_max_len, mix_seed(config.seed, kSeedPretrainPairs));
  std::vector<Batch> batches = make_snippet_batches(
      pairs, config.batch_size, mix_seed(config.seed, kSeedPretrainBatches));
  if (batches.empty()) {
    throw std::runtime_error(
        "pretrain produced no full batch; lower batch_size or raise "
        "[pretrain] pairs");
  }
  std::vector<Batch> dev;
  split_dev(batches, dev);

  EncoderModel model =
      EncoderModel::init(config.encoder, mix_seed(config.seed, kSeedModelInit));
  LossConfig loss = config.loss;
  loss.kind = LossConfig::Kind::kContrastive;  // snippet pairs have no negatives
  TrainConfig tc = trainer_config(config, config.pretrain_epochs * batches.size(),
                                  kSeedPretrainLoop);
  TrainResult result = train_contrastive(model, batches, loss, tc,
                                         dev.empty() ? nullptr : &dev);
  save_model(model, artifact_path(config, "model_pretrained.bin"));
  save_loss_trace(result.loss_trace, artifact_path(config, "pretrain_loss.txt"));
  std::cout << "[pretrain] batches=" << batches.size()
            << " steps=" << result.loss_trace.size()
            << " final_loss=" << (result.loss_trace.empty()
                                      ? 0.0
                                      : result.loss_trace.back())
            << std::endl;
}

void run_train(const PipelineConfig& config) {
  Corpus corpus = load_corpus(require(config, "corpus.bin"));
  std::vector<TripletExample> triplets =
      load_triplets(require(config, "triplets.bin"));

  EncoderModel model =
      config.init_from_pretrained
          ? load_model(require(config, "model_pretrained.bin"))
          : EncoderModel::init(config.encoder,
                               mix_seed(config.seed, kSeedModelInit));

  TrainResult result;
  if (config.loss.kind == LossConfig::Kind::kHinge) {
    std::vector<TripletTextBatch> batches = make_triplet_batches(
        triplets, corpus, config.batch_size, mix_seed(config.seed, kSeedBatches));
    std::vector<TripletTextBatch> dev;
    split_dev(batches, dev);
    TrainConfig tc = trainer_config(config, config.epochs * batches.size(),
                                    kSeedTrainLoop);
    result = train_hinge(model, batches, config.loss, tc,
                         dev.empty() ? nullptr : &dev);
  } else {
    std::vector<Batch> batches = make_batches(
        triplets, corpus, config.batch_size, mix_seed(config.seed, kSeedBatches));
    std::vector<Batch> dev;
    split_dev(batches, dev);
    TrainConfig tc = trainer_config(config, config.epochs * batches.size(),
                                    kSeedTrainLoop);
    result = train_contrastive(model, batches, config.loss, tc,
                               dev.empty() ? nullptr : &dev);
  }
  save_model(model, artifact_path(config, "model.bin"));
  save_loss_trace(result.loss_trace, artifact_path(config, "train_loss.txt"));
  std::cout << "[train] steps=" << result.loss_trace.size() << " final_loss="
            << (result.loss_trace.empty() ? 0.0 : result.loss_trace.back())
            << std::endl;
}

void run_enrich(const PipelineConfig& config) {
  Corpus corpus = load_corpus(require(config, "corpus.bin"));
  SummarizerConfig summarizer = config.summarizer;
  if (summarizer.kind == SummarizerKind::kExternalService &&
      summarizer.audit_log_path.empty()) {
    fs::path logs = fs::path(config.workdir) / "logs";
    fs::create_directories(logs);
    summarizer.audit_log_path = (logs / "summarizer_audit.jsonl").string();
  }
  IdentityTranslation translate;
  Corpus enriched = enrich_corpus(corpus, summarizer, translate);
  save_corpus(enriched, artifact_path(config, "corpus_enriched.bin"));
  size_t touched = 0;
  for (const Paper& p : enriched.papers()) touched += !p.enrichment.empty();
  std::cout << "[enrich] kind=" << summarizer_kind_name(summarizer.kind)
            << " max_tokens=" << summarizer.max_tokens
            << " enriched=" << touched << std::endl;
}

void run_evaluate(const PipelineConfig& config) {
  std::string model_path = require(config, "model.bin");
  EncoderModel model = load_model(model_path);
  SplitAssignment assignment =
      load_assignment(require(config, "assignment.bin"));

  std::string corpus_file = "corpus.bin";
  if (config.eval_use_enriched &&
      fs::exists(artifact_path(config, "corpus_enriched.bin"))) {
    corpus_file = "corpus_enriched.bin";
  }
  Corpus corpus = load_corpus(artifact_path(config, corpus_file.c_str()));

  RelationPairSet dc = load_pairset(require(config, "pairs_dc.bin"));
  RelationPairSet cc = load_pairset(require(config, "pairs_cc.bin"));
  RelationPairSet bc = load_pairset(require(config, "pairs_bc.bin"));
  dc = split_pairs(dc, assignment, config.eval_split, corpus);
  cc = split_pairs(cc, assignment, config.eval_split, corpus);
  bc = split_pairs(bc, assignment, config.eval_split, corpus);

  Matrix embeddings = embed_corpus(model, corpus);
  std::vector<uint32_t> pool = split_pool(assignment, config.eval_split);
  std::vector<EvalTask> tasks = build_tasks(dc, cc, bc);
  EvalReport report = evaluate(embeddings, tasks, pool);
  report.seed = config.seed;
  report.checkpoint_id = sha256_file_hex(model_path).substr(0, 12);

  std::string table = report_table(report);
  std::ofstream txt(artifact_path(config, "report.txt"), std::ios::binary);
  txt << table;
  if (!txt.flush()) throw std::runtime_error("cannot write report.txt");
  std::ofstream jsonl(artifact_path(config, "report.jsonl"), std::ios::binary);
  jsonl << report_jsonl(report);
  if (!jsonl.flush()) throw std::runtime_error("cannot write report.jsonl");
  std::cout << "[evaluate] split=" << split_name(config.eval_split)
            << " corpus=" << corpus_file << "\n"
            << table << std::flush;
}

}  // namespace

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::kIngest: return "ingest";
    case Stage::kGraph: return "graph";
    case Stage::kMine: return "mine";
    case Stage::kSplit: return "split";
    case Stage::kGraphEmbed: return "graph-embed";
    case Stage::kSample: return "sample";
    case Stage::kPretrain: return "pretrain";
    case Stage::kTrain: return "train";
    case Stage::kEnrich: return "enrich";
    case Stage::kEvaluate: return "evaluate";
    case Stage::kAll: return "all";
  }
  return "?";
}

std::optional<Stage> parse_stage(const std::string& name) {
  static const Stage kStages[] = {
      Stage::kIngest, Stage::kGraph,     Stage::kMine,  Stage::kSplit,
      Stage::kGraphEmbed, Stage::kSample, Stage::kPretrain, Stage::kTrain,
      Stage::kEnrich, Stage::kEvaluate, Stage::kAll,
  };
  for (Stage s : kStages) {
    if (name == stage_name(s)) return s;
  }
  return std::nullopt;
}

void run_stage(const PipelineConfig& config, Stage stage) {
  fs::create_directories(config.workdir);
  switch (stage) {
    case Stage::kIngest: run_ingest(config); break;
    case Stage::kGraph: run_graph(config); break;
    case Stage::kMine: run_mine(config); break;
    case Stage::kSplit: run_split(config); break;
    case Stage::kGraphEmbed: run_graph_embed(config); break;
    case Stage::kSample: run_sample(config); break;
    case Stage::kPretrain: run_pretrain(config); break;
    case Stage::kTrain: run_train(config); break;
    case Stage::kEnrich: run_enrich(config); break;
    case Stage::kEvaluate: run_evaluate(config); break;
    case Stage::kAll: {
      run_ingest(config);
      run_graph(config);
      run_mine(config);
      run_split(config);
      run_graph_embed(config);
      run_sample(config);
      if (config.pretrain_enabled) run_pretrain(config);
      run_train(config);
      if (config.enrich_enabled) run_enrich(config);
      run_evaluate(config);
      break;
    }
  }
  write_manifest(config);
}

std::string write_manifest(const PipelineConfig& config) {
  nlohmann::json artifacts = nlohmann::json::object();
  for (const ArtifactInfo& a : kArtifacts) {
    std::string path = artifact_path(config, a.file);
    if (fs::exists(path)) artifacts[a.file] = sha256_file_hex(path);
  }
  nlohmann::json manifest;
  manifest["artifacts"] = artifacts;
  manifest["seed"] = config.seed;
  manifest["strategy"] = config.strategy.slug();
  std::string text = manifest.dump(2) + "\n";

  fs::path path = fs::path(config.workdir) / "manifest.json";
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out.flush()) {
    throw std::runtime_error("cannot write manifest: " + path.string());
  }
  return text;
}

}  // namespace sdsm
