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

#ifndef SDSM_ENCODER_H_
#define SDSM_ENCODER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sdsm/corpus.h"
#include "sdsm/matrix.h"

namespace sdsm {

struct EncoderConfig {
  uint32_t hash_dim = 1 << 14;   // n-gram hash buckets
  uint32_t embed_dim = 64;       // output width d
  std::vector<uint32_t> ngram_orders = {1, 2};
  uint64_t hash_seed = 0x5d5ac1f0a7b3c9e1ULL;
};

// Dual encoder f: text -> R^d. Tokens are hashed n-grams; their bucket
// embeddings are averaged and passed through a d x d projection with bias.
// Both sides of a pair go through the same parameters.
struct EncoderModel {
  EncoderConfig config;
  Matrix embedding;            // hash_dim x d
  Matrix projection;           // d x d
  std::vector<double> bias;    // d

  // Embedding rows uniform in (-1/sqrt(d), 1/sqrt(d)); projection is the
  // identity plus small noise so pooled features pass through at step 0.
  static EncoderModel init(const EncoderConfig& config, uint64_t seed);

  // Bucket ids of the text's n-grams, one entry per occurrence.
  std::vector<uint32_t> features(std::string_view text) const;

  // Deterministic; empty text maps to the projected zero vector (the bias).
  std::vector<double> encode(std::string_view text) const;
};

void save_model(const EncoderModel& m, const std::string& path);
EncoderModel load_model(const std::string& path);

struct LossConfig {
  enum class Kind { kContrastive, kHinge };
  enum class Similarity { kDot, kCosine };

  Kind kind = Kind::kContrastive;
  double temperature = 1.0;  // softmax temperature
  double margin = 1.0;       // hinge margin
  Similarity similarity = Similarity::kDot;
};

// Aligned positive pairs; right side may carry extra hard negatives beyond
// position n-1, which join every row's softmax denominator.
struct Batch {
  std::vector<std::string> left_texts;
  std::vector<std::string> right_texts;

  size_t size() const { return left_texts.size(); }
};

struct TripletTextBatch {
  std::vector<std::string> anchors;
  std::vector<std::string> positives;
  std::vector<std::string> negatives;

  size_t size() const { return anchors.size(); }
};

// Gradient of a loss w.r.t. the model. The embedding part is sparse: only
// buckets touched by the batch appear.
struct Gradients {
  std::unordered_map<uint32_t, std::vector<double>> d_embedding;
  Matrix d_projection;
  std::vector<double> d_bias;
};

struct LossResult {
  double loss = 0.0;
  Gradients grads;
};

// In-batch softmax loss: mean over i of
//   -log( exp(sim_i_i / t) / sum_j exp(sim_i_j / t) ),
// j running over every right-side entry. Throws on non-finite
// intermediates, naming the batch position.
LossResult cl_loss(const EncoderModel& model, const Batch& batch,
                   const LossConfig& config);

// Mean over triplets of max{0, sim(a,neg) - sim(a,pos) + margin}. Inactive
// triplets contribute zero gradient.
LossResult hinge_loss(const EncoderModel& model,
                      const TripletTextBatch& batch,
                      const LossConfig& config);

struct TrainConfig {
  double base_lr = 1e-2;
  uint64_t warmup_steps = 100;
  double min_lr = 1e-8;
  uint64_t steps = 0;
  uint64_t seed = 0;
  // Held-out batches scored every dev_every steps; the best-scoring
  // checkpoint is returned instead of the final one.
  uint64_t dev_every = 50;
};

// Per-parameter adaptive state (squared-gradient accumulators).
struct TrainState {
  uint64_t step = 0;
  Matrix acc_embedding;
  Matrix acc_projection;
  std::vector<double> acc_bias;

  static TrainState init(const EncoderModel& m);
};

// Linear warm-up to base_lr, then inverse square-root decay, floored at
// min_lr. Strictly positive and non-increasing after warm-up.
double learning_rate(const TrainConfig& config, uint64_t step);

struct TrainResult {
  std::vector<double> loss_trace;  // one entry per step
  double best_dev_loss = 0.0;      // only meaningful with a dev set
};

// Steps through batches in order, cycling. Deterministic single-threaded.
// Throws on NaN loss, naming the step.
TrainResult train_contrastive(EncoderModel& model,
                              const std::vector<Batch>& batches,
                              const LossConfig& loss_config,
                              const TrainConfig& train_config,
                              const std::vector<Batch>* dev = nullptr);

TrainResult train_hinge(EncoderModel& model,
                        const std::vector<TripletTextBatch>& batches,
                        const LossConfig& loss_config,
                        const TrainConfig& train_config,
                        const std::vector<TripletTextBatch>* dev = nullptr);

// Row i = encode of paper i's "{title}. {abstract}" text.
Matrix embed_corpus(const EncoderModel& model, const Corpus& corpus);

Matrix embed_texts(const EncoderModel& model,
                   const std::vector<std::string>& texts);

// Writes "step<TAB>loss" lines.
void save_loss_trace(const std::vector<double>& trace,
                     const std::string& path);

}  // namespace sdsm

#endif  // SDSM_ENCODER_H_
