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

#include "sdsm/encoder.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "sdsm/rng.h"
#include "sdsm/store.h"

namespace sdsm {

EncoderModel EncoderModel::init(const EncoderConfig& config, uint64_t seed) {
  if (config.hash_dim == 0 || config.embed_dim == 0 ||
      config.ngram_orders.empty()) {
    throw std::runtime_error("invalid encoder config");
  }
  EncoderModel m;
  m.config = config;
  size_t d = config.embed_dim;
  double scale = 1.0 / std::sqrt(double(d));

  m.embedding = Matrix(config.hash_dim, d);
  Rng emb_rng(mix_seed(seed, 1));
  for (double& v : m.embedding.data) {
    v = (2.0 * emb_rng.uniform_real() - 1.0) * scale;
  }

  m.projection = Matrix(d, d);
  Rng proj_rng(mix_seed(seed, 2));
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < d; ++j) {
      double noise = (2.0 * proj_rng.uniform_real() - 1.0) * 0.01;
      m.projection.at(i, j) = (i == j ? 1.0 : 0.0) + noise;
    }
  }

  m.bias.assign(d, 0.0);
  return m;
}

std::vector<uint32_t> EncoderModel::features(std::string_view text) const {
  Tokenizer tok;
  std::vector<std::string> tokens = tok.tokenize(text);
  std::vector<uint32_t> feats;
  std::string joined;
  for (uint32_t order : config.ngram_orders) {
    if (order == 0 || tokens.size() < order) continue;
    for (size_t i = 0; i + order <= tokens.size(); ++i) {
      joined.clear();
      for (uint32_t k = 0; k < order; ++k) {
        if (k > 0) joined.push_back('\x1f');
        joined += tokens[i + k];
      }
      // The order folds into the seed; the 0x1f joiner is a separator
      // character, so token bytes cannot collide with it anyway.
      uint64_t h =
          fnv1a64(joined.data(), joined.size(), config.hash_seed + order);
      feats.push_back(uint32_t(h % config.hash_dim));
    }
  }
  return feats;
}

namespace {

struct Encoded {
  std::vector<uint32_t> feats;
  std::vector<double> pooled;
  std::vector<double> out;
};

Encoded encode_full(const EncoderModel& m, std::string_view text) {
  size_t d = m.config.embed_dim;
  Encoded e;
  e.feats = m.features(text);
  e.pooled.assign(d, 0.0);
  if (!e.feats.empty()) {
    for (uint32_t f : e.feats) {
      const double* row = m.embedding.row(f);
      for (size_t j = 0; j < d; ++j) e.pooled[j] += row[j];
    }
    double inv = 1.0 / double(e.feats.size());
    for (size_t j = 0; j < d; ++j) e.pooled[j] *= inv;
  }
  e.out = m.bias;
  for (size_t k = 0; k < d; ++k) {
    double u = e.pooled[k];
    if (u == 0.0) continue;
    const double* prow = m.projection.row(k);
    for (size_t j = 0; j < d; ++j) e.out[j] += u * prow[j];
  }
  return e;
}

// Similarity of two encoded vectors and its gradients w.r.t. both.
double similarity(const std::vector<double>& a, const std::vector<double>& b,
                  LossConfig::Similarity kind) {
  size_t d = a.size();
  if (kind == LossConfig::Similarity::kDot) return dot(a.data(), b.data(), d);
  return cosine(a.data(), b.data(), d);
}

// Adds g * dsim/da to da and g * dsim/db to db.
void add_similarity_grad(const std::vector<double>& a,
                         const std::vector<double>& b,
                         LossConfig::Similarity kind, double g,
                         std::vector<double>& da, std::vector<double>& db) {
  size_t d = a.size();
  if (kind == LossConfig::Similarity::kDot) {
    for (size_t j = 0; j < d; ++j) {
      da[j] += g * b[j];
      db[j] += g * a[j];
    }
    return;
  }
  double na = l2_norm(a.data(), d);
  double nb = l2_norm(b.data(), d);
  if (na == 0.0 || nb == 0.0) return;  // cosine pinned to 0 there
  double ab = dot(a.data(), b.data(), d);
  double inv = 1.0 / (na * nb);
  double ca = ab / (na * na);
  double cb = ab / (nb * nb);
  for (size_t j = 0; j < d; ++j) {
    da[j] += g * inv * (b[j] - ca * a[j]);
    db[j] += g * inv * (a[j] - cb * b[j]);
  }
}

// Chains an output-vector gradient back onto the parameters.
void backprop_encoder(const EncoderModel& m, const Encoded& e,
                      const std::vector<double>& dout, Gradients& grads) {
  size_t d = m.config.embed_dim;
  for (size_t j = 0; j < d; ++j) grads.d_bias[j] += dout[j];
  std::vector<double> dpooled(d, 0.0);
  for (size_t k = 0; k < d; ++k) {
    double* gp = grads.d_projection.row(k);
    const double* prow = m.projection.row(k);
    double u = e.pooled[k];
    double acc = 0.0;
    for (size_t j = 0; j < d; ++j) {
      gp[j] += u * dout[j];
      acc += prow[j] * dout[j];
    }
    dpooled[k] = acc;
  }
  if (e.feats.empty()) return;
  double inv = 1.0 / double(e.feats.size());
  for (uint32_t f : e.feats) {
    auto [it, fresh] = grads.d_embedding.try_emplace(f);
    if (fresh) it->second.assign(d, 0.0);
    for (size_t j = 0; j < d; ++j) it->second[j] += inv * dpooled[j];
  }
}

Gradients make_grads(const EncoderModel& m) {
  Gradients g;
  g.d_projection = Matrix(m.config.embed_dim, m.config.embed_dim);
  g.d_bias.assign(m.config.embed_dim, 0.0);
  return g;
}

}  // namespace

std::vector<double> EncoderModel::encode(std::string_view text) const {
  return encode_full(*this, text).out;
}

LossResult cl_loss(const EncoderModel& model, const Batch& batch,
                   const LossConfig& config) {
  size_t n = batch.left_texts.size();
  size_t m = batch.right_texts.size();
  if (n < 2) throw std::runtime_error("contrastive batch needs n >= 2");
  if (m < n) throw std::runtime_error("right side smaller than left side");
  if (config.temperature <= 0.0) throw std::runtime_error("temperature <= 0");

  std::vector<Encoded> left(n), right(m);
  for (size_t i = 0; i < n; ++i) {
    left[i] = encode_full(model, batch.left_texts[i]);
  }
  for (size_t j = 0; j < m; ++j) {
    right[j] = encode_full(model, batch.right_texts[j]);
  }

  double inv_tau = 1.0 / config.temperature;
  Matrix s(n, m);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) {
      double v = similarity(left[i].out, right[j].out, config.similarity) *
                 inv_tau;
      if (!std::isfinite(v)) {
        throw std::runtime_error("non-finite similarity at batch position (" +
                                 std::to_string(i) + ", " +
                                 std::to_string(j) + ")");
      }
      s.at(i, j) = v;
    }
  }

  LossResult result;
  result.grads = make_grads(model);
  std::vector<std::vector<double>> dleft(n, std::vector<double>(
                                                model.config.embed_dim, 0.0));
  std::vector<std::vector<double>> dright(
      m, std::vector<double>(model.config.embed_dim, 0.0));

  double total = 0.0;
  double inv_n = 1.0 / double(n);
  for (size_t i = 0; i < n; ++i) {
    const double* row = s.row(i);
    double mx = row[0];
    for (size_t j = 1; j < m; ++j) mx = std::max(mx, row[j]);
    double z = 0.0;
    for (size_t j = 0; j < m; ++j) z += std::exp(row[j] - mx);
    total += -row[i] + mx + std::log(z);
    for (size_t j = 0; j < m; ++j) {
      double p = std::exp(row[j] - mx) / z;
      double g = (p - (j == i ? 1.0 : 0.0)) * inv_n * inv_tau;
      if (g != 0.0) {
        add_similarity_grad(left[i].out, right[j].out, config.similarity, g,
                            dleft[i], dright[j]);
      }
    }
  }
  result.loss = total * inv_n;

  for (size_t i = 0; i < n; ++i) {
    backprop_encoder(model, left[i], dleft[i], result.grads);
  }
  for (size_t j = 0; j < m; ++j) {
    backprop_encoder(model, right[j], dright[j], result.grads);
  }
  return result;
}

LossResult hinge_loss(const EncoderModel& model,
                      const TripletTextBatch& batch,
                      const LossConfig& config) {
  size_t n = batch.size();
  if (n == 0) throw std::runtime_error("empty triplet batch");
  if (batch.positives.size() != n || batch.negatives.size() != n) {
    throw std::runtime_error("triplet batch sides disagree in length");
  }
  if (config.margin <= 0.0) throw std::runtime_error("margin <= 0");

  LossResult result;
  result.grads = make_grads(model);
  size_t d = model.config.embed_dim;
  double inv_n = 1.0 / double(n);
  double total = 0.0;

  for (size_t i = 0; i < n; ++i) {
    Encoded a = encode_full(model, batch.anchors[i]);
    Encoded pos = encode_full(model, batch.positives[i]);
    Encoded neg = encode_full(model, batch.negatives[i]);
    double s_pos = similarity(a.out, pos.out, config.similarity);
    double s_neg = similarity(a.out, neg.out, config.similarity);
    if (!std::isfinite(s_pos) || !std::isfinite(s_neg)) {
      throw std::runtime_error("non-finite similarity at triplet " +
                               std::to_string(i));
    }
    double term = s_neg - s_pos + config.margin;
    if (term <= 0.0) continue;  // inactive: zero loss, zero gradient
    total += term;

    std::vector<double> da(d, 0.0), dpos(d, 0.0), dneg(d, 0.0);
    add_similarity_grad(a.out, neg.out, config.similarity, inv_n, da, dneg);
    add_similarity_grad(a.out, pos.out, config.similarity, -inv_n, da, dpos);
    backprop_encoder(model, a, da, result.grads);
    backprop_encoder(model, pos, dpos, result.grads);
    backprop_encoder(model, neg, dneg, result.grads);
  }
  result.loss = total * inv_n;
  return result;
}

double learning_rate(const TrainConfig& config, uint64_t step) {
  uint64_t w = std::max<uint64_t>(config.warmup_steps, 1);
  double lr;
  if (step < config.warmup_steps) {
    lr = config.base_lr * double(step + 1) / double(w);
  } else {
    lr = config.base_lr * std::sqrt(double(w) / double(step + 1));
  }
  return std::max(lr, config.min_lr);
}

TrainState TrainState::init(const EncoderModel& m) {
  TrainState s;
  s.acc_embedding = Matrix(m.config.hash_dim, m.config.embed_dim);
  s.acc_projection = Matrix(m.config.embed_dim, m.config.embed_dim);
  s.acc_bias.assign(m.config.embed_dim, 0.0);
  return s;
}

namespace {

constexpr double kAdaEps = 1e-10;

void apply_update(EncoderModel& model, TrainState& state,
                  const Gradients& grads, double lr) {
  size_t d = model.config.embed_dim;
  for (const auto& [f, gvec] : grads.d_embedding) {
    double* acc = state.acc_embedding.row(f);
    double* w = model.embedding.row(f);
    for (size_t j = 0; j < d; ++j) {
      double g = gvec[j];
      acc[j] += g * g;
      w[j] -= lr * g / (std::sqrt(acc[j]) + kAdaEps);
    }
  }
  for (size_t i = 0; i < d * d; ++i) {
    double g = grads.d_projection.data[i];
    state.acc_projection.data[i] += g * g;
    model.projection.data[i] -=
        lr * g / (std::sqrt(state.acc_projection.data[i]) + kAdaEps);
  }
  for (size_t j = 0; j < d; ++j) {
    double g = grads.d_bias[j];
    state.acc_bias[j] += g * g;
    model.bias[j] -= lr * g / (std::sqrt(state.acc_bias[j]) + kAdaEps);
  }
}

// Shared trainer skeleton over the two batch kinds.
template <typename BatchT, typename LossFn>
TrainResult run_training(EncoderModel& model,
                         const std::vector<BatchT>& batches,
                         const TrainConfig& config, LossFn&& loss_fn,
                         const std::vector<BatchT>* dev) {
  if (batches.empty()) throw std::runtime_error("no training batches");
  TrainState state = TrainState::init(model);
  TrainResult result;
  result.loss_trace.reserve(config.steps);

  EncoderModel best;
  double best_dev = std::numeric_limits<double>::infinity();
  bool have_best = false;

  for (uint64_t step = 0; step < config.steps; ++step) {
    const BatchT& batch = batches[step % batches.size()];
    LossResult r = loss_fn(model, batch);
    if (!std::isfinite(r.loss)) {
      throw std::runtime_error("training diverged at step " +
                               std::to_string(step));
    }
    apply_update(model, state, r.grads, learning_rate(config, step));
    state.step++;
    result.loss_trace.push_back(r.loss);

    if (dev && !dev->empty() && config.dev_every > 0 &&
        (step + 1) % config.dev_every == 0) {
      double dev_loss = 0.0;
      for (const BatchT& db : *dev) dev_loss += loss_fn(model, db).loss;
      dev_loss /= double(dev->size());
      if (dev_loss < best_dev) {
        best_dev = dev_loss;
        best = model;
        have_best = true;
      }
    }
  }
  if (have_best) {
    model = best;
    result.best_dev_loss = best_dev;
  }
  return result;
}

}  // namespace

TrainResult train_contrastive(EncoderModel& model,
                              const std::vector<Batch>& batches,
                              const LossConfig& loss_config,
                              const TrainConfig& train_config,
                              const std::vector<Batch>* dev) {
  return run_training(
      model, batches, train_config,
      [&loss_config](const EncoderModel& m, const Batch& b) {
        return cl_loss(m, b, loss_config);
      },
      dev);
}

TrainResult train_hinge(EncoderModel& model,
                        const std::vector<TripletTextBatch>& batches,
                        const LossConfig& loss_config,
                        const TrainConfig& train_config,
                        const std::vector<TripletTextBatch>* dev) {
  return run_training(
      model, batches, train_config,
      [&loss_config](const EncoderModel& m, const TripletTextBatch& b) {
        return hinge_loss(m, b, loss_config);
      },
      dev);
}

Matrix embed_corpus(const EncoderModel& model, const Corpus& corpus) {
  Matrix out(corpus.size(), model.config.embed_dim);
  for (size_t i = 0; i < corpus.size(); ++i) {
    std::vector<double> v = model.encode(embedding_text(corpus.paper(i)));
    std::copy(v.begin(), v.end(), out.row(i));
  }
  return out;
}

Matrix embed_texts(const EncoderModel& model,
                   const std::vector<std::string>& texts) {
  Matrix out(texts.size(), model.config.embed_dim);
  for (size_t i = 0; i < texts.size(); ++i) {
    std::vector<double> v = model.encode(texts[i]);
    std::copy(v.begin(), v.end(), out.row(i));
  }
  return out;
}

void save_model(const EncoderModel& m, const std::string& path) {
  BinaryWriter w(path);
  w.write_header(store::kModelFormat);
  w.write_u32(m.config.hash_dim);
  w.write_u32(m.config.embed_dim);
  w.write_u64(m.config.hash_seed);
  w.write_u32(uint32_t(m.config.ngram_orders.size()));
  for (uint32_t o : m.config.ngram_orders) w.write_u32(o);
  for (double v : m.embedding.data) w.write_f64(v);
  for (double v : m.projection.data) w.write_f64(v);
  for (double v : m.bias) w.write_f64(v);
  w.close();
}

EncoderModel load_model(const std::string& path) {
  BinaryReader r(path);
  r.check_header(store::kModelFormat);
  EncoderConfig c;
  c.hash_dim = r.read_u32();
  c.embed_dim = r.read_u32();
  c.hash_seed = r.read_u64();
  uint32_t n_orders = r.read_u32();
  c.ngram_orders.clear();
  for (uint32_t i = 0; i < n_orders; ++i) {
    c.ngram_orders.push_back(r.read_u32());
  }
  EncoderModel m;
  m.config = c;
  m.embedding = Matrix(c.hash_dim, c.embed_dim);
  m.projection = Matrix(c.embed_dim, c.embed_dim);
  m.bias.assign(c.embed_dim, 0.0);
  for (double& v : m.embedding.data) v = r.read_f64();
  for (double& v : m.projection.data) v = r.read_f64();
  for (double& v : m.bias) v = r.read_f64();
  return m;
}

void save_loss_trace(const std::vector<double>& trace,
                     const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.precision(17);
  for (size_t i = 0; i < trace.size(); ++i) {
    out << i << '\t' << trace[i] << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace sdsm
