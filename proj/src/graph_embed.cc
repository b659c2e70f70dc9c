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

#include "sdsm/graph_embed.h"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "sdsm/rng.h"

namespace sdsm {

Matrix train_node_embeddings(const CitationGraph& graph, uint32_t dim,
                             uint32_t epochs, uint32_t negatives_per_edge,
                             uint64_t seed, double lr) {
  if (dim == 0) throw std::runtime_error("embedding dim must be positive");
  if (graph.n == 0) throw std::runtime_error("empty graph");

  Matrix table(graph.n, dim);
  Rng init_rng(mix_seed(seed, 1));
  double scale = 1.0 / std::sqrt(double(dim));
  for (double& v : table.data) {
    v = (2.0 * init_rng.uniform_real() - 1.0) * scale;
  }

  std::vector<std::pair<uint32_t, uint32_t>> edges;
  edges.reserve(graph.edge_count());
  for (uint32_t u = 0; u < graph.n; ++u) {
    for (uint32_t v : graph.out_adj[u]) edges.emplace_back(u, v);
  }
  if (edges.empty()) return table;

  Rng rng(mix_seed(seed, 2));
  std::vector<uint32_t> cand(1 + negatives_per_edge);
  std::vector<double> scores(cand.size());
  std::vector<double> du(dim);

  for (uint32_t epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(edges);
    double step = lr / (1.0 + epoch);
    for (auto [u, v] : edges) {
      cand.clear();
      cand.push_back(v);
      for (uint32_t t = 0; t < negatives_per_edge; ++t) {
        // Rejection-sample a non-neighbor; fall back to anything but u, v
        // on very dense rows.
        uint32_t w = 0;
        bool ok = false;
        for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
          w = uint32_t(rng.uniform(graph.n));
          ok = w != u && !graph.has_edge(u, w);
        }
        if (!ok) {
          do {
            w = uint32_t(rng.uniform(graph.n));
          } while (w == u || w == v);
        }
        cand.push_back(w);
      }

      double* eu = table.row(u);
      scores.resize(cand.size());
      double mx = -1e300;
      for (size_t c = 0; c < cand.size(); ++c) {
        scores[c] = dot(eu, table.row(cand[c]), dim);
        mx = std::max(mx, scores[c]);
      }
      double z = 0.0;
      for (double& s : scores) {
        s = std::exp(s - mx);
        z += s;
      }
      // Softmax cross-entropy toward the true neighbor at index 0.
      std::fill(du.begin(), du.end(), 0.0);
      for (size_t c = 0; c < cand.size(); ++c) {
        double g = scores[c] / z - (c == 0 ? 1.0 : 0.0);
        double* ec = table.row(cand[c]);
        for (uint32_t j = 0; j < dim; ++j) {
          du[j] += g * ec[j];
          ec[j] -= step * g * eu[j];
        }
      }
      for (uint32_t j = 0; j < dim; ++j) eu[j] -= step * du[j];
    }
  }
  return table;
}

std::vector<std::pair<uint32_t, double>> knn(const Matrix& embeddings,
                                             uint32_t anchor, uint32_t K) {
  size_t n = embeddings.rows;
  if (anchor >= n) throw std::runtime_error("anchor outside table");
  if (K >= n) {
    std::cerr << "knn: K=" << K << " clipped to " << (n - 1) << " neighbors\n";
    K = uint32_t(n - 1);
  }
  std::vector<std::pair<uint32_t, double>> out;
  if (K == 0) return out;

  const double* av = embeddings.row(anchor);
  // (-score, ordinal) sorts descending by score with ascending-ordinal ties.
  std::vector<std::pair<double, uint32_t>> scored;
  scored.reserve(n - 1);
  for (uint32_t other = 0; other < n; ++other) {
    if (other == anchor) continue;
    scored.emplace_back(-dot(av, embeddings.row(other), embeddings.cols),
                        other);
  }
  std::partial_sort(scored.begin(), scored.begin() + K, scored.end());
  out.reserve(K);
  for (uint32_t r = 0; r < K; ++r) {
    out.emplace_back(scored[r].second, -scored[r].first);
  }
  return out;
}

}  // namespace sdsm
