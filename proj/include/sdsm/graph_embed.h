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

#ifndef SDSM_GRAPH_EMBED_H_
#define SDSM_GRAPH_EMBED_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "sdsm/citation_graph.h"
#include "sdsm/matrix.h"

namespace sdsm {

// Dot-product node embeddings trained with an edge-level softmax: each
// edge (u,v) is contrasted against negatives_per_edge uniformly sampled
// non-neighbors of u. SGD with per-epoch decay; deterministic given seed.
// Returns a num_nodes x dim table. Zero epochs return the initialization.
Matrix train_node_embeddings(const CitationGraph& graph, uint32_t dim,
                             uint32_t epochs, uint32_t negatives_per_edge,
                             uint64_t seed, double lr = 0.1);

// Exact top-K neighbors of anchor by descending dot product, self
// excluded, ties by ascending ordinal. K is clipped to the pool size with
// a warning on stderr.
std::vector<std::pair<uint32_t, double>> knn(const Matrix& embeddings,
                                             uint32_t anchor, uint32_t K);

}  // namespace sdsm

#endif  // SDSM_GRAPH_EMBED_H_
