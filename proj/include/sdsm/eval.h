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

#ifndef SDSM_EVAL_H_
#define SDSM_EVAL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "sdsm/citation_graph.h"
#include "sdsm/matrix.h"
#include "sdsm/splitter.h"

namespace sdsm {

// One retrieval task: per query, the set of relevant ordinals (sorted,
// never containing the query).
struct EvalTask {
  std::string name;
  std::vector<uint32_t> queries;
  std::vector<std::vector<uint32_t>> relevance;  // parallel to queries
};

// Tasks from split-filtered pair sets. The citation task is directed
// (query cites relevant); co-citation and bib-coupling are symmetric.
// Queries with empty relevance are dropped.
std::vector<EvalTask> build_tasks(const RelationPairSet& dc,
                                  const RelationPairSet& cc,
                                  const RelationPairSet& bc);

// Ordinals of the papers in one split, ascending.
std::vector<uint32_t> split_pool(const SplitAssignment& assignment,
                                 Split split);

// Whole pool ranked for one query: descending dot product, self excluded,
// ties by ascending ordinal.
std::vector<uint32_t> rank_pool(const Matrix& embeddings,
                                const std::vector<uint32_t>& pool,
                                uint32_t query);

// AP = (1/|rel|) * sum over relevant hits of (hits so far / hit rank).
// Throws on an empty relevant set (such queries are dropped upstream).
double average_precision(const std::vector<uint32_t>& ranking,
                         const std::vector<uint32_t>& relevant_sorted);

// Binary gains: DCG = sum over hits at rank r <= 10 of 1/log2(r+1),
// normalized by the ideal DCG of min(|rel|, 10) top-ranked hits.
double ndcg_at_10(const std::vector<uint32_t>& ranking,
                  const std::vector<uint32_t>& relevant_sorted);

struct TaskScore {
  std::string task;
  double map = 0.0;
  double ndcg10 = 0.0;
  size_t num_queries = 0;
  std::vector<double> per_query_ap;
};

struct EvalReport {
  std::vector<TaskScore> tasks;
  double avg_map = 0.0;    // arithmetic mean across tasks
  double avg_ndcg10 = 0.0;
  uint64_t seed = 0;
  std::string checkpoint_id;
};

// Scores every task over the shared pool. Throws on an empty task list.
EvalReport evaluate(const Matrix& embeddings,
                    const std::vector<EvalTask>& tasks,
                    const std::vector<uint32_t>& pool);

// Mean over runs of the same task layout (multi-seed aggregation).
EvalReport aggregate_reports(const std::vector<EvalReport>& runs);

// Human-readable table, values in percent.
std::string report_table(const EvalReport& report);

// One JSON object per line: a header line, then one line per task.
std::string report_jsonl(const EvalReport& report);

}  // namespace sdsm

#endif  // SDSM_EVAL_H_
