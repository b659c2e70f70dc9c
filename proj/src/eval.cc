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

#include "sdsm/eval.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sdsm {

namespace {

// relevance accumulation keyed by query ordinal, kept sorted for
// deterministic task layout.
EvalTask task_from_map(const std::string& name,
                       const std::map<uint32_t, std::vector<uint32_t>>& rel) {
  EvalTask task;
  task.name = name;
  for (const auto& [q, partners] : rel) {
    if (partners.empty()) continue;
    std::vector<uint32_t> sorted = partners;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    task.queries.push_back(q);
    task.relevance.push_back(std::move(sorted));
  }
  return task;
}

}  // namespace

std::vector<EvalTask> build_tasks(const RelationPairSet& dc,
                                  const RelationPairSet& cc,
                                  const RelationPairSet& bc) {
  std::map<uint32_t, std::vector<uint32_t>> rel;
  for (const RelationPair& p : dc.pairs) rel[p.a].push_back(p.b);
  std::vector<EvalTask> tasks;
  tasks.push_back(task_from_map("citation", rel));

  rel.clear();
  for (const RelationPair& p : cc.pairs) {
    rel[p.a].push_back(p.b);
    rel[p.b].push_back(p.a);
  }
  tasks.push_back(task_from_map("co-citation", rel));

  rel.clear();
  for (const RelationPair& p : bc.pairs) {
    rel[p.a].push_back(p.b);
    rel[p.b].push_back(p.a);
  }
  tasks.push_back(task_from_map("bib-coupling", rel));
  return tasks;
}

std::vector<uint32_t> split_pool(const SplitAssignment& assignment,
                                 Split split) {
  std::vector<uint32_t> pool;
  for (uint32_t p = 0; p < assignment.split_of.size(); ++p) {
    if (assignment.split_of[p] == split) pool.push_back(p);
  }
  return pool;
}

std::vector<uint32_t> rank_pool(const Matrix& embeddings,
                                const std::vector<uint32_t>& pool,
                                uint32_t query) {
  const double* qv = embeddings.row(query);
  // (-score, ordinal) sorts descending by score, ascending ordinal on ties.
  std::vector<std::pair<double, uint32_t>> scored;
  scored.reserve(pool.size());
  for (uint32_t p : pool) {
    if (p == query) continue;
    scored.emplace_back(-dot(qv, embeddings.row(p), embeddings.cols), p);
  }
  std::sort(scored.begin(), scored.end());
  std::vector<uint32_t> out;
  out.reserve(scored.size());
  for (const auto& [neg_score, p] : scored) out.push_back(p);
  return out;
}

double average_precision(const std::vector<uint32_t>& ranking,
                         const std::vector<uint32_t>& relevant_sorted) {
  if (relevant_sorted.empty()) {
    throw std::runtime_error("average_precision: empty relevant set");
  }
  size_t hits = 0;
  double sum = 0.0;
  for (size_t r = 0; r < ranking.size(); ++r) {
    if (std::binary_search(relevant_sorted.begin(), relevant_sorted.end(),
                           ranking[r])) {
      hits++;
      sum += double(hits) / double(r + 1);
    }
  }
  return sum / double(relevant_sorted.size());
}

double ndcg_at_10(const std::vector<uint32_t>& ranking,
                  const std::vector<uint32_t>& relevant_sorted) {
  if (relevant_sorted.empty()) {
    throw std::runtime_error("ndcg_at_10: empty relevant set");
  }
  double dcg = 0.0;
  size_t depth = std::min<size_t>(10, ranking.size());
  for (size_t r = 0; r < depth; ++r) {
    if (std::binary_search(relevant_sorted.begin(), relevant_sorted.end(),
                           ranking[r])) {
      dcg += 1.0 / std::log2(double(r + 2));
    }
  }
  double idcg = 0.0;
  size_t ideal = std::min<size_t>(relevant_sorted.size(), 10);
  for (size_t r = 0; r < ideal; ++r) {
    idcg += 1.0 / std::log2(double(r + 2));
  }
  return dcg / idcg;
}

EvalReport evaluate(const Matrix& embeddings,
                    const std::vector<EvalTask>& tasks,
                    const std::vector<uint32_t>& pool) {
  if (tasks.empty()) throw std::runtime_error("no evaluation tasks");
  EvalReport report;
  for (const EvalTask& task : tasks) {
    TaskScore score;
    score.task = task.name;
    score.num_queries = task.queries.size();
    double map_sum = 0.0, ndcg_sum = 0.0;
    for (size_t qi = 0; qi < task.queries.size(); ++qi) {
      std::vector<uint32_t> ranking =
          rank_pool(embeddings, pool, task.queries[qi]);
      double ap = average_precision(ranking, task.relevance[qi]);
      map_sum += ap;
      ndcg_sum += ndcg_at_10(ranking, task.relevance[qi]);
      score.per_query_ap.push_back(ap);
    }
    if (!task.queries.empty()) {
      score.map = map_sum / double(task.queries.size());
      score.ndcg10 = ndcg_sum / double(task.queries.size());
    }
    report.tasks.push_back(std::move(score));
  }
  double m = 0.0, n = 0.0;
  for (const TaskScore& t : report.tasks) {
    m += t.map;
    n += t.ndcg10;
  }
  report.avg_map = m / double(report.tasks.size());
  report.avg_ndcg10 = n / double(report.tasks.size());
  return report;
}

EvalReport aggregate_reports(const std::vector<EvalReport>& runs) {
  if (runs.empty()) throw std::runtime_error("no reports to aggregate");
  EvalReport agg;
  agg.checkpoint_id = "aggregate(" + std::to_string(runs.size()) + " runs)";
  for (size_t t = 0; t < runs[0].tasks.size(); ++t) {
    TaskScore score;
    score.task = runs[0].tasks[t].task;
    score.num_queries = runs[0].tasks[t].num_queries;
    for (const EvalReport& r : runs) {
      if (r.tasks.size() != runs[0].tasks.size() ||
          r.tasks[t].task != score.task) {
        throw std::runtime_error("reports disagree in task layout");
      }
      score.map += r.tasks[t].map;
      score.ndcg10 += r.tasks[t].ndcg10;
    }
    score.map /= double(runs.size());
    score.ndcg10 /= double(runs.size());
    agg.tasks.push_back(std::move(score));
  }
  for (const TaskScore& t : agg.tasks) {
    agg.avg_map += t.map;
    agg.avg_ndcg10 += t.ndcg10;
  }
  agg.avg_map /= double(agg.tasks.size());
  agg.avg_ndcg10 /= double(agg.tasks.size());
  return agg;
}

std::string report_table(const EvalReport& report) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  out << "task            queries      MAP   nDCG@10\n";
  for (const TaskScore& t : report.tasks) {
    out << t.task;
    for (size_t i = t.task.size(); i < 16; ++i) out << ' ';
    std::string q = std::to_string(t.num_queries);
    for (size_t i = q.size(); i < 7; ++i) out << ' ';
    out << q << "   ";
    out.width(6);
    out << t.map * 100.0 << "    ";
    out.width(6);
    out << t.ndcg10 * 100.0 << '\n';
  }
  out << "average";
  for (size_t i = 7; i < 16 + 10; ++i) out << ' ';
  out.width(6);
  out << report.avg_map * 100.0 << "    ";
  out.width(6);
  out << report.avg_ndcg10 * 100.0 << '\n';
  return out.str();
}

std::string report_jsonl(const EvalReport& report) {
  std::ostringstream out;
  nlohmann::json header;
  header["type"] = "header";
  header["seed"] = report.seed;
  header["checkpoint"] = report.checkpoint_id;
  header["avg_map"] = report.avg_map;
  header["avg_ndcg10"] = report.avg_ndcg10;
  out << header.dump() << '\n';
  for (const TaskScore& t : report.tasks) {
    nlohmann::json row;
    row["type"] = "task";
    row["task"] = t.task;
    row["queries"] = t.num_queries;
    row["map"] = t.map;
    row["ndcg10"] = t.ndcg10;
    out << row.dump() << '\n';
  }
  return out.str();
}

}  // namespace sdsm
