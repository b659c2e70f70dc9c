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

#include "sdsm/splitter.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "sdsm/rng.h"
#include "sdsm/store.h"

namespace sdsm {

const char* split_name(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kIdt: return "idt";
    case Split::kOdt: return "odt";
    case Split::kExcluded: return "excluded";
  }
  return "?";
}

size_t SplitAssignment::count(Split s) const {
  size_t c = 0;
  for (Split v : split_of) {
    if (v == s) c++;
  }
  return c;
}

SplitResult split(const Corpus& corpus, const CitationGraph& graph,
                  const SplitSpec& spec) {
  if (graph.n != corpus.size()) {
    throw std::runtime_error("graph/corpus size mismatch");
  }
  if (spec.top_l < 1 || spec.idt_fraction <= 0.0 ||
      spec.idt_fraction >= 1.0 || spec.odt_tail_fraction < 0.0 ||
      spec.odt_tail_fraction >= 1.0) {
    throw std::runtime_error("invalid split spec");
  }

  SplitResult result;
  auto& split_of = result.assignment.split_of;
  split_of.assign(corpus.size(), Split::kExcluded);

  // (1) Papers without citation links stay excluded. Ordered map keeps
  // language iteration deterministic.
  std::map<std::string, std::vector<uint32_t>> by_language;
  for (uint32_t p = 0; p < corpus.size(); ++p) {
    if (graph.degree(p) == 0) continue;
    by_language[corpus.paper(p).language].push_back(p);
  }

  // (2) Rank languages by paper count, ties by code.
  std::vector<std::pair<std::string, size_t>> ranked;
  for (const auto& [lang, papers] : by_language) {
    ranked.emplace_back(lang, papers.size());
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
    return x.second != y.second ? x.second > y.second : x.first < y.first;
  });
  if (ranked.size() < spec.top_l) {
    result.warnings.push_back(
        "corpus has " + std::to_string(ranked.size()) +
        " languages, fewer than top_l=" + std::to_string(spec.top_l));
  }
  size_t head = std::min<size_t>(spec.top_l, ranked.size());

  for (size_t r = 0; r < ranked.size(); ++r) {
    const std::string& lang = ranked[r].first;
    std::vector<uint32_t> papers = by_language[lang];
    if (r >= head) {
      // (3) Tail languages go to ODT whole.
      for (uint32_t p : papers) split_of[p] = Split::kOdt;
      continue;
    }

    // Per-language stream keyed by the code, independent of rank order.
    Rng rng(mix_seed(spec.seed, fnv1a64(lang.data(), lang.size())));
    rng.shuffle(papers);

    size_t m = papers.size();
    size_t n_tail = size_t(std::llround(spec.odt_tail_fraction * double(m)));
    // (4) applies before the train/IDT split. A head language must seat at
    // least one train and one IDT paper; otherwise it moves to ODT whole.
    if (m < n_tail + 2) {
      result.warnings.push_back("head language '" + lang + "' too small (" +
                                std::to_string(m) + " papers), moved to ODT");
      for (uint32_t p : papers) split_of[p] = Split::kOdt;
      continue;
    }
    size_t rest = m - n_tail;
    size_t n_idt = size_t(std::llround(spec.idt_fraction * double(rest)));
    n_idt = std::clamp<size_t>(n_idt, 1, rest - 1);

    size_t at = 0;
    for (size_t i = 0; i < n_tail; ++i) split_of[papers[at++]] = Split::kOdt;
    for (size_t i = 0; i < n_idt; ++i) split_of[papers[at++]] = Split::kIdt;
    while (at < m) split_of[papers[at++]] = Split::kTrain;
  }

  // (5) English ODT papers need a non-English ODT neighbor. Removing an
  // English paper cannot strip another's non-English neighbor, so one pass
  // suffices.
  for (uint32_t p = 0; p < corpus.size(); ++p) {
    if (split_of[p] != Split::kOdt || corpus.paper(p).language != "en") {
      continue;
    }
    bool keep = false;
    for (const auto* adj : {&graph.out_adj[p], &graph.in_adj[p]}) {
      for (uint32_t q : *adj) {
        if (split_of[q] == Split::kOdt && corpus.paper(q).language != "en") {
          keep = true;
          break;
        }
      }
      if (keep) break;
    }
    if (!keep) split_of[p] = Split::kExcluded;
  }

  return result;
}

RelationPairSet split_pairs(const RelationPairSet& set,
                            const SplitAssignment& assignment,
                            Split target_split, const Corpus& corpus) {
  RelationPairSet out;
  out.kind = set.kind;
  out.directed = set.directed;
  for (const RelationPair& p : set.pairs) {
    if (assignment.split_of[p.a] != target_split ||
        assignment.split_of[p.b] != target_split) {
      continue;
    }
    if (target_split == Split::kOdt &&
        corpus.paper(p.a).language == "en" &&
        corpus.paper(p.b).language == "en") {
      continue;
    }
    out.pairs.push_back(p);
  }
  return out;
}

void save_assignment(const SplitAssignment& a, const std::string& path) {
  BinaryWriter w(path);
  w.write_header(store::kAssignmentFormat);
  w.write_u64(a.split_of.size());
  for (Split s : a.split_of) w.write_u8(uint8_t(s));
  w.close();
}

SplitAssignment load_assignment(const std::string& path) {
  BinaryReader r(path);
  r.check_header(store::kAssignmentFormat);
  uint64_t n = r.read_u64();
  SplitAssignment a;
  a.split_of.resize(n);
  for (Split& s : a.split_of) {
    uint8_t v = r.read_u8();
    if (v > uint8_t(Split::kExcluded)) {
      throw std::runtime_error("corrupt split value in " + path);
    }
    s = Split(v);
  }
  return a;
}

void export_assignment_text(const Corpus& corpus, const SplitAssignment& a,
                            const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (size_t p = 0; p < corpus.size(); ++p) {
    out << corpus.paper(p).paper_id << '\t' << split_name(a.split_of[p])
        << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace sdsm
