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

#include "sdsm/sampler.h"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "sdsm/rng.h"
#include "sdsm/store.h"

namespace sdsm {

std::vector<SnippetPair> sample_snippet_pairs(const Corpus& corpus,
                                              size_t count,
                                              uint32_t min_len,
                                              uint32_t max_len,
                                              uint64_t seed) {
  if (min_len == 0 || max_len < min_len) {
    throw std::runtime_error("invalid snippet length bounds");
  }
  Tokenizer tok;

  // Eligible (paper, field) sources: a field must seat two disjoint
  // min_len spans.
  struct Source {
    uint32_t paper;
    const std::string* text;
    std::vector<TokenSpan> spans;
  };
  std::vector<Source> sources;
  std::vector<std::vector<size_t>> by_paper(corpus.size());
  std::vector<uint32_t> eligible;
  for (uint32_t p = 0; p < corpus.size(); ++p) {
    const Paper& paper = corpus.paper(p);
    for (const std::string* field : {&paper.abstract_text, &paper.content}) {
      std::vector<TokenSpan> spans = tok.spans(*field);
      if (spans.size() < size_t(2) * min_len) continue;
      by_paper[p].push_back(sources.size());
      sources.push_back({p, field, std::move(spans)});
    }
    if (!by_paper[p].empty()) eligible.push_back(p);
  }
  if (eligible.empty()) {
    throw std::runtime_error("no papers long enough for snippet pairs");
  }

  Rng rng(seed);
  std::vector<SnippetPair> out;
  out.reserve(count);
  for (size_t c = 0; c < count; ++c) {
    uint32_t p = eligible[rng.uniform(eligible.size())];
    const auto& srcs = by_paper[p];
    const Source& src = sources[srcs[rng.uniform(srcs.size())]];
    size_t total = src.spans.size();

    // First length leaves room for a disjoint second span of min_len.
    size_t cap1 = std::min<size_t>(max_len, total - min_len);
    size_t l1 = rng.uniform_int(min_len, cap1);
    size_t cap2 = std::min<size_t>(max_len, total - l1);
    size_t l2 = rng.uniform_int(min_len, cap2);

    size_t start1 = rng.uniform_int(0, total - l1 - l2);
    size_t start2 = rng.uniform_int(start1 + l1, total - l2);

    SnippetPair pair;
    pair.source_paper = p;
    pair.a_text = Tokenizer::slice(*src.text, src.spans, start1,
                                   start1 + l1 - 1);
    pair.b_text = Tokenizer::slice(*src.text, src.spans, start2,
                                   start2 + l2 - 1);
    if (rng.uniform(2) == 1) std::swap(pair.a_text, pair.b_text);
    out.push_back(std::move(pair));
  }
  return out;
}

std::vector<TripletExample> sample_specter_triplets(
    const RelationPairSet& pairset, const CitationGraph& graph,
    uint32_t per_anchor, uint64_t seed) {
  Rng rng(seed);
  std::vector<TripletExample> out;
  std::vector<uint32_t> candidates;
  for (const RelationPair& pair : pairset.pairs) {
    uint32_t a = pair.a, b = pair.b;
    if (a >= graph.n || b >= graph.n) {
      throw std::runtime_error("pair endpoint outside graph");
    }
    candidates.clear();
    for (uint32_t c : graph.out_adj[b]) {
      if (c != a && c != b && !graph.has_edge(a, c)) candidates.push_back(c);
    }
    if (candidates.empty()) {
      out.push_back({a, b, std::nullopt});
      continue;
    }
    size_t take = std::min<size_t>(per_anchor, candidates.size());
    for (size_t i : rng.sample_indices(candidates.size(), take)) {
      out.push_back({a, b, candidates[i]});
    }
  }
  return out;
}

ScinclResult sample_scincl(const Matrix& embeddings, uint32_t i, uint32_t k,
                           uint32_t n, uint32_t per_anchor, uint64_t seed) {
  if (embeddings.rows == 0) throw std::runtime_error("empty embedding table");
  if (i == 0 || k == 0 || i + n >= k) {
    throw std::runtime_error("rank windows must satisfy 1 <= i, i+n < k");
  }
  size_t num = embeddings.rows;
  size_t d = embeddings.cols;

  ScinclResult result;
  // Deepest rank available once self is excluded.
  size_t max_rank = num - 1;
  uint32_t pos_lo = i, pos_hi = i + n;
  uint32_t neg_lo = k, neg_hi = k + n;
  if (neg_hi > max_rank) {
    result.warnings.push_back(
        "rank window [" + std::to_string(neg_lo) + "," +
        std::to_string(neg_hi) + "] clipped to pool of " +
        std::to_string(max_rank) + " neighbors");
    neg_hi = uint32_t(std::min<size_t>(neg_hi, max_rank));
    neg_lo = uint32_t(std::min<size_t>(neg_lo, max_rank));
    pos_hi = uint32_t(std::min<size_t>(pos_hi, max_rank));
    pos_lo = uint32_t(std::min<size_t>(pos_lo, max_rank));
  }

  Rng rng(seed);
  std::vector<std::pair<double, uint32_t>> scored(num);
  std::vector<uint32_t> pos_window, neg_window;
  for (uint32_t anchor = 0; anchor < num; ++anchor) {
    const double* av = embeddings.row(anchor);
    scored.clear();
    for (uint32_t other = 0; other < num; ++other) {
      if (other == anchor) continue;
      // Descending score; ties by ascending ordinal via the pair's second
      // component under the flipped comparison below.
      scored.emplace_back(-dot(av, embeddings.row(other), d), other);
    }
    std::sort(scored.begin(), scored.end());

    pos_window.clear();
    neg_window.clear();
    for (uint32_t r = pos_lo; r <= pos_hi; ++r) {
      pos_window.push_back(scored[r - 1].second);  // rank 1 = index 0
    }
    for (uint32_t r = neg_lo; r <= neg_hi; ++r) {
      neg_window.push_back(scored[r - 1].second);
    }
    rng.shuffle(pos_window);
    rng.shuffle(neg_window);
    size_t take = std::min<size_t>(
        {size_t(per_anchor), pos_window.size(), neg_window.size()});
    for (size_t t = 0; t < take; ++t) {
      result.triplets.push_back({anchor, pos_window[t], neg_window[t]});
    }
  }
  return result;
}

std::vector<TripletExample> triplets_from_pairs(const RelationPairSet& set) {
  std::vector<TripletExample> out;
  out.reserve(set.pairs.size());
  for (const RelationPair& p : set.pairs) {
    out.push_back({p.a, p.b, std::nullopt});
  }
  return out;
}

namespace {

uint64_t pair_key(uint32_t x, uint32_t y) {
  return (uint64_t(std::min(x, y)) << 32) | std::max(x, y);
}

// Known anchor-positive pairs of the whole triplet list, as unordered keys.
std::unordered_set<uint64_t> positive_keys(
    const std::vector<TripletExample>& triplets) {
  std::unordered_set<uint64_t> keys;
  keys.reserve(triplets.size() * 2);
  for (const TripletExample& t : triplets) {
    keys.insert(pair_key(t.anchor, t.positive));
  }
  return keys;
}

}  // namespace

std::vector<Batch> make_batches(const std::vector<TripletExample>& triplets,
                                const Corpus& corpus, size_t n,
                                uint64_t seed) {
  if (n < 2) throw std::runtime_error("batch size must be at least 2");
  if (triplets.size() < n) {
    throw std::runtime_error("fewer triplets than one batch");
  }
  std::unordered_set<uint64_t> positives = positive_keys(triplets);

  std::vector<TripletExample> pool = triplets;
  Rng rng(seed);
  rng.shuffle(pool);

  std::vector<Batch> batches;
  std::vector<TripletExample> current;
  std::unordered_set<uint32_t> left_used, right_used;

  auto admissible = [&](const TripletExample& t) {
    // Right-side entries of the candidate: its positive and, when present,
    // its hard negative.
    uint32_t new_right[2] = {t.positive,
                             t.hard_negative.value_or(t.positive)};
    size_t n_new = t.hard_negative ? 2 : 1;
    for (size_t r = 0; r < n_new; ++r) {
      if (right_used.count(new_right[r])) return false;
    }
    if (t.hard_negative &&
        (t.positive == *t.hard_negative || t.anchor == *t.hard_negative ||
         positives.count(pair_key(t.anchor, *t.hard_negative)))) {
      return false;
    }
    if (left_used.count(t.anchor)) return false;

    for (const TripletExample& s : current) {
      // New row against existing columns: no off-diagonal positive, no
      // self-similarity cell.
      uint32_t old_right[2] = {s.positive,
                               s.hard_negative.value_or(s.positive)};
      size_t n_old = s.hard_negative ? 2 : 1;
      for (size_t r = 0; r < n_old; ++r) {
        if (old_right[r] == t.anchor) return false;
        if (positives.count(pair_key(t.anchor, old_right[r]))) return false;
      }
      // Existing rows against new columns.
      for (size_t r = 0; r < n_new; ++r) {
        if (new_right[r] == s.anchor) return false;
        if (positives.count(pair_key(s.anchor, new_right[r]))) return false;
      }
    }
    return true;
  };

  auto flush = [&]() {
    Batch b;
    for (const TripletExample& t : current) {
      b.left_texts.push_back(embedding_text(corpus.paper(t.anchor)));
      b.right_texts.push_back(embedding_text(corpus.paper(t.positive)));
    }
    for (const TripletExample& t : current) {
      if (t.hard_negative) {
        b.right_texts.push_back(
            embedding_text(corpus.paper(*t.hard_negative)));
      }
    }
    batches.push_back(std::move(b));
    current.clear();
    left_used.clear();
    right_used.clear();
  };

  std::vector<TripletExample> deferred;
  while (pool.size() + deferred.size() + current.size() >= n) {
    // Colliding triplets wait for the next batch, keeping order.
    deferred.insert(deferred.end(), pool.begin(), pool.end());
    pool = std::move(deferred);
    deferred.clear();

    bool progressed = false;
    for (TripletExample& t : pool) {
      if (current.size() < n && admissible(t)) {
        left_used.insert(t.anchor);
        right_used.insert(t.positive);
        if (t.hard_negative) right_used.insert(*t.hard_negative);
        current.push_back(t);
        progressed = true;
        if (current.size() == n) flush();
      } else {
        deferred.push_back(t);
      }
    }
    pool.clear();
    if (!progressed) break;  // leftovers are mutually incompatible
  }
  return batches;
}

std::vector<TripletTextBatch> make_triplet_batches(
    const std::vector<TripletExample>& triplets, const Corpus& corpus,
    size_t n, uint64_t seed) {
  if (n == 0) throw std::runtime_error("batch size must be positive");
  std::vector<TripletExample> with_neg;
  for (const TripletExample& t : triplets) {
    if (t.hard_negative) with_neg.push_back(t);
  }
  if (with_neg.size() < n) {
    throw std::runtime_error("fewer hard-negative triplets than one batch");
  }
  Rng rng(seed);
  rng.shuffle(with_neg);

  std::vector<TripletTextBatch> batches;
  for (size_t at = 0; at + n <= with_neg.size(); at += n) {
    TripletTextBatch b;
    for (size_t i = 0; i < n; ++i) {
      const TripletExample& t = with_neg[at + i];
      b.anchors.push_back(embedding_text(corpus.paper(t.anchor)));
      b.positives.push_back(embedding_text(corpus.paper(t.positive)));
      b.negatives.push_back(embedding_text(corpus.paper(*t.hard_negative)));
    }
    batches.push_back(std::move(b));
  }
  return batches;
}

std::vector<Batch> make_snippet_batches(const std::vector<SnippetPair>& pairs,
                                        size_t n, uint64_t seed) {
  if (n < 2) throw std::runtime_error("batch size must be at least 2");
  if (pairs.size() < n) {
    throw std::runtime_error("fewer snippet pairs than one batch");
  }
  std::vector<size_t> order(pairs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);

  std::vector<Batch> batches;
  Batch current;
  std::unordered_set<uint32_t> papers_used;
  std::vector<size_t> deferred;

  while (order.size() + deferred.size() + current.size() >= n) {
    deferred.insert(deferred.end(), order.begin(), order.end());
    order = std::move(deferred);
    deferred.clear();

    bool progressed = false;
    for (size_t idx : order) {
      const SnippetPair& p = pairs[idx];
      if (current.size() < n && !papers_used.count(p.source_paper)) {
        papers_used.insert(p.source_paper);
        current.left_texts.push_back(p.a_text);
        current.right_texts.push_back(p.b_text);
        progressed = true;
        if (current.size() == n) {
          batches.push_back(std::move(current));
          current = Batch();
          papers_used.clear();
        }
      } else {
        deferred.push_back(idx);
      }
    }
    order.clear();
    if (!progressed) break;
  }
  return batches;
}

void save_triplets(const std::vector<TripletExample>& triplets,
                   const std::string& path) {
  BinaryWriter w(path);
  w.write_header(store::kTripletFormat);
  w.write_u64(triplets.size());
  for (const TripletExample& t : triplets) {
    w.write_u32(t.anchor);
    w.write_u32(t.positive);
    w.write_u8(t.hard_negative ? 1 : 0);
    w.write_u32(t.hard_negative.value_or(0));
  }
  w.close();
}

std::vector<TripletExample> load_triplets(const std::string& path) {
  BinaryReader r(path);
  r.check_header(store::kTripletFormat);
  uint64_t n = r.read_u64();
  std::vector<TripletExample> out(n);
  for (TripletExample& t : out) {
    t.anchor = r.read_u32();
    t.positive = r.read_u32();
    bool has = r.read_u8() != 0;
    uint32_t neg = r.read_u32();
    if (has) t.hard_negative = neg;
  }
  return out;
}

void export_triplets_text(const std::vector<TripletExample>& triplets,
                          const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const TripletExample& t : triplets) {
    out << corpus.paper(t.anchor).paper_id << '\t'
        << corpus.paper(t.positive).paper_id << '\t';
    if (t.hard_negative) {
      out << corpus.paper(*t.hard_negative).paper_id;
    } else {
      out << '-';
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace sdsm
