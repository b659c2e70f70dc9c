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

#ifndef SDSM_ENRICH_H_
#define SDSM_ENRICH_H_

#include <cstdint>
#include <string>

#include "sdsm/corpus.h"

namespace sdsm {

enum class SummarizerKind {
  kTopnTruncation,   // translated abstract truncated to max_tokens
  kExternalService,  // HTTP JSON endpoint, topn fallback on failure
  kOfflineStub,      // fixed text, for tests
};

const char* summarizer_kind_name(SummarizerKind kind);

struct SummarizerConfig {
  SummarizerKind kind = SummarizerKind::kTopnTruncation;
  uint32_t max_tokens = 64;  // summary cap; 64 or 128 in practice
  std::string endpoint;      // http://host:port/path
  std::string auth_token;
  double timeout_seconds = 10.0;
  uint32_t max_retries = 3;
  std::string stub_text;
  std::string audit_log_path;  // empty disables request/response logging
};

// Translation is an injectable dependency; the identity stub stands in for
// a live system during tests and offline runs.
class TranslationProvider {
 public:
  virtual ~TranslationProvider() = default;
  virtual std::string to_english(const std::string& text) = 0;
};

class IdentityTranslation : public TranslationProvider {
 public:
  std::string to_english(const std::string& text) override { return text; }
};

struct EnrichedDocument {
  uint32_t ordinal = 0;
  std::string enriched_text;
  bool summary_used = false;
  bool fallback_used = false;
};

// The generative prompts, selected by target summary length.
const std::string& prompt_for_length(uint32_t max_tokens);

// Translated abstract truncated to max_tokens tokens.
std::string summarize_topn(const Paper& paper, TranslationProvider& translate,
                           uint32_t max_tokens);

// POSTs {text, prompt, max_tokens} as JSON and expects {summary}; the
// response is truncated to max_tokens. Bounded exponential backoff between
// attempts; throws after the retry budget. Request/response pairs append
// to config.audit_log_path when set.
std::string external_summarize(const std::string& text,
                               const SummarizerConfig& config,
                               const std::string& prompt,
                               uint32_t max_tokens);

// Non-English papers get "Title: {title}. Abstract: ({summary})
// {abstract}"; English papers get the plain template with no parenthetical
// and summary_used=false. External summarizer failures fall back to
// truncation and set fallback_used.
EnrichedDocument enrich(const Paper& paper, uint32_t ordinal,
                        const SummarizerConfig& config,
                        TranslationProvider& translate);

// Enriched copy of the corpus: non-English abstracts gain the
// parenthesized summary and a provenance tag (e.g. "topn-truncation:64");
// English papers pass through untouched.
Corpus enrich_corpus(const Corpus& corpus, const SummarizerConfig& config,
                     TranslationProvider& translate);

// "Title: {title}. Abstract: {abstract}" over the (possibly enriched)
// stored fields; equals the enrich() output for both paper kinds.
std::string enriched_embedding_text(const Paper& paper);

}  // namespace sdsm

#endif  // SDSM_ENRICH_H_
