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

#include "sdsm/enrich.h"

#include <chrono>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace sdsm {

const char* summarizer_kind_name(SummarizerKind kind) {
  switch (kind) {
    case SummarizerKind::kTopnTruncation: return "topn-truncation";
    case SummarizerKind::kExternalService: return "external-service";
    case SummarizerKind::kOfflineStub: return "offline-stub";
  }
  return "?";
}

const std::string& prompt_for_length(uint32_t max_tokens) {
  static const std::string kShort =
      "Summarize the passage below with no more than 30 words in English.";
  static const std::string kLong =
      "Extract the three most important findings from the passage below, "
      "and translate them to English.";
  return max_tokens <= 64 ? kShort : kLong;
}

std::string summarize_topn(const Paper& paper, TranslationProvider& translate,
                           uint32_t max_tokens) {
  Tokenizer tok;
  return tok.truncate(translate.to_english(paper.abstract_text), max_tokens);
}

namespace {

// endpoint "http://host:port/path" -> (base "http://host:port", "/path")
std::pair<std::string, std::string> split_endpoint(const std::string& url) {
  size_t scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw std::runtime_error("endpoint missing scheme: " + url);
  }
  size_t slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

void append_audit(const std::string& path, const nlohmann::json& entry) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::app);
  if (out) out << entry.dump() << '\n';
}

}  // namespace

std::string external_summarize(const std::string& text,
                               const SummarizerConfig& config,
                               const std::string& prompt,
                               uint32_t max_tokens) {
  auto [base, path] = split_endpoint(config.endpoint);
  httplib::Client client(base);
  client.set_connection_timeout(std::chrono::milliseconds(
      int64_t(config.timeout_seconds * 1000)));
  client.set_read_timeout(
      std::chrono::milliseconds(int64_t(config.timeout_seconds * 1000)));
  if (!config.auth_token.empty()) {
    client.set_default_headers(
        {{"Authorization", "Bearer " + config.auth_token}});
  }

  nlohmann::json request;
  request["text"] = text;
  request["prompt"] = prompt;
  request["max_tokens"] = max_tokens;
  const std::string body = request.dump();

  std::string last_error;
  uint32_t attempts = std::max<uint32_t>(config.max_retries, 1);
  for (uint32_t attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0) {
      // Bounded exponential backoff: 100ms, 200ms, 400ms, ... capped at 2s.
      auto delay = std::chrono::milliseconds(
          std::min<int64_t>(100LL << (attempt - 1), 2000));
      std::this_thread::sleep_for(delay);
    }
    httplib::Result res = client.Post(path, body, "application/json");

    nlohmann::json audit;
    audit["attempt"] = attempt;
    audit["endpoint"] = config.endpoint;
    audit["request"] = request;
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      audit["error"] = last_error;
      append_audit(config.audit_log_path, audit);
      continue;
    }
    audit["status"] = res->status;
    audit["response"] = res->body;
    append_audit(config.audit_log_path, audit);
    if (res->status != 200) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    nlohmann::json parsed = nlohmann::json::parse(res->body, nullptr, false);
    if (parsed.is_discarded() || !parsed.contains("summary") ||
        !parsed["summary"].is_string()) {
      last_error = "malformed summarizer response";
      continue;
    }
    Tokenizer tok;
    return tok.truncate(parsed["summary"].get<std::string>(), max_tokens);
  }
  throw std::runtime_error("summarizer failed after " +
                           std::to_string(attempts) + " attempts: " +
                           last_error);
}

std::string enriched_embedding_text(const Paper& paper) {
  return "Title: " + paper.title + ". Abstract: " + paper.abstract_text;
}

namespace {

struct SummaryOutcome {
  std::string text;
  bool fallback = false;
};

SummaryOutcome make_summary(const Paper& paper,
                            const SummarizerConfig& config,
                            TranslationProvider& translate) {
  SummaryOutcome out;
  switch (config.kind) {
    case SummarizerKind::kTopnTruncation:
      out.text = summarize_topn(paper, translate, config.max_tokens);
      return out;
    case SummarizerKind::kOfflineStub: {
      Tokenizer tok;
      out.text = tok.truncate(config.stub_text, config.max_tokens);
      return out;
    }
    case SummarizerKind::kExternalService:
      try {
        out.text =
            external_summarize(paper.abstract_text, config,
                               prompt_for_length(config.max_tokens),
                               config.max_tokens);
      } catch (const std::exception&) {
        out.text = summarize_topn(paper, translate, config.max_tokens);
        out.fallback = true;
      }
      return out;
  }
  throw std::runtime_error("unknown summarizer kind");
}

}  // namespace

EnrichedDocument enrich(const Paper& paper, uint32_t ordinal,
                        const SummarizerConfig& config,
                        TranslationProvider& translate) {
  EnrichedDocument doc;
  doc.ordinal = ordinal;
  if (paper.language == "en") {
    doc.enriched_text = enriched_embedding_text(paper);
    return doc;
  }
  SummaryOutcome summary = make_summary(paper, config, translate);
  Paper enriched = paper;
  enriched.abstract_text =
      "(" + summary.text + ") " + paper.abstract_text;
  doc.enriched_text = enriched_embedding_text(enriched);
  doc.summary_used = true;
  doc.fallback_used = summary.fallback;
  return doc;
}

Corpus enrich_corpus(const Corpus& corpus, const SummarizerConfig& config,
                     TranslationProvider& translate) {
  Tokenizer tok;
  Corpus out;
  for (uint32_t ordinal = 0; ordinal < corpus.size(); ++ordinal) {
    Paper p = corpus.paper(ordinal);
    if (p.language != "en") {
      SummaryOutcome summary = make_summary(p, config, translate);
      p.abstract_text = "(" + summary.text + ") " + p.abstract_text;
      p.token_count_abstract = tok.count(p.abstract_text);
      p.enrichment = std::string(summarizer_kind_name(config.kind)) + ":" +
                     std::to_string(config.max_tokens) +
                     (summary.fallback ? ",fallback" : "");
    }
    out.add(std::move(p));
  }
  return out;
}

}  // namespace sdsm
