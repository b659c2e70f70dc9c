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

#include "sdsm/corpus.h"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "sdsm/lang_detect.h"
#include "sdsm/store.h"

namespace sdsm {

bool Paper::operator==(const Paper& o) const {
  return paper_id == o.paper_id && title == o.title &&
         abstract_text == o.abstract_text && content == o.content &&
         language == o.language && categories == o.categories &&
         token_count_abstract == o.token_count_abstract &&
         token_count_content == o.token_count_content &&
         enrichment == o.enrichment;
}

void Corpus::add(Paper p) {
  auto [it, inserted] = index_.emplace(p.paper_id, papers_.size());
  if (!inserted) {
    throw std::runtime_error("duplicate paper_id: " + p.paper_id);
  }
  papers_.push_back(std::move(p));
}

size_t Corpus::find(const std::string& paper_id) const {
  auto it = index_.find(paper_id);
  return it == index_.end() ? kNotFound : it->second;
}

namespace {

std::string string_field(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) return "";
  return it->get<std::string>();
}

}  // namespace

IngestResult ingest_jsonl(const std::string& path,
                          const Tokenizer& tokenizer) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);

  IngestResult result;
  std::vector<Paper> papers;
  std::unordered_map<std::string, size_t> by_id;

  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    result.stats.records_read++;

    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      result.stats.skipped_malformed++;
      continue;
    }
    auto id_it = j.find("paper_id");
    if (id_it == j.end() || !id_it->is_string() ||
        id_it->get<std::string>().empty() || !j.contains("title") ||
        !j["title"].is_string()) {
      result.stats.skipped_malformed++;
      continue;
    }

    Paper p;
    p.paper_id = id_it->get<std::string>();
    p.title = j["title"].get<std::string>();
    p.abstract_text = string_field(j, "abstract");
    p.content = string_field(j, "content");
    if (p.title.empty() && p.abstract_text.empty()) {
      result.stats.dropped_empty++;
      continue;
    }
    p.language = detect_language(string_field(j, "language"),
                                 p.title + " " + p.abstract_text);
    auto cat_it = j.find("categories");
    if (cat_it != j.end() && cat_it->is_array()) {
      for (const auto& c : *cat_it) {
        if (c.is_string()) p.categories.push_back(c.get<std::string>());
      }
    }
    p.token_count_abstract = tokenizer.count(p.abstract_text);
    p.token_count_content = tokenizer.count(p.content);

    auto found = by_id.find(p.paper_id);
    if (found == by_id.end()) {
      by_id.emplace(p.paper_id, papers.size());
      papers.push_back(std::move(p));
    } else {
      result.stats.merged_duplicates++;
      Paper& kept = papers[found->second];
      // The record with the longer abstract wins whole; ties keep the
      // earlier one.
      if (p.abstract_text.size() > kept.abstract_text.size()) {
        kept = std::move(p);
      }
    }
  }

  for (Paper& p : papers) result.corpus.add(std::move(p));
  return result;
}

Corpus filter_for_training(const Corpus& corpus) {
  Corpus out;
  for (const Paper& p : corpus.papers()) {
    if (!p.abstract_text.empty()) out.add(p);
  }
  return out;
}

void save_corpus(const Corpus& corpus, const std::string& path) {
  BinaryWriter w(path);
  w.write_header(store::kCorpusFormat);
  w.write_u64(corpus.size());
  for (const Paper& p : corpus.papers()) {
    BufferWriter rec;
    rec.write_string(p.paper_id);
    rec.write_string(p.title);
    rec.write_string(p.abstract_text);
    rec.write_string(p.content);
    rec.write_string(p.language);
    rec.write_u64(p.categories.size());
    for (const std::string& c : p.categories) rec.write_string(c);
    rec.write_u64(p.token_count_abstract);
    rec.write_u64(p.token_count_content);
    rec.write_string(p.enrichment);
    w.write_string(rec.str());
  }
  w.close();
}

Corpus load_corpus(const std::string& path) {
  BinaryReader r(path);
  r.check_header(store::kCorpusFormat);
  uint64_t n = r.read_u64();
  Corpus corpus;
  for (uint64_t i = 0; i < n; ++i) {
    std::string buf = r.read_string();
    BufferReader rec(buf);
    Paper p;
    p.paper_id = rec.read_string();
    p.title = rec.read_string();
    p.abstract_text = rec.read_string();
    p.content = rec.read_string();
    p.language = rec.read_string();
    uint64_t ncat = rec.read_u64();
    for (uint64_t k = 0; k < ncat; ++k) {
      p.categories.push_back(rec.read_string());
    }
    p.token_count_abstract = rec.read_u64();
    p.token_count_content = rec.read_u64();
    p.enrichment = rec.read_string();
    corpus.add(std::move(p));
  }
  return corpus;
}

std::string embedding_text(const Paper& p) {
  if (p.abstract_text.empty()) return p.title;
  return p.title + ". " + p.abstract_text;
}

}  // namespace sdsm
