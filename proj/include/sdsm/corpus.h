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

#ifndef SDSM_CORPUS_H_
#define SDSM_CORPUS_H_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "sdsm/tokenizer.h"

namespace sdsm {

struct Paper {
  std::string paper_id;
  std::string title;
  std::string abstract_text;
  std::string content;  // optional full text; empty when absent
  std::string language;  // two-letter lowercase code or "und"
  std::vector<std::string> categories;
  uint64_t token_count_abstract = 0;
  uint64_t token_count_content = 0;
  // Provenance of an injected summary, e.g. "topn-truncation:64"; empty for
  // papers that were never enriched.
  std::string enrichment;

  bool operator==(const Paper& o) const;
};

class Corpus {
 public:
  static constexpr size_t kNotFound = size_t(-1);

  // Appends a paper; fails (throws std::runtime_error) on duplicate id.
  void add(Paper p);

  size_t size() const { return papers_.size(); }
  bool empty() const { return papers_.empty(); }
  const Paper& paper(size_t ordinal) const { return papers_[ordinal]; }
  Paper& paper(size_t ordinal) { return papers_[ordinal]; }
  const std::vector<Paper>& papers() const { return papers_; }

  // Ordinal of the paper with this id, or kNotFound.
  size_t find(const std::string& paper_id) const;
  bool contains(const std::string& paper_id) const {
    return find(paper_id) != kNotFound;
  }

  bool operator==(const Corpus& o) const { return papers_ == o.papers_; }

 private:
  std::vector<Paper> papers_;
  std::unordered_map<std::string, size_t> index_;
};

struct IngestStats {
  uint64_t records_read = 0;
  uint64_t skipped_malformed = 0;
  uint64_t dropped_empty = 0;   // empty title and empty abstract
  uint64_t merged_duplicates = 0;
};

struct IngestResult {
  Corpus corpus;
  IngestStats stats;
};

// Reads a JSON-lines corpus file. One object per line with keys paper_id,
// title, abstract, content, language, categories; unknown keys ignored.
// Lines that fail to parse or lack a string paper_id/title are counted and
// skipped. Duplicate ids are merged keeping the record with the longer
// abstract (ties keep the earlier record); the merged paper stays at the
// first occurrence's position. Records with empty title and empty abstract
// are dropped. Token counts and missing languages are filled in here.
// Throws std::runtime_error if the file cannot be read.
IngestResult ingest_jsonl(const std::string& path,
                          const Tokenizer& tokenizer = Tokenizer());

// Sub-corpus of papers with nonempty abstracts, order preserved.
Corpus filter_for_training(const Corpus& corpus);

// Binary corpus store round trip. Serialization is deterministic: saving
// the same corpus twice produces byte-identical files.
void save_corpus(const Corpus& corpus, const std::string& path);
Corpus load_corpus(const std::string& path);

// Text a paper is embedded from: "{title}. {abstract}". Papers without an
// abstract embed from the title alone.
std::string embedding_text(const Paper& p);

}  // namespace sdsm

#endif  // SDSM_CORPUS_H_
