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

#ifndef SDSM_TOKENIZER_H_
#define SDSM_TOKENIZER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sdsm {

// Byte range of one token in the original text.
struct TokenSpan {
  size_t begin = 0;
  size_t end = 0;
};

struct TokenizerOptions {
  bool lowercase = true;
};

// Deterministic unicode word splitter. Tokens are maximal runs of
// non-separator codepoints, except that CJK ideographs and kana each form
// their own single-codepoint token. Separators are whitespace and
// punctuation (ASCII plus the common general-punctuation, CJK and
// fullwidth ranges). Invalid UTF-8 bytes are treated as separators, so
// the same byte string always yields the same token sequence.
class Tokenizer {
 public:
  explicit Tokenizer(TokenizerOptions options = {}) : options_(options) {}

  // Token texts, lowercased when the option is set (ASCII and Latin-1
  // letters only; other scripts pass through unchanged).
  std::vector<std::string> tokenize(std::string_view text) const;

  // Byte offsets of each token in the original text, in order.
  std::vector<TokenSpan> spans(std::string_view text) const;

  size_t count(std::string_view text) const { return spans(text).size(); }

  // Prefix of the original text ending at the last byte of token
  // max_tokens (or the whole text when it has fewer tokens). Cutting at a
  // token boundary never changes how the kept prefix tokenizes.
  std::string truncate(std::string_view text, size_t max_tokens) const;

  // Original bytes covering tokens [first, last], inclusive.
  static std::string slice(std::string_view text,
                           const std::vector<TokenSpan>& spans, size_t first,
                           size_t last);

 private:
  TokenizerOptions options_;
};

// Decodes one UTF-8 codepoint starting at text[pos]; advances pos past it.
// Malformed sequences decode as U+FFFD one byte at a time.
uint32_t decode_utf8(std::string_view text, size_t& pos);

bool is_separator_codepoint(uint32_t cp);
bool is_cjk_codepoint(uint32_t cp);

}  // namespace sdsm

#endif  // SDSM_TOKENIZER_H_
