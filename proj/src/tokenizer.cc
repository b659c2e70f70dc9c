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

#include "sdsm/tokenizer.h"

namespace sdsm {

uint32_t decode_utf8(std::string_view text, size_t& pos) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  size_t n = text.size();
  uint8_t b0 = s[pos];
  if (b0 < 0x80) {
    pos += 1;
    return b0;
  }
  int len;
  uint32_t cp;
  if ((b0 & 0xe0) == 0xc0) {
    len = 2;
    cp = b0 & 0x1f;
  } else if ((b0 & 0xf0) == 0xe0) {
    len = 3;
    cp = b0 & 0x0f;
  } else if ((b0 & 0xf8) == 0xf0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    pos += 1;
    return 0xfffd;
  }
  if (pos + len > n) {
    pos += 1;
    return 0xfffd;
  }
  for (int i = 1; i < len; ++i) {
    uint8_t b = s[pos + i];
    if ((b & 0xc0) != 0x80) {
      pos += 1;
      return 0xfffd;
    }
    cp = (cp << 6) | (b & 0x3f);
  }
  // Reject overlong encodings and surrogates so every byte string has one
  // canonical decoding.
  if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
      (len == 4 && cp < 0x10000) || (cp >= 0xd800 && cp <= 0xdfff) ||
      cp > 0x10ffff) {
    pos += 1;
    return 0xfffd;
  }
  pos += len;
  return cp;
}

bool is_separator_codepoint(uint32_t cp) {
  if (cp <= 0x20 || cp == 0x7f) return true;  // controls and space
  if (cp < 0x80) {
    // ASCII punctuation: everything that is not a letter or digit.
    bool alnum = (cp >= '0' && cp <= '9') || (cp >= 'A' && cp <= 'Z') ||
                 (cp >= 'a' && cp <= 'z');
    return !alnum;
  }
  if (cp == 0xa0 || cp == 0xad) return true;        // nbsp, soft hyphen
  if (cp >= 0xa1 && cp <= 0xbf) return true;        // Latin-1 punctuation
  if (cp == 0xd7 || cp == 0xf7) return true;        // multiply, divide
  if (cp >= 0x2000 && cp <= 0x206f) return true;    // general punctuation
  if (cp >= 0x3000 && cp <= 0x303f) return true;    // CJK punctuation
  if (cp >= 0xff01 && cp <= 0xff0f) return true;    // fullwidth punctuation
  if (cp >= 0xff1a && cp <= 0xff20) return true;
  if (cp >= 0xff3b && cp <= 0xff40) return true;
  if (cp >= 0xff5b && cp <= 0xff65) return true;
  if (cp == 0xfffd) return true;                     // replacement
  return false;
}

bool is_cjk_codepoint(uint32_t cp) {
  if (cp >= 0x3040 && cp <= 0x30ff) return true;    // hiragana, katakana
  if (cp >= 0x3400 && cp <= 0x4dbf) return true;    // CJK extension A
  if (cp >= 0x4e00 && cp <= 0x9fff) return true;    // CJK unified
  if (cp >= 0xf900 && cp <= 0xfaff) return true;    // CJK compatibility
  return false;
}

std::vector<TokenSpan> Tokenizer::spans(std::string_view text) const {
  std::vector<TokenSpan> out;
  size_t pos = 0;
  size_t token_begin = 0;
  bool in_token = false;
  while (pos < text.size()) {
    size_t cp_begin = pos;
    uint32_t cp = decode_utf8(text, pos);
    if (is_separator_codepoint(cp)) {
      if (in_token) {
        out.push_back({token_begin, cp_begin});
        in_token = false;
      }
    } else if (is_cjk_codepoint(cp)) {
      // Ideographs and kana stand alone, approximating subword counts for
      // unsegmented scripts.
      if (in_token) {
        out.push_back({token_begin, cp_begin});
        in_token = false;
      }
      out.push_back({cp_begin, pos});
    } else {
      if (!in_token) {
        token_begin = cp_begin;
        in_token = true;
      }
    }
  }
  if (in_token) out.push_back({token_begin, text.size()});
  return out;
}

std::vector<std::string> Tokenizer::tokenize(std::string_view text) const {
  std::vector<TokenSpan> sp = spans(text);
  std::vector<std::string> out;
  out.reserve(sp.size());
  for (const TokenSpan& s : sp) {
    std::string tok(text.substr(s.begin, s.end - s.begin));
    if (options_.lowercase) {
      for (size_t i = 0; i < tok.size(); ++i) {
        uint8_t b = uint8_t(tok[i]);
        if (b >= 'A' && b <= 'Z') {
          tok[i] = char(b + 0x20);
        } else if (b == 0xc3 && i + 1 < tok.size()) {
          // Latin-1 uppercase letters are 0xc3 0x80..0x9e in UTF-8 (except
          // 0x97, the multiplication sign, which is a separator anyway).
          uint8_t b1 = uint8_t(tok[i + 1]);
          if (b1 >= 0x80 && b1 <= 0x9e && b1 != 0x97) {
            tok[i + 1] = char(b1 + 0x20);
          }
          ++i;
        }
      }
    }
    out.push_back(std::move(tok));
  }
  return out;
}

std::string Tokenizer::truncate(std::string_view text,
                                size_t max_tokens) const {
  std::vector<TokenSpan> sp = spans(text);
  if (sp.size() <= max_tokens) return std::string(text);
  if (max_tokens == 0) return std::string();
  return std::string(text.substr(0, sp[max_tokens - 1].end));
}

std::string Tokenizer::slice(std::string_view text,
                             const std::vector<TokenSpan>& spans, size_t first,
                             size_t last) {
  if (first > last || last >= spans.size()) return std::string();
  return std::string(
      text.substr(spans[first].begin, spans[last].end - spans[first].begin));
}

}  // namespace sdsm
