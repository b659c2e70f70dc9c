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

#include "sdsm/lang_detect.h"

#include <array>
#include <unordered_map>
#include <vector>

#include "sdsm/tokenizer.h"

namespace sdsm {
namespace {

struct Profile {
  const char* code;
  // Frequent character trigrams, space-padded at word boundaries.
  std::vector<std::string_view> trigrams;
};

// Hand-picked high-frequency trigrams per language. Not a full detector;
// good enough to separate the built-in set on sentence-length text.
const std::vector<Profile>& profiles() {
  static const std::vector<Profile> kProfiles = {
      {"en",
       {" th", "the", "he ", " an", "and", "nd ", " of", "of ", "ing",
        "ng ", "ion", "tio", "ati", " to", "to ", " in", "in ", "ed ",
        " is", "is ", " be", "es ", "ent", " co", "on ", "er ", " re",
        "re ", "at ", " a ", "hat", " wi", "ith", "th ", "for", " fo",
        "ver", "ts "}},
      {"de",
       {" de", "der", "die", " di", "ie ", "er ", " un", "und", "nd ",
        "ein", " ei", "ung", "sch", " sc", "ich", "ch ", "cht", "en ",
        " ge", "gen", "ver", " ve", "ten", "ber", " be", "das", " da",
        "eit", "it ", "ne ", " zu", "zu ", "ren", "lic", "ng ", "isc",
        "che", "hen"}},
      {"fr",
       {" de", "de ", " le", "le ", "les", "es ", "ent", "nt ", " la",
        "la ", "ion", "tio", " co", "que", " qu", "ue ", " pa", "par",
        "on ", " et", "et ", " pr", "our", "r l", "e d", "e l", "ait",
        "eur", "s d", " un", "un ", "une", "ur ", "res", " re", "ais",
        "ons", "ans"}},
      {"es",
       {" de", "de ", " la", "la ", "os ", " co", "con", " el", "el ",
        "en ", " en", "es ", "as ", "ión", "ció", "aci", "nte", " es",
        "ado", "do ", "que", " qu", "ue ", "los", " lo", "ar ", "ra ",
        " se", " un", "un ", "una", "ent", "e l", "a d", "o d", "ada",
        "res", "por"}},
      {"it",
       {" di", "di ", " de", "del", "la ", " la", "to ", "re ", "one",
        "ion", "zio", "azi", "che", " ch", "he ", "ell", "lla", "ne ",
        " co", "con", "ent", "ti ", "ato", " in", "in ", " e ", "no ",
        "ia ", "e d", "i d", "per", " pe", "ale", "nti", "gli", " al",
        "lle", "ona"}},
      {"pt",
       {" de", "de ", " co", "com", "os ", "as ", "ão ", "ção", "açã",
        " a ", "da ", " da", "do ", " do", "que", " qu", "ue ", "ent",
        " es", "es ", "em ", " em", "ra ", "ar ", " pa", "par", "ara",
        " se", "o d", "ade", "dad", " um", "um ", "uma", "ais", "nto",
        "est", "res"}},
      {"nl",
       {" de", "de ", "en ", " en", "van", " va", "an ", "et ", " he",
        "het", " ee", "een", "n d", "er ", " ge", "ing", "ng ", "ond",
        " on", "aar", "ijk", "sch", " be", "ver", " ve", "oor", " vo",
        "or ", "nde", "den", " da", "dat", "at ", "te ", " te", "ste",
        "ere", "ijn"}},
      {"sv",
       {" oc", "och", "ch ", " at", "att", "tt ", " de", "det", "en ",
        " en", "ar ", "er ", "för", " fö", "ör ", " so", "som", "om ",
        "til", "ill", " ti", "ing", "ng ", "et ", "and", "nde", " ha",
        "har", " me", "med", "ed ", "der", " in", "av ", " av", "ka ",
        "na ", "ter"}},
  };
  return kProfiles;
}

struct ScriptCounts {
  size_t latin = 0;
  size_t cyrillic = 0;
  size_t greek = 0;
  size_t arabic = 0;
  size_t hebrew = 0;
  size_t devanagari = 0;
  size_t han = 0;
  size_t kana = 0;
  size_t hangul = 0;
  size_t total() const {
    return latin + cyrillic + greek + arabic + hebrew + devanagari + han +
           kana + hangul;
  }
};

ScriptCounts count_scripts(std::string_view text) {
  ScriptCounts c;
  size_t pos = 0;
  while (pos < text.size()) {
    uint32_t cp = decode_utf8(text, pos);
    if ((cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z') ||
        (cp >= 0xc0 && cp <= 0x24f && cp != 0xd7 && cp != 0xf7)) {
      c.latin++;
    } else if (cp >= 0x400 && cp <= 0x4ff) {
      c.cyrillic++;
    } else if (cp >= 0x370 && cp <= 0x3ff) {
      c.greek++;
    } else if (cp >= 0x600 && cp <= 0x6ff) {
      c.arabic++;
    } else if (cp >= 0x590 && cp <= 0x5ff) {
      c.hebrew++;
    } else if (cp >= 0x900 && cp <= 0x97f) {
      c.devanagari++;
    } else if ((cp >= 0x4e00 && cp <= 0x9fff) ||
               (cp >= 0x3400 && cp <= 0x4dbf)) {
      c.han++;
    } else if (cp >= 0x3040 && cp <= 0x30ff) {
      c.kana++;
    } else if ((cp >= 0xac00 && cp <= 0xd7af) ||
               (cp >= 0x1100 && cp <= 0x11ff)) {
      c.hangul++;
    }
  }
  return c;
}

// Codepoint trigrams of " token ", returned as UTF-8 byte slices.
void collect_trigrams(const std::string& padded,
                      std::unordered_map<std::string, size_t>& counts,
                      size_t& total) {
  std::vector<size_t> bounds;
  size_t pos = 0;
  bounds.push_back(0);
  while (pos < padded.size()) {
    decode_utf8(padded, pos);
    bounds.push_back(pos);
  }
  size_t ncp = bounds.size() - 1;
  if (ncp < 3) return;
  for (size_t i = 0; i + 3 <= ncp; ++i) {
    counts[padded.substr(bounds[i], bounds[i + 3] - bounds[i])]++;
    total++;
  }
}

}  // namespace

std::string normalize_language_code(const std::string& raw) {
  size_t b = 0, e = raw.size();
  while (b < e && uint8_t(raw[b]) <= ' ') b++;
  while (e > b && uint8_t(raw[e - 1]) <= ' ') e--;
  if (e - b != 2) return "";
  char c0 = raw[b], c1 = raw[b + 1];
  if (c0 >= 'A' && c0 <= 'Z') c0 = char(c0 + 0x20);
  if (c1 >= 'A' && c1 <= 'Z') c1 = char(c1 + 0x20);
  if (c0 < 'a' || c0 > 'z' || c1 < 'a' || c1 > 'z') return "";
  return std::string{c0, c1};
}

std::string detect_language_heuristic(std::string_view text, double floor) {
  ScriptCounts sc = count_scripts(text);
  size_t total = sc.total();
  if (total == 0) return "und";

  // Non-Latin scripts identify the language directly. Kana before han:
  // Japanese text mixes both.
  if (sc.kana * 20 >= total) return "ja";
  if (sc.han * 2 >= total) return "zh";
  if (sc.hangul * 2 >= total) return "ko";
  if (sc.cyrillic * 2 >= total) return "ru";
  if (sc.greek * 2 >= total) return "el";
  if (sc.arabic * 2 >= total) return "ar";
  if (sc.hebrew * 2 >= total) return "he";
  if (sc.devanagari * 2 >= total) return "hi";
  if (sc.latin * 2 < total) return "und";

  Tokenizer tok;
  std::unordered_map<std::string, size_t> counts;
  size_t ntri = 0;
  for (const std::string& t : tok.tokenize(text)) {
    collect_trigrams(" " + t + " ", counts, ntri);
  }
  if (ntri == 0) return "und";

  std::string best = "und";
  double best_score = floor;
  for (const Profile& p : profiles()) {
    size_t matched = 0;
    for (std::string_view g : p.trigrams) {
      auto it = counts.find(std::string(g));
      if (it != counts.end()) matched += it->second;
    }
    double score = double(matched) / double(ntri);
    if (score > best_score) {
      best_score = score;
      best = p.code;
    }
  }
  return best;
}

std::string detect_language(const std::string& raw_field,
                            std::string_view text, double floor) {
  std::string code = normalize_language_code(raw_field);
  if (!code.empty()) return code;
  return detect_language_heuristic(text, floor);
}

}  // namespace sdsm
