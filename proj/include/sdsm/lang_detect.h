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

#ifndef SDSM_LANG_DETECT_H_
#define SDSM_LANG_DETECT_H_

#include <string>
#include <string_view>

namespace sdsm {

// Minimum fraction of matched character trigrams for the heuristic to
// report a language instead of "und".
constexpr double kLangScoreFloor = 0.10;

// "De" or " FR " → "de"/"fr"; anything that is not two ASCII letters (after
// trimming) normalizes to the empty string.
std::string normalize_language_code(const std::string& raw);

// Language of a record. A valid raw field is returned unchanged (after case
// normalization). Otherwise: non-Latin scripts resolve by codepoint ranges;
// Latin-script text is scored against built-in character-trigram profiles
// (en, de, fr, es, it, pt, nl, sv). Returns "und" when nothing clears the
// floor. Never fails.
std::string detect_language(const std::string& raw_field,
                            std::string_view text,
                            double floor = kLangScoreFloor);

// The heuristic alone, ignoring any raw field.
std::string detect_language_heuristic(std::string_view text,
                                      double floor = kLangScoreFloor);

}  // namespace sdsm

#endif  // SDSM_LANG_DETECT_H_
