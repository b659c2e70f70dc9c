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

#include "sdsm/synth.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "sdsm/rng.h"
#include "sdsm/tokenizer.h"

namespace sdsm {
namespace {

// Mixing streams for the generator; each concern draws from its own stream
// so edits to one stage do not shift another stage's randomness.
constexpr uint64_t kLangStream = 3;
constexpr uint64_t kCiteStream = 4;
constexpr uint64_t kTopicTermStream = 1000;  // + topic id
constexpr uint64_t kPaperStream = 10000;     // + paper ordinal

const std::vector<LanguageShare>& default_languages() {
  static const std::vector<LanguageShare> kShares = {
      {"en", 0.34}, {"de", 0.20}, {"fr", 0.16},
      {"es", 0.12}, {"ru", 0.10}, {"ja", 0.08},
  };
  return kShares;
}

std::vector<std::string> split_words(const char* text) {
  std::istringstream in(text);
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

const std::vector<std::string>& common_words(const std::string& lang) {
  static const std::vector<std::string> kEn = split_words(
      "the of and to in we that for with this model results data method our "
      "is are on from by show which can be more using between different "
      "proposed new approach task over both when under study");
  static const std::vector<std::string> kDe = split_words(
      "der die das und ist von mit für auf eine wir werden nicht auch durch "
      "bei als dass diese modell daten methode ergebnisse im zu den einem "
      "unter zwischen über neue verfahren zeigt sowie kann wird");
  static const std::vector<std::string> kFr = split_words(
      "le la les de des et un une dans pour avec sur par nous que qui cette "
      "sont est au aux plus modèle données méthode résultats approche étude "
      "entre selon deux nouvelle propose montre ainsi peut notre");
  static const std::vector<std::string> kEs = split_words(
      "el la los las de y en un una que con para por del este nos son es al "
      "se como más modelo datos método resultados enfoque estudio entre "
      "según dos nueva propone muestra también puede nuestro");
  static const std::vector<std::string> kRu = split_words(
      "и в на с по для это мы что как из при не был между более модель "
      "данные метод результаты подход исследование обучение задача оценка "
      "система новый предложен показывает также может нашей работе");
  static const std::vector<std::string> kJa = split_words(
      "の を に は が で と する した これ その また ため よう において "
      "について により として もの こと できる ある ない れる など から "
      "まで よる より 本 研究 提案 手法 結果");
  if (lang == "de") return kDe;
  if (lang == "fr") return kFr;
  if (lang == "es") return kEs;
  if (lang == "ru") return kRu;
  if (lang == "ja") return kJa;
  return kEn;
}

const char* kLatinConsonants[] = {"b", "c", "d", "f", "g", "h", "k", "l",
                                  "m", "n", "p", "r", "s", "t", "v", "z"};
const char* kLatinVowels[] = {"a", "e", "i", "o", "u"};
const char* kCyrConsonants[] = {"б", "в", "г", "д", "з", "к", "л", "м",
                                "н", "п", "р", "с", "т", "ф", "ш", "ч"};
const char* kCyrVowels[] = {"а", "е", "и", "о", "у", "ы"};
const char* kKana[] = {"か", "き", "く", "け", "こ", "さ", "し", "す", "せ",
                       "そ", "た", "ち", "つ", "て", "と", "な", "に", "ぬ",
                       "ね", "は", "ひ", "ふ", "へ", "ほ", "ま", "み", "む",
                       "め", "も", "ら", "り", "る", "れ", "ろ"};

template <size_t C, size_t V>
std::string syllable_word(Rng& rng, const char* (&cons)[C],
                          const char* (&vowels)[V], uint32_t syllables) {
  std::string w;
  for (uint32_t s = 0; s < syllables; ++s) {
    w += cons[rng.uniform(C)];
    w += vowels[rng.uniform(V)];
  }
  return w;
}

std::string noise_word(Rng& rng, const std::string& lang) {
  if (lang == "ru") {
    return syllable_word(rng, kCyrConsonants, kCyrVowels,
                         3 + uint32_t(rng.uniform(2)));
  }
  if (lang == "ja") {
    std::string w;
    uint32_t len = 3 + uint32_t(rng.uniform(3));
    for (uint32_t s = 0; s < len; ++s) w += kKana[rng.uniform(std::size(kKana))];
    return w;
  }
  return syllable_word(rng, kLatinConsonants, kLatinVowels,
                       3 + uint32_t(rng.uniform(2)));
}

// Topic terms are Latin-script technical pseudo-words shared by all
// languages, the way real abstracts keep technical vocabulary.
std::vector<std::string> topic_terms(uint64_t seed, uint32_t topic) {
  static const char* kSuffixes[] = {"ium", "ase",  "ode",   "gen",  "tron",
                                    "lyse", "metry", "phase", "plex", "form"};
  Rng rng(mix_seed(seed, kTopicTermStream + topic));
  std::vector<std::string> terms;
  for (int i = 0; i < 12; ++i) {
    std::string t = syllable_word(rng, kLatinConsonants, kLatinVowels,
                                  2 + uint32_t(rng.uniform(2)));
    t += kSuffixes[rng.uniform(std::size(kSuffixes))];
    terms.push_back(std::move(t));
  }
  return terms;
}

// Word-mix shares. Topic terms stay a small slice so an untrained encoder
// sees mostly language-level structure; per-paper noise words give the
// trained encoder capacity to tell individual papers apart.
constexpr double kTopicShare = 0.02;
constexpr double kNoiseShare = 0.20;

std::string make_abstract(Rng& rng, const std::string& lang,
                          const std::vector<std::string>& terms,
                          const std::vector<std::string>& noise) {
  const std::vector<std::string>& common = common_words(lang);
  uint32_t n_words = 45 + uint32_t(rng.uniform(26));
  std::string text;
  for (uint32_t w = 0; w < n_words; ++w) {
    if (!text.empty()) text += ' ';
    double u = rng.uniform_real();
    if (u < kTopicShare) {
      text += terms[rng.uniform(terms.size())];
    } else if (u < kTopicShare + kNoiseShare) {
      text += noise[rng.uniform(noise.size())];
    } else {
      text += common[rng.uniform(common.size())];
    }
  }
  text += '.';
  return text;
}

std::string make_title(Rng& rng, const std::string& lang,
                       const std::vector<std::string>& terms,
                       const std::vector<std::string>& noise) {
  const std::vector<std::string>& common = common_words(lang);
  std::string text = noise[rng.uniform(noise.size())];
  text += ' ';
  text += terms[rng.uniform(terms.size())];
  uint32_t extra = 3 + uint32_t(rng.uniform(3));
  for (uint32_t w = 0; w < extra; ++w) {
    text += ' ';
    text += common[rng.uniform(common.size())];
  }
  if (text[0] >= 'a' && text[0] <= 'z') text[0] -= 0x20;
  return text;
}

}  // namespace

SynthCorpus make_clustered_corpus(const ClusteredCorpusSpec& spec) {
  if (spec.topics == 0 || spec.papers_per_topic == 0) {
    throw std::runtime_error("clustered corpus needs topics and papers");
  }
  const std::vector<LanguageShare>& langs =
      spec.languages.empty() ? default_languages() : spec.languages;
  double total_weight = 0.0;
  for (const LanguageShare& share : langs) total_weight += share.weight;
  if (total_weight <= 0.0) throw std::runtime_error("language weights sum 0");

  uint32_t n = spec.topics * spec.papers_per_topic;
  SynthCorpus out;
  out.topic_of.resize(n);
  for (uint32_t i = 0; i < n; ++i) out.topic_of[i] = i % spec.topics;

  std::vector<std::vector<std::string>> terms;
  terms.reserve(spec.topics);
  for (uint32_t t = 0; t < spec.topics; ++t) {
    terms.push_back(topic_terms(spec.seed, t));
  }

  // Language per paper, round-robin independent of topic.
  Rng lang_rng(mix_seed(spec.seed, kLangStream));
  std::vector<std::string> lang_of(n);
  for (uint32_t i = 0; i < n; ++i) {
    double u = lang_rng.uniform_real() * total_weight;
    double acc = 0.0;
    lang_of[i] = langs.back().code;
    for (const LanguageShare& share : langs) {
      acc += share.weight;
      if (u < acc) {
        lang_of[i] = share.code;
        break;
      }
    }
  }

  Tokenizer tok;
  for (uint32_t i = 0; i < n; ++i) {
    Rng rng(mix_seed(spec.seed, kPaperStream + i));
    std::vector<std::string> noise;
    for (int w = 0; w < 8; ++w) noise.push_back(noise_word(rng, lang_of[i]));

    Paper p;
    char id[16];
    std::snprintf(id, sizeof(id), "p%05u", i);
    p.paper_id = id;
    p.language = lang_of[i];
    p.title = make_title(rng, lang_of[i], terms[out.topic_of[i]], noise);
    p.abstract_text =
        make_abstract(rng, lang_of[i], terms[out.topic_of[i]], noise);
    p.token_count_abstract = tok.count(p.abstract_text);
    out.corpus.add(std::move(p));
  }

  // Each paper considers the `window` most recent papers of every topic.
  Rng cite_rng(mix_seed(spec.seed, kCiteStream));
  std::vector<std::vector<uint32_t>> by_topic(spec.topics);
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t t = 0; t < spec.topics; ++t) {
      const std::vector<uint32_t>& prev = by_topic[t];
      double p = (t == out.topic_of[i]) ? spec.intra_p : spec.inter_p;
      size_t first = prev.size() > spec.window ? prev.size() - spec.window : 0;
      for (size_t j = first; j < prev.size(); ++j) {
        if (cite_rng.uniform_real() < p) out.edges.push_back({i, prev[j]});
      }
    }
    by_topic[out.topic_of[i]].push_back(i);
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

CitationGraph make_random_graph(size_t n, double p, uint64_t seed) {
  Rng rng(mix_seed(seed, 0));
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  for (uint32_t u = 0; u < n; ++u) {
    for (uint32_t v = 0; v < n; ++v) {
      if (u != v && rng.uniform_real() < p) edges.push_back({u, v});
    }
  }
  return graph_from_edges(n, edges);
}

void write_corpus_jsonl(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write corpus file: " + path);
  for (const Paper& p : corpus.papers()) {
    nlohmann::json j;
    j["paper_id"] = p.paper_id;
    j["title"] = p.title;
    j["abstract"] = p.abstract_text;
    j["language"] = p.language;
    if (!p.content.empty()) j["content"] = p.content;
    if (!p.categories.empty()) j["categories"] = p.categories;
    out << j.dump() << '\n';
  }
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

void write_edges_tsv(const Corpus& corpus,
                     const std::vector<std::pair<uint32_t, uint32_t>>& edges,
                     const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write edge file: " + path);
  for (auto [u, v] : edges) {
    out << corpus.paper(u).paper_id << '\t' << corpus.paper(v).paper_id
        << '\n';
  }
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

}  // namespace sdsm
