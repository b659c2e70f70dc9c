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

#include "sdsm/config.h"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sdsm {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const char* kind_token(RelationKind k) {
  switch (k) {
    case RelationKind::kDC: return "DC";
    case RelationKind::kCC: return "CC";
    case RelationKind::kBC: return "BC";
    default: return "?";
  }
}

}  // namespace

std::string StrategySpec::name() const {
  std::string out;
  for (size_t i = 0; i < kinds.size(); ++i) {
    if (i > 0) out += mode == CombineMode::kUnion ? "∪" : "∩";
    out += kind_token(kinds[i]);
  }
  return out;
}

std::string StrategySpec::slug() const {
  std::string out;
  for (size_t i = 0; i < kinds.size(); ++i) {
    if (i > 0) out += '-';
    const char* t = kind_token(kinds[i]);
    out += char(std::tolower(t[0]));
    out += char(std::tolower(t[1]));
  }
  if (kinds.size() > 1) {
    out += mode == CombineMode::kUnion ? "-union" : "-inter";
  }
  return out;
}

StrategySpec parse_strategy(const std::string& text) {
  // Tokenize on the two combinator glyphs and their ASCII aliases.
  std::vector<std::string> tokens;
  std::vector<char> ops;  // 'u' or 'i'
  std::string current;
  for (size_t i = 0; i < text.size();) {
    if (text.compare(i, 3, "∪") == 0) {
      tokens.push_back(current);
      current.clear();
      ops.push_back('u');
      i += 3;
    } else if (text.compare(i, 3, "∩") == 0) {
      tokens.push_back(current);
      current.clear();
      ops.push_back('i');
      i += 3;
    } else if (text[i] == '+' || text[i] == '&') {
      tokens.push_back(current);
      current.clear();
      ops.push_back(text[i] == '+' ? 'u' : 'i');
      i += 1;
    } else {
      current += text[i];
      i += 1;
    }
  }
  tokens.push_back(current);

  StrategySpec spec;
  std::set<RelationKind> seen;
  for (std::string& tok : tokens) {
    std::string t = trim(tok);
    std::transform(t.begin(), t.end(), t.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    RelationKind k;
    if (t == "DC") {
      k = RelationKind::kDC;
    } else if (t == "CC") {
      k = RelationKind::kCC;
    } else if (t == "BC") {
      k = RelationKind::kBC;
    } else {
      throw std::runtime_error("bad strategy \"" + text +
                               "\": unknown relation \"" + trim(tok) + "\"");
    }
    if (!seen.insert(k).second) {
      throw std::runtime_error("bad strategy \"" + text + "\": \"" + t +
                               "\" repeats");
    }
  }
  for (char op : ops) {
    if (op != ops[0]) {
      throw std::runtime_error("bad strategy \"" + text +
                               "\": mixes union and intersection");
    }
  }
  spec.mode = (!ops.empty() && ops[0] == 'i') ? CombineMode::kIntersection
                                              : CombineMode::kUnion;
  spec.kinds.assign(seen.begin(), seen.end());  // DC < CC < BC enum order
  return spec;
}

namespace {

class ConfigParser {
 public:
  ConfigParser(const std::string& name, PipelineConfig* config)
      : name_(name), config_(config) {}

  void parse(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
      line_++;
      std::string line = trim(raw);
      if (line.empty() || line[0] == '#' || line[0] == ';') continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail("unterminated section header");
        section_ = trim(line.substr(1, line.size() - 2));
        if (!known_section(section_)) fail("unknown section [" + section_ + "]");
        continue;
      }
      size_t eq = line.find('=');
      if (eq == std::string::npos) fail("expected key = value");
      std::string key = trim(line.substr(0, eq));
      std::string value = trim(line.substr(eq + 1));
      if (key.empty()) fail("empty key");
      if (section_.empty()) fail("key \"" + key + "\" before any section");
      apply(key, value);
    }
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error(name_ + ":" + std::to_string(line_) + ": " + msg);
  }

  static bool known_section(const std::string& s) {
    static const std::set<std::string> kSections = {
        "paths", "split", "mine",  "encoder",     "train",  "pretrain",
        "scincl", "graph-embed", "enrich", "evaluate", "run"};
    return kSections.count(s) > 0;
  }

  double number(const std::string& key, const std::string& value) const {
    try {
      size_t used = 0;
      double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      return v;
    } catch (const std::exception&) {
      fail("key \"" + key + "\": \"" + value + "\" is not a number");
    }
  }

  uint64_t integer(const std::string& key, const std::string& value) const {
    double v = number(key, value);
    if (v < 0 || v != uint64_t(v)) {
      fail("key \"" + key + "\": \"" + value +
           "\" is not a non-negative integer");
    }
    return uint64_t(v);
  }

  bool boolean(const std::string& key, const std::string& value) const {
    if (value == "true" || value == "yes" || value == "1") return true;
    if (value == "false" || value == "no" || value == "0") return false;
    fail("key \"" + key + "\": \"" + value + "\" is not a boolean");
  }

  void apply(const std::string& key, const std::string& value) {
    PipelineConfig& c = *config_;
    if (section_ == "paths") {
      if (key == "corpus") c.corpus_path = value;
      else if (key == "edges") c.edges_path = value;
      else if (key == "workdir") c.workdir = value;
      else unknown(key);
    } else if (section_ == "split") {
      if (key == "top_l") c.split.top_l = uint32_t(integer(key, value));
      else if (key == "idt_fraction") c.split.idt_fraction = fraction(key, value);
      else if (key == "odt_tail_fraction")
        c.split.odt_tail_fraction = fraction(key, value);
      else unknown(key);
    } else if (section_ == "mine") {
      if (key == "strategy") {
        try {
          c.strategy = parse_strategy(value);
        } catch (const std::exception& e) {
          fail(e.what());
        }
      } else if (key == "max_out_degree") {
        c.max_out_degree = uint32_t(integer(key, value));
      } else if (key == "max_in_degree") {
        c.max_in_degree = uint32_t(integer(key, value));
      } else {
        unknown(key);
      }
    } else if (section_ == "encoder") {
      if (key == "hash_dim") c.encoder.hash_dim = positive32(key, value);
      else if (key == "dim") c.encoder.embed_dim = positive32(key, value);
      else if (key == "ngram_orders") c.encoder.ngram_orders = orders(key, value);
      else unknown(key);
    } else if (section_ == "train") {
      if (key == "loss") {
        if (value == "contrastive") c.loss.kind = LossConfig::Kind::kContrastive;
        else if (value == "triplet") c.loss.kind = LossConfig::Kind::kHinge;
        else fail("key \"loss\": expected contrastive or triplet");
      } else if (key == "similarity") {
        if (value == "dot") c.loss.similarity = LossConfig::Similarity::kDot;
        else if (value == "cosine")
          c.loss.similarity = LossConfig::Similarity::kCosine;
        else fail("key \"similarity\": expected dot or cosine");
      } else if (key == "temperature") {
        c.loss.temperature = positive_real(key, value);
      } else if (key == "margin") {
        c.loss.margin = number(key, value);
      } else if (key == "batch_size") {
        c.batch_size = positive32(key, value);
      } else if (key == "epochs") {
        c.epochs = uint32_t(integer(key, value));
      } else if (key == "base_lr") {
        c.base_lr = positive_real(key, value);
      } else if (key == "warmup_steps") {
        c.warmup_steps = integer(key, value);
      } else if (key == "dev_every") {
        c.dev_every = integer(key, value);
      } else if (key == "init") {
        if (value == "fresh") c.init_from_pretrained = false;
        else if (value == "pretrained") c.init_from_pretrained = true;
        else fail("key \"init\": expected fresh or pretrained");
      } else if (key == "negatives") {
        if (value == "none") c.negatives = PipelineConfig::Negatives::kNone;
        else if (value == "specter")
          c.negatives = PipelineConfig::Negatives::kSpecter;
        else if (value == "scincl")
          c.negatives = PipelineConfig::Negatives::kScincl;
        else fail("key \"negatives\": expected none, specter or scincl");
      } else if (key == "negatives_per_anchor") {
        c.negatives_per_anchor = positive32(key, value);
      } else {
        unknown(key);
      }
    } else if (section_ == "pretrain") {
      if (key == "enabled") c.pretrain_enabled = boolean(key, value);
      else if (key == "pairs") c.pretrain_pairs = positive32(key, value);
      else if (key == "min_len") c.snippet_min_len = positive32(key, value);
      else if (key == "max_len") c.snippet_max_len = positive32(key, value);
      else if (key == "epochs") c.pretrain_epochs = uint32_t(integer(key, value));
      else unknown(key);
    } else if (section_ == "scincl") {
      if (key == "i") c.scincl_i = positive32(key, value);
      else if (key == "k") c.scincl_k = positive32(key, value);
      else if (key == "n") c.scincl_n = positive32(key, value);
      else unknown(key);
    } else if (section_ == "graph-embed") {
      if (key == "dim") c.node_dim = positive32(key, value);
      else if (key == "epochs") c.node_epochs = uint32_t(integer(key, value));
      else if (key == "negatives") c.node_negatives = positive32(key, value);
      else if (key == "lr") c.node_lr = positive_real(key, value);
      else unknown(key);
    } else if (section_ == "enrich") {
      if (key == "enabled") c.enrich_enabled = boolean(key, value);
      else if (key == "kind") {
        if (value == "topn-truncation")
          c.summarizer.kind = SummarizerKind::kTopnTruncation;
        else if (value == "external-service")
          c.summarizer.kind = SummarizerKind::kExternalService;
        else if (value == "offline-stub")
          c.summarizer.kind = SummarizerKind::kOfflineStub;
        else
          fail("key \"kind\": expected topn-truncation, external-service or "
               "offline-stub");
      } else if (key == "max_tokens") {
        uint64_t v = integer(key, value);
        if (v != 64 && v != 128) fail("key \"max_tokens\": expected 64 or 128");
        c.summarizer.max_tokens = uint32_t(v);
      } else if (key == "endpoint") {
        c.summarizer.endpoint = value;
      } else if (key == "timeout_seconds") {
        c.summarizer.timeout_seconds = positive_real(key, value);
      } else if (key == "max_retries") {
        c.summarizer.max_retries = uint32_t(integer(key, value));
      } else if (key == "stub_text") {
        c.summarizer.stub_text = value;
      } else {
        unknown(key);
      }
    } else if (section_ == "evaluate") {
      if (key == "split") {
        if (value == "train") c.eval_split = Split::kTrain;
        else if (value == "idt") c.eval_split = Split::kIdt;
        else if (value == "odt") c.eval_split = Split::kOdt;
        else fail("key \"split\": expected train, idt or odt");
      } else if (key == "use_enriched") {
        c.eval_use_enriched = boolean(key, value);
      } else {
        unknown(key);
      }
    } else if (section_ == "run") {
      if (key == "seed") c.seed = integer(key, value);
      else unknown(key);
    }
  }

  [[noreturn]] void unknown(const std::string& key) const {
    fail("unknown key \"" + key + "\" in section [" + section_ + "]");
  }

  double fraction(const std::string& key, const std::string& value) const {
    double v = number(key, value);
    if (v < 0.0 || v >= 1.0) fail("key \"" + key + "\": expected [0, 1)");
    return v;
  }

  double positive_real(const std::string& key, const std::string& value) const {
    double v = number(key, value);
    if (v <= 0.0) fail("key \"" + key + "\": expected > 0");
    return v;
  }

  uint32_t positive32(const std::string& key, const std::string& value) const {
    uint64_t v = integer(key, value);
    if (v == 0 || v > 0xffffffffULL) {
      fail("key \"" + key + "\": out of range");
    }
    return uint32_t(v);
  }

  std::vector<uint32_t> orders(const std::string& key,
                               const std::string& value) const {
    std::vector<uint32_t> out;
    std::istringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) {
      uint64_t v = integer(key, trim(item));
      if (v == 0 || v > 8) fail("key \"" + key + "\": orders must be 1..8");
      out.push_back(uint32_t(v));
    }
    if (out.empty()) fail("key \"" + key + "\": empty list");
    return out;
  }

  std::string name_;
  PipelineConfig* config_;
  std::string section_;
  int line_ = 0;
};

}  // namespace

PipelineConfig parse_config_text(const std::string& text,
                                 const std::string& name) {
  PipelineConfig config;
  ConfigParser parser(name, &config);
  parser.parse(text);
  if (config.snippet_min_len > config.snippet_max_len) {
    throw std::runtime_error(name +
                             ": pretrain min_len exceeds max_len");
  }
  if (config.scincl_i < 1 || config.scincl_i + config.scincl_n >= config.scincl_k) {
    throw std::runtime_error(name + ": scincl windows must satisfy 1 <= i and "
                                    "i + n < k");
  }
  return config;
}

PipelineConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

void validate_inputs(const PipelineConfig& config) {
  if (config.corpus_path.empty()) {
    throw std::runtime_error("config has no [paths] corpus entry");
  }
  if (!std::filesystem::exists(config.corpus_path)) {
    throw std::runtime_error("corpus file does not exist: " +
                             config.corpus_path);
  }
  if (config.edges_path.empty()) {
    throw std::runtime_error("config has no [paths] edges entry");
  }
  if (!std::filesystem::exists(config.edges_path)) {
    throw std::runtime_error("edge file does not exist: " + config.edges_path);
  }
}

}  // namespace sdsm
