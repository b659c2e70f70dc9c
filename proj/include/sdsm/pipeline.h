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

#ifndef SDSM_PIPELINE_H_
#define SDSM_PIPELINE_H_

#include <optional>
#include <string>

#include "sdsm/config.h"

namespace sdsm {

enum class Stage {
  kIngest,
  kGraph,
  kMine,
  kSplit,
  kGraphEmbed,
  kSample,
  kPretrain,
  kTrain,
  kEnrich,
  kEvaluate,
  kAll,
};

const char* stage_name(Stage s);
std::optional<Stage> parse_stage(const std::string& name);

// Runs one stage (or all, in dependency order) against the config's
// workdir. Missing upstream artifacts raise std::runtime_error naming the
// stage to run first. Artifact content hashes land in workdir/manifest.json
// after every stage; log output is kept out of the manifest.
void run_stage(const PipelineConfig& config, Stage stage);

// Refreshes workdir/manifest.json from the artifacts present on disk.
// Returns the manifest as a JSON string (sorted keys, no timestamps).
std::string write_manifest(const PipelineConfig& config);

}  // namespace sdsm

#endif  // SDSM_PIPELINE_H_
