// include/mdnn/checkpoint.hpp

// Copyright 2026  The mdnn Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef MDNN_CHECKPOINT_HPP_
#define MDNN_CHECKPOINT_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "mdnn/baselines.hpp"
#include "mdnn/eval.hpp"
#include "mdnn/trainer.hpp"

namespace mdnn {

inline constexpr int kCheckpointVersion = 1;

enum class CheckpointKind { kNetwork, kLinear, kIdentity };

/// A trained representation of any kind, plus what is needed to rebuild the
/// labeled subset it was trained with.
struct Checkpoint {
  CheckpointKind kind = CheckpointKind::kNetwork;
  std::optional<Model> network;
  std::optional<LinearProjection> linear;
  int input_dim1 = 0;
  int input_dim2 = 0;
  std::string dataset;
  int labels = -1;  // labeled count requested at training time; -1 keeps the stored mask
  std::uint64_t label_seed = 0;

  // mdnn, dcca, dlda, cca, lda, kcca or identity.
  std::string ModelName() const;
  int repr_dim() const;
};

nlohmann::json ConfigToJson(const TrainConfig &config);
// Overrides the fields of `base` present in `j`; unknown keys are errors.
TrainConfig ConfigFromJson(const nlohmann::json &j, TrainConfig base = {});
TrainConfig LoadConfigFile(const std::filesystem::path &path, TrainConfig base = {});

nlohmann::json CheckpointToJson(const Checkpoint &ckpt);
Checkpoint CheckpointFromJson(const nlohmann::json &j);

void SaveCheckpoint(const Checkpoint &ckpt, const std::filesystem::path &path);
Checkpoint LoadCheckpoint(const std::filesystem::path &path);

// View-1 (or view-2) embedding function of the stored representation.
Projector MakeProjector(const Checkpoint &ckpt, int view = 1);

}  // namespace mdnn

#endif  // MDNN_CHECKPOINT_HPP_
