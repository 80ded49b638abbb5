// include/mdnn/runner.hpp

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

#ifndef MDNN_RUNNER_HPP_
#define MDNN_RUNNER_HPP_

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mdnn/eval.hpp"
#include "mdnn/trainer.hpp"

namespace mdnn {

inline constexpr char kCsvHeader[] =
    "dataset,model,L,lambda,alpha,r,lr,batch,repr_dim,svm_C,seed,accuracy,wall_ms";

/// One experiment outcome. Hyperparameters that do not apply to a model kind
/// are left unset and written as empty CSV fields.
struct RunRecord {
  std::string dataset;
  std::string model;
  int labeled = 0;
  std::optional<double> lambda;
  std::optional<double> alpha;
  std::optional<double> r;
  std::optional<double> lr;
  std::optional<int> batch;
  int repr_dim = 0;
  std::optional<double> svm_c;
  std::uint64_t seed = 0;
  std::optional<double> accuracy;
  std::optional<double> validation_accuracy;
  double wall_ms = 0.0;
  std::vector<EpochMetrics> history;
  std::string error;  // non-empty when the run failed
};

// Shortest decimal text that parses back to the same double.
std::string FormatNumber(double value);

std::string CsvRow(const RunRecord &record);
nlohmann::json RecordToJson(const RunRecord &record);

// Fills the hyperparameter fields of a record from a training config.
void EchoConfig(const TrainConfig &config, RunRecord *record);

// Appends rows to a results CSV, writing the header when the file is new or
// empty and rejecting files whose header differs. Appends from concurrent
// callers are serialized.
class CsvWriter {
 public:
  explicit CsvWriter(std::filesystem::path path);
  void Append(const RunRecord &record);
  const std::filesystem::path &path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::mutex mutex_;
};

inline const std::vector<double> kLambdaGrid{1e-1, 1.0, 1e1, 1e2, 1e3, 1e4};
inline const std::vector<double> kAlphaGrid{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};

struct GridOptions {
  TrainConfig base;
  std::vector<double> lambdas = kLambdaGrid;
  std::vector<double> alphas = kAlphaGrid;
  std::vector<int> repr_dims;  // empty: base.repr_dim only
  std::vector<std::uint64_t> seeds{0};
  EvalOptions eval;
  int parallel = 1;
};

struct GridPoint {
  double lambda = 0.0;
  double alpha = 0.0;
  int repr_dim = 0;
  std::uint64_t seed = 0;
};

// Row-major over (repr_dim, lambda, alpha, seed).
std::vector<GridPoint> ExpandGrid(const GridOptions &opts);

// Trains and evaluates one configuration on a dataset whose labeled mask is
// already set.
RunRecord TrainAndEvaluate(const TrainConfig &config, const PairedDataset &data,
                           const EvalOptions &eval);

// Runs every grid point; failures are recorded in the returned records and
// the grid continues. Records come back in ExpandGrid order regardless of
// `parallel`; rows reach `writer` in completion order.
std::vector<RunRecord> RunGrid(const PairedDataset &data, const GridOptions &opts,
                               CsvWriter *writer = nullptr);

// Highest validation accuracy; ties go to smaller lambda, then smaller alpha.
std::optional<RunRecord> SelectBest(const std::vector<RunRecord> &records);

}  // namespace mdnn

#endif  // MDNN_RUNNER_HPP_
