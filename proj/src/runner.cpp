// src/runner.cpp

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

#include "mdnn/runner.hpp"

#include <charconv>
#include <cmath>
#include <chrono>
#include <fstream>

#include "mdnn/error.hpp"
#include "mdnn/parallel.hpp"

namespace mdnn {

std::string FormatNumber(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

std::string Field(const std::optional<double> &v) { return v ? FormatNumber(*v) : std::string(); }
std::string Field(const std::optional<int> &v) { return v ? std::to_string(*v) : std::string(); }

// Dataset names are free text; quote them when they would break the row.
std::string CsvText(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::json Optional(const std::optional<double> &v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::string CsvRow(const RunRecord &r) {
  std::string row;
  row += CsvText(r.dataset) + ',' + CsvText(r.model) + ',' + std::to_string(r.labeled) + ',';
  row += Field(r.lambda) + ',' + Field(r.alpha) + ',' + Field(r.r) + ',' + Field(r.lr) + ',';
  row += Field(r.batch) + ',' + std::to_string(r.repr_dim) + ',' + Field(r.svm_c) + ',';
  row += std::to_string(r.seed) + ',' + Field(r.accuracy) + ',' + FormatNumber(std::round(r.wall_ms));
  return row;
}

nlohmann::json RecordToJson(const RunRecord &r) {
  nlohmann::json history = nlohmann::json::array();
  for (const auto &m : r.history) {
    history.push_back({{"epoch", m.epoch},
                       {"corr", Optional(m.corr)},
                       {"g1", Optional(m.g1)},
                       {"g2", Optional(m.g2)},
                       {"objective", m.objective},
                       {"labeled_batches", m.labeled_batches},
                       {"unlabeled_batches", m.unlabeled_batches}});
  }
  nlohmann::json j{{"dataset", r.dataset},
                   {"model", r.model},
                   {"L", r.labeled},
                   {"lambda", Optional(r.lambda)},
                   {"alpha", Optional(r.alpha)},
                   {"r", Optional(r.r)},
                   {"lr", Optional(r.lr)},
                   {"batch", r.batch ? nlohmann::json(*r.batch) : nlohmann::json(nullptr)},
                   {"repr_dim", r.repr_dim},
                   {"svm_C", Optional(r.svm_c)},
                   {"seed", r.seed},
                   {"accuracy", Optional(r.accuracy)},
                   {"validation_accuracy", Optional(r.validation_accuracy)},
                   {"wall_ms", r.wall_ms},
                   {"history", history}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

void EchoConfig(const TrainConfig &c, RunRecord *r) {
  r->model = TrainModeName(c.mode);
  r->lambda = c.lambda;
  r->alpha = c.alpha;
  r->r = c.r;
  r->lr = c.learning_rate;
  r->batch = c.batch_size;
  r->repr_dim = c.repr_dim;
  r->seed = c.seed;
}

CsvWriter::CsvWriter(std::filesystem::path path) : path_(std::move(path)) {
  std::error_code ec;
  if (std::filesystem::exists(path_, ec) && std::filesystem::file_size(path_, ec) > 0) {
    std::ifstream in(path_);
    std::string header;
    std::getline(in, header);
    if (header != kCsvHeader)
      Fail(ErrorKind::kFormat, path_.string() + " has a different header: '" + header + "'");
    return;
  }
  std::ofstream out(path_, std::ios::trunc);
  if (!out) Fail(ErrorKind::kIo, "cannot write " + path_.string());
  out << kCsvHeader << '\n';
}

void CsvWriter::Append(const RunRecord &record) {
  const std::string row = CsvRow(record) + '\n';
  std::lock_guard<std::mutex> lock(mutex_);
  std::ofstream out(path_, std::ios::app);
  if (!out) Fail(ErrorKind::kIo, "cannot append to " + path_.string());
  out << row;
  out.flush();
  if (!out) Fail(ErrorKind::kIo, "short write to " + path_.string());
}

std::vector<GridPoint> ExpandGrid(const GridOptions &opts) {
  std::vector<int> dims = opts.repr_dims;
  if (dims.empty()) dims.push_back(opts.base.repr_dim);
  std::vector<GridPoint> points;
  for (int dim : dims)
    for (double lambda : opts.lambdas)
      for (double alpha : opts.alphas)
        for (std::uint64_t seed : opts.seeds) points.push_back({lambda, alpha, dim, seed});
  return points;
}

RunRecord TrainAndEvaluate(const TrainConfig &config, const PairedDataset &data,
                           const EvalOptions &eval) {
  const auto start = std::chrono::steady_clock::now();
  RunRecord record;
  record.dataset = data.name;
  record.labeled = static_cast<int>(data.LabeledIndices(Split::kTrain).size());
  EchoConfig(config, &record);
  TrainResult trained = Train(config, data);
  record.history = std::move(trained.history);
  const Model &model = trained.model;
  EvalOptions eval_opts = eval;
  eval_opts.seed = config.seed;
  const EvalResult result =
      CrossViewEval([&model](const Matrix &x) { return Project(model, x, 1); }, data, eval_opts);
  record.accuracy = result.accuracy;
  record.validation_accuracy = result.validation_accuracy;
  record.svm_c = result.chosen_c;
  record.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return record;
}

std::vector<RunRecord> RunGrid(const PairedDataset &data, const GridOptions &opts, CsvWriter *writer) {
  const std::vector<GridPoint> points = ExpandGrid(opts);
  std::vector<RunRecord> records(points.size());
  EvalOptions eval = opts.eval;
  if (opts.parallel > 1) eval.threads = 1;

  ParallelFor(static_cast<int>(points.size()), opts.parallel, [&](int i) {
    const GridPoint &p = points[static_cast<std::size_t>(i)];
    TrainConfig config = opts.base;
    config.lambda = p.lambda;
    config.alpha = p.alpha;
    config.repr_dim = p.repr_dim;
    config.seed = p.seed;
    RunRecord record;
    try {
      record = TrainAndEvaluate(config, data, eval);
    } catch (const std::exception &e) {
      record = RunRecord{};
      record.dataset = data.name;
      record.labeled = static_cast<int>(data.LabeledIndices(Split::kTrain).size());
      EchoConfig(config, &record);
      record.error = e.what();
      Warn("grid point lambda=" + FormatNumber(p.lambda) + " alpha=" + FormatNumber(p.alpha) +
           " repr_dim=" + std::to_string(p.repr_dim) + " seed=" + std::to_string(p.seed) +
           " failed: " + e.what());
    }
    if (writer) writer->Append(record);
    records[static_cast<std::size_t>(i)] = std::move(record);
  });
  return records;
}

std::optional<RunRecord> SelectBest(const std::vector<RunRecord> &records) {
  const RunRecord *best = nullptr;
  for (const auto &r : records) {
    if (!r.error.empty() || !r.validation_accuracy) continue;
    if (!best) { best = &r; continue; }
    const double a = *r.validation_accuracy, b = *best->validation_accuracy;
    const double la = r.lambda.value_or(0), lb = best->lambda.value_or(0);
    const double aa = r.alpha.value_or(0), ab = best->alpha.value_or(0);
    if (a > b || (a == b && (la < lb || (la == lb && aa < ab)))) best = &r;
  }
  if (!best) return std::nullopt;
  return *best;
}

}  // namespace mdnn
