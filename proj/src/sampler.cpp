// src/sampler.cpp

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

#include "mdnn/sampler.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

#include "mdnn/error.hpp"
#include "mdnn/random.hpp"

namespace mdnn {

std::vector<int> BatchSizes(int total, int batch_size, int min_keep) {
  std::vector<int> sizes;
  if (total <= 0) return sizes;
  if (batch_size < 1) Fail(ErrorKind::kConfig, "batch size must be positive");
  const int full = total / batch_size;
  const int rest = total % batch_size;
  sizes.assign(full, batch_size);
  if (rest > 0) {
    if (rest >= min_keep || sizes.empty())
      sizes.push_back(rest);
    else
      sizes.back() += rest;
  }
  return sizes;
}

std::vector<std::vector<int>> ProportionalAllocation(const std::vector<int> &batch_sizes,
                                                     const std::vector<int> &class_sizes) {
  const int B = static_cast<int>(batch_sizes.size());
  const int K = static_cast<int>(class_sizes.size());
  const std::int64_t total = std::accumulate(class_sizes.begin(), class_sizes.end(), std::int64_t{0});
  if (std::accumulate(batch_sizes.begin(), batch_sizes.end(), std::int64_t{0}) != total)
    Fail(ErrorKind::kContract, "batch sizes and class sizes have different totals");

  // Start from the floors; the leftover units form a 0/1 transportation
  // problem over the cells with a fractional share, solved as a max flow.
  std::vector<std::vector<int>> counts(B, std::vector<int>(K, 0));
  std::vector<std::vector<bool>> fractional(B, std::vector<bool>(K, false));
  std::vector<int> row_need(B), col_need(K);
  for (int c = 0; c < K; ++c) col_need[c] = class_sizes[c];
  for (int b = 0; b < B; ++b) {
    row_need[b] = batch_sizes[b];
    for (int c = 0; c < K; ++c) {
      const std::int64_t scaled = static_cast<std::int64_t>(batch_sizes[b]) * class_sizes[c];
      counts[b][c] = static_cast<int>(scaled / total);
      fractional[b][c] = scaled % total != 0;
      row_need[b] -= counts[b][c];
      col_need[c] -= counts[b][c];
    }
  }

  const int source = 0, sink = B + K + 1, nodes = B + K + 2;
  std::vector<std::vector<int>> cap(nodes, std::vector<int>(nodes, 0));
  for (int b = 0; b < B; ++b) {
    cap[source][1 + b] = row_need[b];
    for (int c = 0; c < K; ++c)
      if (fractional[b][c]) cap[1 + b][1 + B + c] = 1;
  }
  for (int c = 0; c < K; ++c) cap[1 + B + c][sink] = col_need[c];

  const int required = std::accumulate(row_need.begin(), row_need.end(), 0);
  int flow = 0;
  while (flow < required) {
    std::vector<int> parent(nodes, -1);
    parent[source] = source;
    std::queue<int> frontier;
    frontier.push(source);
    while (!frontier.empty() && parent[sink] < 0) {
      const int u = frontier.front();
      frontier.pop();
      for (int v = 0; v < nodes; ++v) {
        if (parent[v] < 0 && cap[u][v] > 0) {
          parent[v] = u;
          frontier.push(v);
        }
      }
    }
    if (parent[sink] < 0) break;
    int push = required - flow;
    for (int v = sink; v != source; v = parent[v]) push = std::min(push, cap[parent[v]][v]);
    for (int v = sink; v != source; v = parent[v]) {
      cap[parent[v]][v] -= push;
      cap[v][parent[v]] += push;
    }
    flow += push;
  }
  if (flow != required) Fail(ErrorKind::kContract, "proportional rounding has no solution");

  for (int b = 0; b < B; ++b)
    for (int c = 0; c < K; ++c)
      if (fractional[b][c] && cap[1 + b][1 + B + c] == 0) ++counts[b][c];
  return counts;
}

BatchSchedule MakeSchedule(const PairedDataset &data, int batch_size, int epoch,
                           std::uint64_t seed, int repr_dim) {
  BatchSchedule schedule;
  schedule.seed = seed;
  schedule.epoch = epoch;

  std::map<int, std::vector<int>> by_class;
  std::vector<int> unlabeled;
  for (int i : data.Indices(Split::kTrain)) {
    if (data.labeled[i])
      by_class[data.labels[i]].push_back(i);
    else
      unlabeled.push_back(i);
  }
  const int class_count = static_cast<int>(by_class.size());
  if (class_count > 0 && batch_size < class_count) {
    Fail(ErrorKind::kConfig, "batch size " + std::to_string(batch_size) + " is smaller than the " +
                                 std::to_string(class_count) + " labeled classes");
  }
  if (batch_size < 1) Fail(ErrorKind::kConfig, "batch size must be positive");
  const int min_keep = std::max(class_count, repr_dim + 1);

  Rng rng = MakeRng(seed, 1000 + static_cast<std::uint64_t>(epoch));

  std::vector<int> class_sizes;
  int labeled_total = 0;
  for (auto &[label, members] : by_class) {
    Shuffle(&members, &rng);
    class_sizes.push_back(static_cast<int>(members.size()));
    labeled_total += class_sizes.back();
  }
  const std::vector<int> labeled_sizes = BatchSizes(labeled_total, batch_size, min_keep);
  if (!labeled_sizes.empty()) {
    const auto alloc = ProportionalAllocation(labeled_sizes, class_sizes);
    std::vector<std::size_t> cursor(class_sizes.size(), 0);
    for (const auto &row : alloc) {
      Batch batch;
      batch.kind = BatchKind::kLabeled;
      std::size_t c = 0;
      for (auto &[label, members] : by_class) {
        for (int k = 0; k < row[c]; ++k) batch.indices.push_back(members[cursor[c]++]);
        ++c;
      }
      Shuffle(&batch.indices, &rng);
      schedule.batches.push_back(std::move(batch));
    }
  }

  Shuffle(&unlabeled, &rng);
  std::size_t pos = 0;
  for (int size : BatchSizes(static_cast<int>(unlabeled.size()), batch_size, min_keep)) {
    Batch batch;
    batch.kind = BatchKind::kUnlabeled;
    batch.indices.assign(unlabeled.begin() + pos, unlabeled.begin() + pos + size);
    pos += size;
    schedule.batches.push_back(std::move(batch));
  }

  Shuffle(&schedule.batches, &rng);
  return schedule;
}

}  // namespace mdnn
