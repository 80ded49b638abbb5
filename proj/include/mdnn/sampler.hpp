// include/mdnn/sampler.hpp

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

#ifndef MDNN_SAMPLER_HPP_
#define MDNN_SAMPLER_HPP_

#include <cstdint>
#include <vector>

#include "mdnn/dataset.hpp"

namespace mdnn {

enum class BatchKind { kLabeled, kUnlabeled };

struct Batch {
  std::vector<int> indices;  // dataset column indices
  BatchKind kind = BatchKind::kUnlabeled;
};

/// One epoch's worth of mini-batches over the train split.
///
/// Labeled and unlabeled samples never share a batch. Within each labeled
/// batch every class appears in proportion to its share of the labeled pool,
/// off by less than one sample, and the per-class totals still cover the pool
/// exactly. Batches of both kinds are then interleaved in random order.
struct BatchSchedule {
  std::vector<Batch> batches;
  std::uint64_t seed = 0;
  int epoch = 0;
};

// Sizes of consecutive batches over `total` samples. A trailing partial batch
// is kept when it has at least `min_keep` samples, otherwise it is merged
// into the previous batch.
std::vector<int> BatchSizes(int total, int batch_size, int min_keep);

// Integer matrix counts[b][c] with row sums batch_sizes[b], column sums
// class_sizes[c], and every entry within one of batch_sizes[b] *
// class_sizes[c] / sum(class_sizes) (floor or ceil).
std::vector<std::vector<int>> ProportionalAllocation(const std::vector<int> &batch_sizes,
                                                     const std::vector<int> &class_sizes);

BatchSchedule MakeSchedule(const PairedDataset &data, int batch_size, int epoch,
                           std::uint64_t seed, int repr_dim = 1);

}  // namespace mdnn

#endif  // MDNN_SAMPLER_HPP_
