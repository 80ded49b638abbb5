// include/mdnn/gradcheck.hpp

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

#ifndef MDNN_GRADCHECK_HPP_
#define MDNN_GRADCHECK_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "mdnn/linalg.hpp"

namespace mdnn {

// ||analytic - numeric||_inf / max(||analytic||_inf, ||numeric||_inf, 1e-12)
double RelativeError(const Matrix &analytic, const Matrix &numeric);

struct GradcheckSuite {
  std::string name;
  double threshold = 0.0;
  int instances = 0;
  double max_error = 0.0;
  std::uint64_t worst_seed = 0;  // instance seed with the largest error
  std::vector<double> errors;    // one per instance

  bool pass() const { return max_error < threshold; }
};

struct GradcheckOptions {
  std::uint64_t seed = 0;
  int corr_instances = 20;
  int disc_instances = 20;
  int network_instances = 5;
  // Scales every analytic gradient by (1 + corrupt); exercises the failure path.
  double corrupt = 0.0;
};

// Correlation term: 20 instances, d in 1..5, N in 10..50, r = 1e-3, h = 1e-5,
// threshold 1e-5.
GradcheckSuite CheckCorrelationGradient(const GradcheckOptions &opts);
// Discriminative term: d in 1..4, |C| in {2, 3}, L in 6..30, r = 1e-3,
// h = 1e-5, threshold 1e-4.
GradcheckSuite CheckDiscriminativeGradient(const GradcheckOptions &opts);
// Full objective of a 6-5-4-3 network pair on a 16-sample two-class batch,
// 50 sampled parameters, h = 1e-4, threshold 1e-3.
GradcheckSuite CheckNetworkGradient(const GradcheckOptions &opts);

std::vector<GradcheckSuite> RunGradcheck(const GradcheckOptions &opts);

// Instance seed i of a suite; instance generators depend only on this value.
std::uint64_t InstanceSeed(std::uint64_t seed, int suite, int instance);

}  // namespace mdnn

#endif  // MDNN_GRADCHECK_HPP_
