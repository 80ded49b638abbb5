// include/mdnn/network.hpp

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

#ifndef MDNN_NETWORK_HPP_
#define MDNN_NETWORK_HPP_

#include <cstdint>
#include <vector>

#include "mdnn/linalg.hpp"
#include "mdnn/random.hpp"

namespace mdnn {

enum class Activation { kRelu, kIdentity };

struct Layer {
  Matrix W;  // out x in
  Vector b;  // out
  Activation activation = Activation::kIdentity;
};

/// A fully connected view network: rectifier hidden layers and a linear
/// output layer. Inputs and outputs are one sample per column.
struct Network {
  std::vector<Layer> layers;
  // Bumped on every parameter update; forward caches remember it.
  std::uint64_t generation = 0;

  int input_dim() const { return layers.empty() ? 0 : static_cast<int>(layers.front().W.cols()); }
  int output_dim() const { return layers.empty() ? 0 : static_cast<int>(layers.back().W.rows()); }
  std::vector<int> widths() const;
  std::size_t parameter_count() const;
};

// Weights ~ U(-a, a) with a = sqrt(6 / (fan_in + fan_out)); biases zero.
Network InitNetwork(int input_dim, const std::vector<int> &hidden, int output_dim, Rng *rng);

struct ForwardCache {
  std::vector<Matrix> inputs;  // input to each layer
  std::vector<Matrix> pre;     // pre-activation of each layer
  const Network *network = nullptr;
  std::uint64_t generation = 0;
};

Matrix Forward(const Network &net, const Matrix &x, ForwardCache *cache = nullptr);

struct LayerGrad {
  Matrix dW;
  Vector db;
};
using NetworkGrads = std::vector<LayerGrad>;

// Parameter gradients of an objective whose gradient w.r.t. the network
// output is dz. Throws kContract if the cache is stale or from another net.
NetworkGrads Backward(const Network &net, const ForwardCache &cache, const Matrix &dz);

NetworkGrads ZeroGrads(const Network &net);

// Sum of squared weights; biases are not decayed.
double SquaredWeightNorm(const Network &net);

// Adds the gradient of -alpha * ||W||^2, i.e. -2 alpha W, to `grads`.
void AddWeightDecay(const Network &net, double alpha, NetworkGrads *grads);

/// Adam moments for one network (beta1 0.9, beta2 0.999, eps 1e-8).
struct AdamState {
  NetworkGrads m;
  NetworkGrads v;
  std::int64_t step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

AdamState InitAdam(const Network &net);

// One bias-corrected Adam update that ASCENDS along `ascent` (the gradient of
// the objective being maximized). Throws kNonFinite before touching the
// parameters if any gradient entry is NaN/Inf.
void AdamStep(AdamState *state, Network *net, const NetworkGrads &ascent, double lr);

}  // namespace mdnn

#endif  // MDNN_NETWORK_HPP_
