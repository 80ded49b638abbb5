// src/network.cpp

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

#include "mdnn/network.hpp"

#include <cmath>
#include <sstream>

#include "mdnn/error.hpp"

namespace mdnn {

std::vector<int> Network::widths() const {
  std::vector<int> out;
  if (layers.empty()) return out;
  out.push_back(input_dim());
  for (const auto &layer : layers) out.push_back(static_cast<int>(layer.W.rows()));
  return out;
}

std::size_t Network::parameter_count() const {
  std::size_t n = 0;
  for (const auto &layer : layers) n += layer.W.size() + layer.b.size();
  return n;
}

Network InitNetwork(int input_dim, const std::vector<int> &hidden, int output_dim, Rng *rng) {
  std::vector<int> widths;
  widths.push_back(input_dim);
  widths.insert(widths.end(), hidden.begin(), hidden.end());
  widths.push_back(output_dim);
  for (int w : widths)
    if (w < 1) Fail(ErrorKind::kConfig, "network layers must have positive width");

  Network net;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    const int fan_in = widths[l];
    const int fan_out = widths[l + 1];
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-bound, bound);
    Layer layer;
    layer.W.resize(fan_out, fan_in);
    for (Eigen::Index j = 0; j < layer.W.cols(); ++j)
      for (Eigen::Index i = 0; i < layer.W.rows(); ++i) layer.W(i, j) = dist(*rng);
    layer.b = Vector::Zero(fan_out);
    layer.activation = (l + 2 == widths.size()) ? Activation::kIdentity : Activation::kRelu;
    net.layers.push_back(std::move(layer));
  }
  return net;
}

Matrix Forward(const Network &net, const Matrix &x, ForwardCache *cache) {
  if (x.rows() != net.input_dim()) {
    std::ostringstream os;
    os << "network expects " << net.input_dim() << " input features, got " << x.rows();
    Fail(ErrorKind::kShape, os.str());
  }
  if (cache) {
    cache->inputs.clear();
    cache->pre.clear();
    cache->network = &net;
    cache->generation = net.generation;
  }
  Matrix a = x;
  for (const auto &layer : net.layers) {
    Matrix pre = layer.W * a;
    pre.colwise() += layer.b;
    Matrix out = layer.activation == Activation::kRelu ? Matrix(pre.cwiseMax(0.0)) : pre;
    if (cache) {
      cache->inputs.push_back(std::move(a));
      cache->pre.push_back(std::move(pre));
    }
    a = std::move(out);
  }
  return a;
}

NetworkGrads Backward(const Network &net, const ForwardCache &cache, const Matrix &dz) {
  if (cache.network != &net || cache.generation != net.generation ||
      cache.pre.size() != net.layers.size()) {
    Fail(ErrorKind::kContract, "backward called with a stale or foreign forward cache");
  }
  const Matrix &out_pre = cache.pre.back();
  if (dz.rows() != out_pre.rows() || dz.cols() != out_pre.cols())
    Fail(ErrorKind::kShape, "output gradient shape does not match the network output");

  NetworkGrads grads(net.layers.size());
  Matrix delta = dz;
  for (std::size_t l = net.layers.size(); l-- > 0;) {
    const Layer &layer = net.layers[l];
    if (layer.activation == Activation::kRelu)
      delta = delta.cwiseProduct((cache.pre[l].array() > 0.0).cast<double>().matrix());
    grads[l].dW = delta * cache.inputs[l].transpose();
    grads[l].db = delta.rowwise().sum();
    if (l > 0) delta = layer.W.transpose() * delta;
  }
  return grads;
}

NetworkGrads ZeroGrads(const Network &net) {
  NetworkGrads grads(net.layers.size());
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    grads[l].dW = Matrix::Zero(net.layers[l].W.rows(), net.layers[l].W.cols());
    grads[l].db = Vector::Zero(net.layers[l].b.size());
  }
  return grads;
}

double SquaredWeightNorm(const Network &net) {
  double s = 0.0;
  for (const auto &layer : net.layers) s += layer.W.squaredNorm();
  return s;
}

void AddWeightDecay(const Network &net, double alpha, NetworkGrads *grads) {
  if (alpha == 0.0) return;
  for (std::size_t l = 0; l < net.layers.size(); ++l)
    (*grads)[l].dW -= (2.0 * alpha) * net.layers[l].W;
}

AdamState InitAdam(const Network &net) {
  AdamState state;
  state.m = ZeroGrads(net);
  state.v = ZeroGrads(net);
  return state;
}

void AdamStep(AdamState *state, Network *net, const NetworkGrads &ascent, double lr) {
  if (ascent.size() != net->layers.size() || state->m.size() != net->layers.size())
    Fail(ErrorKind::kShape, "gradient and optimizer state do not match the network");
  for (std::size_t l = 0; l < ascent.size(); ++l) {
    if (!ascent[l].dW.allFinite() || !ascent[l].db.allFinite()) {
      Fail(ErrorKind::kNonFinite, "gradient of layer " + std::to_string(l) +
                                      " is not finite at optimizer step " +
                                      std::to_string(state->step + 1));
    }
  }
  ++state->step;
  const double t = static_cast<double>(state->step);
  const double c1 = 1.0 - std::pow(state->beta1, t);
  const double c2 = 1.0 - std::pow(state->beta2, t);
  const double b1 = state->beta1, b2 = state->beta2, eps = state->eps;

  auto update = [&](auto &param, auto &m, auto &v, const auto &g) {
    m = b1 * m + (1.0 - b1) * g;
    v = b2 * v + (1.0 - b2) * g.cwiseProduct(g);
    param.array() += lr * (m.array() / c1) / ((v.array() / c2).sqrt() + eps);
  };
  for (std::size_t l = 0; l < ascent.size(); ++l) {
    update(net->layers[l].W, state->m[l].dW, state->v[l].dW, ascent[l].dW);
    update(net->layers[l].b, state->m[l].db, state->v[l].db, ascent[l].db);
  }
  ++net->generation;
}

}  // namespace mdnn
