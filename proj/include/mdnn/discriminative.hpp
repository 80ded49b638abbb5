// include/mdnn/discriminative.hpp

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

#ifndef MDNN_DISCRIMINATIVE_HPP_
#define MDNN_DISCRIMINATIVE_HPP_

#include <vector>

#include "mdnn/linalg.hpp"

namespace mdnn {

// One class index per batch column. Indices need not be contiguous; only the
// classes that actually occur take part in the scatter sums.
using LabelVector = std::vector<int>;

/// Class-scatter statistics of a labeled batch in one view.
///   S_W = (1/L) sum_i sum_{z in C_i} (z - m_i)(z - m_i)^T
///   S_B = (1/(2L^2)) sum_{i,j} L_i L_j (m_i - m_j)(m_i - m_j)^T
/// S_T is S_W + S_B, without the ridge term.
struct ScatterStats {
  std::vector<int> classes;     // class ids present, ascending
  std::vector<int> counts;      // L_i, aligned with `classes`
  std::vector<int> slot;        // per column: position of its class in `classes`
  Matrix means;                 // d x |C|
  Matrix SW;
  Matrix SB;
  Matrix ST;
  int L = 0;
};

ScatterStats ComputeScatter(const Matrix &z, const LabelVector &y);

// G = Tr{(S_W + S_B + rI)^{-1} S_B}.
double DiscValue(const ScatterStats &stats, double r);

// dG/dZ for the batch z (d x L).
Matrix DiscGrad(const Matrix &z, const LabelVector &y, double r);

// Same, reusing already computed statistics of z.
Matrix DiscGrad(const Matrix &z, const ScatterStats &stats, double r);

}  // namespace mdnn

#endif  // MDNN_DISCRIMINATIVE_HPP_
