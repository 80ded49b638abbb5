// include/mdnn/parallel.hpp

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

#ifndef MDNN_PARALLEL_HPP_
#define MDNN_PARALLEL_HPP_

#include <functional>

namespace mdnn {

// Runs fn(0) .. fn(n - 1) on up to `threads` worker threads. Each index runs
// exactly once. The first exception thrown by any task is rethrown after all
// workers have joined.
void ParallelFor(int n, int threads, const std::function<void(int)> &fn);

}  // namespace mdnn

#endif  // MDNN_PARALLEL_HPP_
