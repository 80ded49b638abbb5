// include/mdnn/error.hpp

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

#ifndef MDNN_ERROR_HPP_
#define MDNN_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace mdnn {

enum class ErrorKind {
  kShape,             // operand shapes do not match the contract
  kDegenerateBatch,   // fewer than two samples in a batch
  kDegenerateLabels,  // fewer than two classes where a discriminant is needed
  kNotSpd,            // matrix expected positive (semi)definite is not
  kConfig,            // invalid hyperparameters or options
  kIo,                // file could not be opened, read or written
  kFormat,            // file contents violate the on-disk format
  kNonFinite,         // NaN/Inf appeared in a gradient or parameter
  kContract,          // API misuse, e.g. a stale forward cache
};

const char *ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string &what) {
  throw Error(kind, what);
}

// Warnings go to stderr unless silenced (tests silence them).
void Warn(std::string_view message);
void SetWarningsEnabled(bool enabled);

}  // namespace mdnn

#endif  // MDNN_ERROR_HPP_
