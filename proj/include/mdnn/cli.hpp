// include/mdnn/cli.hpp

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

#ifndef MDNN_CLI_HPP_
#define MDNN_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace mdnn {

// Exit codes of RunCli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;  // gradcheck threshold breach
inline constexpr int kExitError = 2;        // bad arguments, IO, numerical errors

// Runs the command line `args` (without the program name). Normal output
// goes to `out`, diagnostics to `err`.
int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace mdnn

#endif  // MDNN_CLI_HPP_
