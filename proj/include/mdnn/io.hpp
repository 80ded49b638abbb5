// include/mdnn/io.hpp

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

#ifndef MDNN_IO_HPP_
#define MDNN_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

namespace mdnn {

std::vector<std::uint8_t> ReadFile(const std::filesystem::path &path);

// Writes to a sibling temporary file and renames it over `path`, so readers
// see either the old contents or the complete new contents.
void WriteFileAtomic(const std::filesystem::path &path, std::string_view bytes);

}  // namespace mdnn

#endif  // MDNN_IO_HPP_
