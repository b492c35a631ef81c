// Copyright 2026 The splitrt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>

namespace splitrt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `splitrt` tool:
///   splitrt bench <app>   run a grid of cells and emit CSV
///   splitrt sweep <app>   block sweep (1, 4, 16, 48 blocks per worker) over all modes
///   splitrt verify <app>  check that the three modes agree
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace splitrt::cli
