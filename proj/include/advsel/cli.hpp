// Copyright 2026 The advsel Authors
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

#ifndef ADVSEL_CLI_HPP_
#define ADVSEL_CLI_HPP_

#include <ostream>

namespace advsel {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitModelViolation = 3;

// Entry point of the advsel tool, with the streams injectable for tests.
// Subcommands: select, sort, bench, scheffe, report.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace advsel

#endif  // ADVSEL_CLI_HPP_
