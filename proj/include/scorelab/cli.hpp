// Copyright 2026 The Scorelab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCORELAB_CLI_HPP_
#define SCORELAB_CLI_HPP_

namespace scorelab {

// Full command-line front end (subcommands score / experiment / density).
// Returns the process exit code: 0 success, 2 usage or config error,
// 3 numeric domain or convergence error, 4 I/O error.
int run_cli(int argc, const char* const* argv);

}  // namespace scorelab

#endif  // SCORELAB_CLI_HPP_
