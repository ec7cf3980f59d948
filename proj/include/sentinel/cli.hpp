// Copyright 2026 The Sentinel Authors
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

#ifndef SENTINEL_CLI_HPP_
#define SENTINEL_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace sentinel {

/**
 * @brief Command-line front end.
 *
 * Subcommands: verify, simulate, open-loop, bench, export-lp. Exit codes for
 * verify: 0 Safe, 2 Undecided, 3 Unsafe, 1 error; other commands return 0 on
 * success and 1 on error. Set SENTINEL_LOG=1 for progress chatter on stderr.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace sentinel

#endif  // SENTINEL_CLI_HPP_
