/* Copyright 2026 The tcg Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Command-line front end: train, baseline, eval, solve, logics, verify.

#ifndef TCG_TOOLS_CLI_HPP_
#define TCG_TOOLS_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// A bad flag value, a malformed config file or a missing required option.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every setting a subcommand can read. The config file uses the same keys
// (see kConfigKeys); flags given on the command line take precedence.
struct Options {
  std::string logic;
  std::string problems;            // file; empty means the bundled set
  std::uint64_t seed = 0;
  int workers = 1;
  std::size_t budget = 10000;      // eval/solve nodes per problem
  std::size_t train_budget = 128;  // self-play nodes per decision
  std::size_t decision_budget = 1000;
  int games = 200;                 // self-play games per episode, or baseline playouts
  int episodes = 10;
  int steps = 100;                 // training steps per episode or for baseline
  std::size_t batch = 64;
  double temperature = 1.0;
  std::optional<int> move_cap;     // default: recommended cap of the logic
  std::string evaluator;           // default: uniform for eval/solve, feature otherwise
  bool cvp = true;
  bool aux = true;
  bool balance = true;
  std::string out;
};

extern const std::vector<std::string> kConfigKeys;

// Applies a JSON object to `opts`. Throws UsageError on unknown keys or
// values of the wrong type.
void apply_config_json(const std::string& text, Options& opts);

// Runs the command line. Regular output goes to `out`, diagnostics to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tcg::cli

#endif  // TCG_TOOLS_CLI_HPP_
