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

// Client for an out-of-process evaluator speaking newline-delimited JSON,
// either over the stdin/stdout of a child process or over TCP.
//
//   > {"cmd":"hello","action_space":N,"feature_version":1}
//   < {"ok":true,"name":"..."}
//   > {"cmd":"eval","graphs":[<graph>,...]}
//   < {"values":[...],"policies":[[...],...]}
//   > {"cmd":"train","examples":[{"graph":<graph>,"policy_target":[...],
//                                 "value_target":v,"value_weight":w},...]}
//   < {"policy_loss":x,"value_loss":y}
//   > {"cmd":"save","path":"..."}   /   {"cmd":"load","path":"..."}
//   < {"ok":true}
//
// <graph> is the form written by graph_to_json. A reply carrying an "error"
// member, or one that does not match the request, is a protocol error and
// ends the session. Lost connections are transport errors; evaluation
// requests are retried on a fresh connection.

#ifndef TCG_EXTERNAL_EVALUATOR_HPP_
#define TCG_EXTERNAL_EVALUATOR_HPP_

#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tcg/evaluator.hpp"

namespace tcg {

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExternalEndpoint {
  enum class Kind { kProcess, kTcp };
  Kind kind = Kind::kProcess;
  std::string command;  // kProcess: run with /bin/sh -c
  std::string host;     // kTcp
  std::uint16_t port = 0;
};

// "process:<command>" or "tcp:<host>:<port>". Throws std::invalid_argument.
ExternalEndpoint parse_endpoint(std::string_view text);

struct ExternalOptions {
  int retries = 2;          // extra attempts for eval after a transport error
  int timeout_ms = 60000;   // per reply
};

class ExternalEvaluator final : public Evaluator {
 public:
  // Connects and performs the hello handshake. Throws TransportError or
  // ProtocolError.
  ExternalEvaluator(std::size_t action_space, ExternalEndpoint endpoint,
                    ExternalOptions options = {});
  ~ExternalEvaluator() override;

  std::string name() const override;
  std::vector<Evaluation> evaluate_batch(
      std::span<const StateGraph> graphs) override;
  bool trainable() const override { return true; }
  LossReport train_batch(std::span<const TrainExample> examples) override;
  void save_params(const std::filesystem::path& path) const override;
  void load_params(const std::filesystem::path& path) override;

  // Number of connections opened so far, the first included.
  int connections() const;

  class Connection;

 private:
  std::string exchange(const std::string& line, bool retry) const;
  void connect() const;
  template <class F>
  auto guarded(F&& f) const;

  ExternalEndpoint endpoint_;
  ExternalOptions options_;
  mutable std::mutex mu_;
  mutable std::unique_ptr<Connection> conn_;
  mutable std::string server_name_;
  mutable int connections_ = 0;
  mutable bool failed_ = false;
};

}  // namespace tcg

#endif  // TCG_EXTERNAL_EVALUATOR_HPP_
