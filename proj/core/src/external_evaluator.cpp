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

#include "tcg/external_evaluator.hpp"

#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstring>

#include <nlohmann/json.hpp>

#include "graph_json.hpp"

namespace tcg {

using nlohmann::json;

ExternalEndpoint parse_endpoint(std::string_view text) {
  ExternalEndpoint ep;
  if (text.substr(0, 8) == "process:") {
    ep.kind = ExternalEndpoint::Kind::kProcess;
    ep.command = std::string(text.substr(8));
    if (ep.command.empty()) throw std::invalid_argument("empty process command");
    return ep;
  }
  if (text.substr(0, 4) == "tcp:") {
    std::string_view rest = text.substr(4);
    auto colon = rest.rfind(':');
    if (colon == std::string_view::npos || colon == 0) {
      throw std::invalid_argument("tcp endpoint must be tcp:<host>:<port>");
    }
    ep.kind = ExternalEndpoint::Kind::kTcp;
    ep.host = std::string(rest.substr(0, colon));
    int port = 0;
    try {
      port = std::stoi(std::string(rest.substr(colon + 1)));
    } catch (const std::exception&) {
      port = -1;
    }
    if (port <= 0 || port > 65535) throw std::invalid_argument("bad tcp port");
    ep.port = static_cast<std::uint16_t>(port);
    return ep;
  }
  throw std::invalid_argument("endpoint must start with process: or tcp:");
}

class ExternalEvaluator::Connection {
 public:
  explicit Connection(const ExternalEndpoint& ep) {
    // Writes to a closed peer must fail with EPIPE instead of killing us.
    ::signal(SIGPIPE, SIG_IGN);
    if (ep.kind == ExternalEndpoint::Kind::kProcess) {
      spawn(ep.command);
    } else {
      dial(ep.host, ep.port);
    }
  }

  ~Connection() {
    if (in_ >= 0) ::close(in_);
    if (out_ >= 0 && out_ != in_) ::close(out_);
    if (pid_ > 0) {
      int status = 0;
      // Closing stdin lets a well-behaved server exit on its own.
      for (int i = 0; i < 50; ++i) {
        if (::waitpid(pid_, &status, WNOHANG) == pid_) return;
        ::usleep(2000);
      }
      ::kill(-pid_, SIGKILL);
      ::waitpid(pid_, &status, 0);
    }
  }

  void write_line(const std::string& line) {
    std::string buf = line + "\n";
    const char* p = buf.data();
    std::size_t left = buf.size();
    while (left > 0) {
      ssize_t n = is_socket_ ? ::send(out_, p, left, MSG_NOSIGNAL)
                             : ::write(out_, p, left);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) throw TransportError(std::string("write failed: ") + std::strerror(errno));
      p += n;
      left -= static_cast<std::size_t>(n);
    }
  }

  std::string read_line(int timeout_ms) {
    while (true) {
      auto nl = pending_.find('\n');
      if (nl != std::string::npos) {
        std::string line = pending_.substr(0, nl);
        pending_.erase(0, nl + 1);
        return line;
      }
      pollfd pfd{in_, POLLIN, 0};
      int r = ::poll(&pfd, 1, timeout_ms);
      if (r < 0 && errno == EINTR) continue;
      if (r == 0) throw TransportError("timed out waiting for evaluator reply");
      if (r < 0) throw TransportError(std::string("poll failed: ") + std::strerror(errno));
      char buf[65536];
      ssize_t n = ::read(in_, buf, sizeof(buf));
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) throw TransportError("evaluator closed the connection");
      pending_.append(buf, static_cast<std::size_t>(n));
    }
  }

 private:
  void spawn(const std::string& command) {
    int to_child[2], from_child[2];
    if (::pipe(to_child) != 0) throw TransportError("pipe failed");
    if (::pipe(from_child) != 0) {
      ::close(to_child[0]);
      ::close(to_child[1]);
      throw TransportError("pipe failed");
    }
    pid_t pid = ::fork();
    if (pid < 0) throw TransportError("fork failed");
    if (pid == 0) {
      // Own process group, so that the shell and whatever it starts can be
      // killed together.
      ::setpgid(0, 0);
      ::dup2(to_child[0], STDIN_FILENO);
      ::dup2(from_child[1], STDOUT_FILENO);
      ::close(to_child[0]);
      ::close(to_child[1]);
      ::close(from_child[0]);
      ::close(from_child[1]);
      ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
      ::_exit(127);
    }
    ::setpgid(pid, pid);
    ::close(to_child[0]);
    ::close(from_child[1]);
    pid_ = pid;
    out_ = to_child[1];
    in_ = from_child[0];
  }

  void dial(const std::string& host, std::uint16_t port) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    int rc = ::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res);
    if (rc != 0) throw TransportError(std::string("cannot resolve ") + host);
    int fd = -1;
    for (addrinfo* a = res; a != nullptr; a = a->ai_next) {
      fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
      if (fd < 0) continue;
      if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) break;
      ::close(fd);
      fd = -1;
    }
    ::freeaddrinfo(res);
    if (fd < 0) {
      throw TransportError("cannot connect to " + host + ":" + std::to_string(port));
    }
    in_ = out_ = fd;
    is_socket_ = true;
  }

  int in_ = -1;
  int out_ = -1;
  pid_t pid_ = -1;
  bool is_socket_ = false;
  std::string pending_;
};

namespace {

json parse_reply(const std::string& line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ProtocolError("evaluator reply is not a JSON object: " + line.substr(0, 200));
  }
  if (j.contains("error")) {
    throw ProtocolError("evaluator reported an error: " + j["error"].dump());
  }
  return j;
}

double finite_number(const json& j, const char* what) {
  if (!j.is_number()) throw ProtocolError(std::string(what) + " is not a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) throw ProtocolError(std::string(what) + " is not finite");
  return v;
}

void expect_ok(const json& j) {
  if (!j.contains("ok") || j["ok"] != true) {
    throw ProtocolError("evaluator did not acknowledge: " + j.dump());
  }
}

}  // namespace

ExternalEvaluator::ExternalEvaluator(std::size_t action_space,
                                     ExternalEndpoint endpoint,
                                     ExternalOptions options)
    : Evaluator(action_space), endpoint_(std::move(endpoint)), options_(options) {
  std::lock_guard lock(mu_);
  connect();
}

ExternalEvaluator::~ExternalEvaluator() = default;

std::string ExternalEvaluator::name() const {
  std::lock_guard lock(mu_);
  return "external:" + server_name_;
}

int ExternalEvaluator::connections() const {
  std::lock_guard lock(mu_);
  return connections_;
}

// Caller holds mu_.
void ExternalEvaluator::connect() const {
  conn_.reset();
  auto conn = std::make_unique<Connection>(endpoint_);
  ++connections_;
  json hello = {{"cmd", "hello"},
                {"action_space", action_space()},
                {"feature_version", 1}};
  conn->write_line(hello.dump());
  json reply = parse_reply(conn->read_line(options_.timeout_ms));
  expect_ok(reply);
  server_name_ = reply.contains("name") && reply["name"].is_string()
                     ? reply["name"].get<std::string>()
                     : std::string("unnamed");
  conn_ = std::move(conn);
}

// Runs `f`, ending the session if it raises a protocol error or the reply
// does not have the expected shape.
template <class F>
auto ExternalEvaluator::guarded(F&& f) const {
  try {
    return f();
  } catch (const json::exception& e) {
    std::lock_guard lock(mu_);
    failed_ = true;
    conn_.reset();
    throw ProtocolError(std::string("malformed evaluator reply: ") + e.what());
  } catch (const ProtocolError&) {
    std::lock_guard lock(mu_);
    failed_ = true;
    conn_.reset();
    throw;
  }
}

std::string ExternalEvaluator::exchange(const std::string& line, bool retry) const {
  std::lock_guard lock(mu_);
  if (failed_) throw ProtocolError("evaluator session ended after a protocol error");
  const int attempts = retry ? options_.retries + 1 : 1;
  std::string last_error;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    try {
      if (!conn_) connect();
      conn_->write_line(line);
      return conn_->read_line(options_.timeout_ms);
    } catch (const TransportError& e) {
      conn_.reset();
      last_error = e.what();
    } catch (const ProtocolError&) {
      failed_ = true;
      conn_.reset();
      throw;
    }
  }
  throw TransportError(last_error);
}

std::vector<Evaluation> ExternalEvaluator::evaluate_batch(
    std::span<const StateGraph> graphs) {
  if (graphs.empty()) throw std::invalid_argument("empty evaluation batch");
  json req = {{"cmd", "eval"}, {"graphs", json::array()}};
  for (const auto& g : graphs) req["graphs"].push_back(graph_to_json_value(g));
  return guarded([&] {
    json reply = parse_reply(exchange(req.dump(), /*retry=*/true));
    const json& values = reply.at("values");
    const json& policies = reply.at("policies");
    if (!values.is_array() || !policies.is_array() ||
        values.size() != graphs.size() || policies.size() != graphs.size()) {
      throw ProtocolError("eval reply has the wrong number of results");
    }
    std::vector<Evaluation> out(graphs.size());
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      out[i].value = finite_number(values[i], "value");
      const json& p = policies[i];
      if (!p.is_array() || p.size() != action_space()) {
        throw ProtocolError("policy length differs from action space");
      }
      out[i].policy.reserve(p.size());
      for (const auto& x : p) out[i].policy.push_back(finite_number(x, "policy entry"));
    }
    return out;
  });
}

LossReport ExternalEvaluator::train_batch(std::span<const TrainExample> examples) {
  if (examples.empty()) throw std::invalid_argument("empty training batch");
  json req = {{"cmd", "train"}, {"examples", json::array()}};
  for (const auto& ex : examples) {
    req["examples"].push_back({{"graph", graph_to_json_value(ex.graph)},
                               {"policy_target", ex.policy_target},
                               {"value_target", ex.value_target},
                               {"value_weight", ex.value_weight}});
  }
  return guarded([&] {
    json reply = parse_reply(exchange(req.dump(), /*retry=*/false));
    LossReport r;
    r.examples = examples.size();
    r.policy_loss = finite_number(reply.at("policy_loss"), "policy_loss");
    r.value_loss = finite_number(reply.at("value_loss"), "value_loss");
    return r;
  });
}

void ExternalEvaluator::save_params(const std::filesystem::path& path) const {
  json req = {{"cmd", "save"}, {"path", path.string()}};
  guarded([&] {
    expect_ok(parse_reply(exchange(req.dump(), /*retry=*/false)));
    return 0;
  });
}

void ExternalEvaluator::load_params(const std::filesystem::path& path) {
  json req = {{"cmd", "load"}, {"path", path.string()}};
  guarded([&] {
    expect_ok(parse_reply(exchange(req.dump(), /*retry=*/false)));
    return 0;
  });
}

}  // namespace tcg
