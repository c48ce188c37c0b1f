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

#include "tcg/search.hpp"

#include <cstdio>

namespace tcg {

std::string format_search_summary(const SearchResult& r) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "owner=%s added=%zu tree=%zu v=%.4f v_c=%.4f bounds=(%g,%g) policy=",
                to_string(r.owner), r.nodes_added, r.tree_size, r.raw_value,
                r.value, r.lower, r.upper);
  std::string out = buf;
  bool first = true;
  for (std::size_t a = 0; a < r.policy.size(); ++a) {
    if (r.policy[a] <= 0.0) continue;
    std::snprintf(buf, sizeof(buf), "%s%zu:%.3f", first ? "" : ",", a, r.policy[a]);
    out += buf;
    first = false;
  }
  return out;
}

std::size_t choose_action(const SearchResult& r, bool test_mode,
                          double temperature, std::mt19937_64& rng) {
  const std::size_t n = r.actions.size();
  if (n == 0) throw std::invalid_argument("no actions to choose from");
  std::vector<std::size_t> allowed;
  for (std::size_t i = 0; i < n; ++i) {
    if (!r.certified_loss[i]) allowed.push_back(i);
  }
  if (allowed.empty()) {
    for (std::size_t i = 0; i < n; ++i) allowed.push_back(i);
  }
  auto policy_of = [&](std::size_t i) { return r.policy[r.actions[i]]; };

  auto argmax = [&] {
    std::size_t best = allowed.front();
    for (std::size_t i : allowed) {
      if (policy_of(i) > policy_of(best) ||
          (policy_of(i) == policy_of(best) && r.priors[i] > r.priors[best])) {
        best = i;
      }
    }
    return r.actions[best];
  };
  if (test_mode || temperature <= 0.0) return argmax();

  auto sample = [&](auto weight_of) -> std::optional<std::size_t> {
    std::vector<double> w;
    double total = 0.0, top = 0.0;
    for (std::size_t i : allowed) top = std::max(top, weight_of(i));
    if (!(top > 0.0)) return std::nullopt;
    for (std::size_t i : allowed) {
      // Scaled by the largest weight so small temperatures do not underflow.
      double x = weight_of(i) / top;
      x = x > 0.0 ? std::pow(x, 1.0 / temperature) : 0.0;
      w.push_back(x);
      total += x;
    }
    if (!(total > 0.0) || !std::isfinite(total)) return std::nullopt;
    std::uniform_real_distribution<double> u(0.0, total);
    double pick = u(rng);
    for (std::size_t k = 0; k < allowed.size(); ++k) {
      if (w[k] <= 0.0) continue;
      if (pick < w[k]) return r.actions[allowed[k]];
      pick -= w[k];
    }
    for (std::size_t k = allowed.size(); k-- > 0;) {
      if (w[k] > 0.0) return r.actions[allowed[k]];
    }
    return std::nullopt;
  };
  if (auto a = sample(policy_of)) return *a;
  if (auto a = sample([&](std::size_t i) { return r.priors[i]; })) return *a;
  return argmax();
}

}  // namespace tcg
