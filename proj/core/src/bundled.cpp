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

#include <map>
#include <mutex>
#include <stdexcept>

#include "bundled_data.hpp"
#include "tcg/logic.hpp"
#include "tcg/sokoban.hpp"

namespace tcg {

namespace {

constexpr const char* kSokobanName = "sokoban-6x6";

const std::vector<std::string>& ordered_names() {
  static const std::vector<std::string> names = {
      "fig2-mini", "int-prop-sequent", "cl-prop-sequent", "modal-k",
      "modal-t",   "modal-s4",         "modal-s5",        "linear-prop",
      "fo-tableaux", kSokobanName};
  return names;
}

const detail::EmbeddedFile* find_file(std::string_view stem,
                                      std::string_view ext) {
  for (const auto& f : detail::embedded_files()) {
    if (f.stem == stem && f.extension == ext) return &f;
  }
  return nullptr;
}

class Registry {
 public:
  std::shared_ptr<const LogicDef> get(std::string_view name) {
    std::lock_guard lock(mu_);
    auto it = cache_.find(name);
    if (it != cache_.end()) return it->second;
    std::shared_ptr<const LogicDef> def;
    if (name == kSokobanName) {
      def = std::make_shared<LogicDef>(generate_sokoban_logic());
    } else if (const auto* file = find_file(name, ".logic")) {
      def = std::make_shared<LogicDef>(parse_logic(file->text));
    } else {
      throw std::out_of_range("unknown bundled logic '" + std::string(name) +
                              "'");
    }
    cache_.emplace(std::string(name), def);
    return def;
  }

 private:
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<const LogicDef>, std::less<>> cache_;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

std::vector<std::string> bundled_logic_names() { return ordered_names(); }

std::vector<LogicDef> bundled_logics() {
  std::vector<LogicDef> out;
  for (const auto& name : ordered_names()) out.push_back(bundled_logic(name));
  return out;
}

const LogicDef& bundled_logic(std::string_view name) {
  return *registry().get(name);
}

std::shared_ptr<const LogicDef> bundled_logic_ptr(std::string_view name) {
  return registry().get(name);
}

ProblemSet bundled_problems(std::string_view logic_name) {
  if (const auto* file = find_file(logic_name, ".problems")) {
    return parse_problems(file->text, std::string(logic_name));
  }
  return ProblemSet{std::string(logic_name), {}};
}

int recommended_move_cap(std::string_view logic_name) {
  if (logic_name == kSokobanName || logic_name == "fo-tableaux") return 128;
  return 64;
}

}  // namespace tcg
