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

#ifndef TCG_SRC_BUNDLED_DATA_HPP_
#define TCG_SRC_BUNDLED_DATA_HPP_

#include <string_view>
#include <vector>

namespace tcg::detail {

struct EmbeddedFile {
  std::string_view stem;       // e.g. "fig2-mini"
  std::string_view extension;  // ".logic" or ".problems"
  std::string_view text;
};

const std::vector<EmbeddedFile>& embedded_files();

}  // namespace tcg::detail

#endif  // TCG_SRC_BUNDLED_DATA_HPP_
