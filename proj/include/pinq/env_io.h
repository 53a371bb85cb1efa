// Copyright 2026 The Authors.
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

// JSON environment description files. The schema is documented in
// docs/formats.md.

#ifndef PINQ_ENV_IO_H_
#define PINQ_ENV_IO_H_

#include <string>

#include <nlohmann/json.hpp>

#include "pinq/env.h"

namespace pinq {

nlohmann::json EnvironmentToJson(const Environment& env);
Environment EnvironmentFromJson(const nlohmann::json& j);

// Canonical text form (sorted keys, two-space indent). Parsing and re-emitting
// a canonical document reproduces it byte for byte.
std::string DumpEnvironment(const Environment& env);
Environment ParseEnvironment(const std::string& text);

}  // namespace pinq

#endif  // PINQ_ENV_IO_H_
