// Copyright 2026 The FSC Hanabi Benchmark Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FSC_JSON_IO_H_
#define FSC_JSON_IO_H_

#include "fsc/engine.h"
#include "fsc/metrics.h"
#include "fsc/net.h"
#include "json.hpp"

namespace fsc {

struct RuleParams;

void to_json(nlohmann::json& j, const GameConfig& c);
void from_json(const nlohmann::json& j, GameConfig& c);

void to_json(nlohmann::json& j, const ArchitectureDescriptor& a);
void from_json(const nlohmann::json& j, ArchitectureDescriptor& a);

void to_json(nlohmann::json& j, const RuleParams& p);
void from_json(const nlohmann::json& j, RuleParams& p);

void to_json(nlohmann::json& j, const CrossPlayMatrix& m);
void from_json(const nlohmann::json& j, CrossPlayMatrix& m);

void to_json(nlohmann::json& j, const AdaptationReport& r);
void from_json(const nlohmann::json& j, AdaptationReport& r);

}  // namespace fsc

#endif  // FSC_JSON_IO_H_
