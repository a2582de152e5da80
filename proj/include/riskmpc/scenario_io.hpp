// Copyright 2026 The riskmpc Authors
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

#ifndef RISKMPC_SCENARIO_IO_HPP_
#define RISKMPC_SCENARIO_IO_HPP_

#include <filesystem>
#include <stdexcept>
#include <string>

#include "riskmpc/sim.hpp"

namespace riskmpc
{

class ScenarioError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Parse and validate a versioned scenario document (JSON, strict schema:
/// unknown keys are rejected, units are part of key names).
/// Throws ScenarioError naming the offending key.
Scenario parse_scenario(const std::string & text);

std::string serialize_scenario(const Scenario & scenario);

Scenario load_scenario(const std::filesystem::path & path);

/// CSV trajectory log, one row per tick. Wall times can be zeroed to make
/// the file byte-stable across runs (solve time is the only field that
/// depends on the host clock).
std::string format_log(const SimLog & log, bool zero_wall_times = false);

std::string format_grid(const RiskGrid & grid);

/// Write-temp-then-rename.
void write_text_atomic(const std::filesystem::path & path, const std::string & content);

}  // namespace riskmpc

#endif  // RISKMPC_SCENARIO_IO_HPP_
