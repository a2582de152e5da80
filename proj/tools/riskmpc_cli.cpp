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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "riskmpc/fixtures.hpp"
#include "riskmpc/risk_kernels.hpp"
#include "riskmpc/scenario_io.hpp"
#include "riskmpc/sim.hpp"

namespace
{

// A scenario argument is either a file path or the name of a shipped fixture.
riskmpc::Scenario resolve_scenario(const std::string & arg)
{
  if (std::filesystem::exists(arg)) {
    return riskmpc::load_scenario(arg);
  }
  if (const auto * fixture = riskmpc::find_fixture(arg)) {
    return riskmpc::parse_scenario(std::string(fixture->text));
  }
  throw riskmpc::ScenarioError("no such scenario file or fixture: " + arg);
}

void print_metrics(const riskmpc::Scenario & scenario, const riskmpc::SimLog & log)
{
  const auto m = riskmpc::metrics(log, scenario);
  std::printf("scenario: %s\n", scenario.name.c_str());
  std::printf("ticks: %zu\n", log.ticks.size());
  std::printf("mean_solve_time_s: %.6f\n", m.mean_solve_time_s);
  std::printf("std_solve_time_s: %.6f\n", m.std_solve_time_s);
  std::printf("min_object_distance_m: %.3f\n", m.min_object_distance);
  std::printf("max_bound_violation_m: %.4f\n", m.max_bound_violation);
  std::printf("terminal_lateral_error_m: %.4f\n", m.terminal_lateral_error);
  std::printf("min_speed_mps: %.3f\n", m.min_speed);
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"risk-averse model-predictive trajectory generator"};
  app.require_subcommand(1);

  std::string scenario_arg;
  std::string out_path;
  int seed = 0;
  bool zero_times = false;

  auto * run = app.add_subcommand("run", "run a closed-loop simulation and print metrics");
  run->add_option("scenario", scenario_arg, "scenario file or fixture name")->required();
  run->add_option("--out", out_path, "write the trajectory log (CSV) to this file");
  run->add_option("--seed", seed, "reserved; the pipeline is deterministic and ignores it");
  run->add_flag("--zero-times", zero_times,
                "record solve times as 0 in the log for byte-stable output");

  auto * validate = app.add_subcommand("validate", "parse and validate a scenario");
  validate->add_option("scenario", scenario_arg, "scenario file or fixture name")->required();

  std::vector<double> region;
  double resolution = 0.25;
  double field_time = 0.0;
  auto * field = app.add_subcommand("field", "rasterize the risk field of a scenario");
  field->add_option("scenario", scenario_arg, "scenario file or fixture name")->required();
  field->add_option("--region", region, "xmin xmax ymin ymax")->expected(4)->required();
  field->add_option("--res", resolution, "cell size in meters")->required();
  field->add_option("--time", field_time, "evaluate objects at this time (default 0)");
  field->add_option("--out", out_path, "write the raster here instead of stdout");

  auto * fixtures = app.add_subcommand("fixtures", "list shipped case-study fixtures");
  std::string dump_name;
  fixtures->add_option("--dump", dump_name, "print the named fixture document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) {
      const auto scenario = resolve_scenario(scenario_arg);
      const auto log = riskmpc::run(scenario);
      if (!out_path.empty()) {
        riskmpc::write_text_atomic(out_path, riskmpc::format_log(log, zero_times));
      }
      print_metrics(scenario, log);
    } else if (validate->parsed()) {
      resolve_scenario(scenario_arg);
      std::printf("ok\n");
    } else if (field->parsed()) {
      const auto scenario = resolve_scenario(scenario_arg);
      std::vector<riskmpc::ObjectRisk> objects;
      for (auto idx : riskmpc::visible_objects(scenario, field_time)) {
        const auto & track = scenario.objects[idx];
        objects.push_back({track.pose_at(field_time), track.risk});
      }
      const riskmpc::Rect rect{region[0], region[1], region[2], region[3]};
      const auto grid =
        riskmpc::sample_field(rect, resolution, scenario.lanes, objects, scenario.infra);
      const auto text = riskmpc::format_grid(grid);
      if (!out_path.empty()) {
        riskmpc::write_text_atomic(out_path, text);
      } else {
        std::fwrite(text.data(), 1, text.size(), stdout);
      }
    } else if (fixtures->parsed()) {
      if (!dump_name.empty()) {
        const auto * f = riskmpc::find_fixture(dump_name);
        if (f == nullptr) {
          throw riskmpc::ScenarioError("no such fixture: " + dump_name);
        }
        std::fwrite(f->text.data(), 1, f->text.size(), stdout);
      } else {
        for (const auto & f : riskmpc::builtin_fixtures()) {
          std::printf("%.*s\n", static_cast<int>(f.name.size()), f.name.data());
        }
      }
    }
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
