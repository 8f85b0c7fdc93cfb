// Copyright 2026 The emlang Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: train, transfer, analyze, report.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "emlang/config.h"
#include "emlang/pipeline.h"

namespace {

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitMissing = 4;

struct CommonFlags {
  std::string config_path;
  std::string scale;
  std::string out;
  std::vector<std::uint64_t> seeds;
  int workers = 1;
};

void AddCommon(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Experiment config file")->required();
  cmd->add_option("--scale", flags.scale, "Scale preset (paper or desk)")
      ->check(CLI::IsMember({"paper", "desk"}));
  cmd->add_option("--out", flags.out, "Output directory (overrides output.dir)");
  cmd->add_option("--seed,--seeds", flags.seeds, "Seeds (override the config list)")
      ->delimiter(',');
  cmd->add_option("--workers", flags.workers, "Concurrent runs")
      ->check(CLI::PositiveNumber);
}

emlang::ExperimentConfig Resolve(const CommonFlags& flags) {
  std::optional<emlang::Scale> scale;
  if (!flags.scale.empty()) scale = emlang::ParseScale(flags.scale);
  emlang::ExperimentConfig config = emlang::LoadConfig(flags.config_path, scale);
  if (!flags.out.empty()) config.output_dir = flags.out;
  if (!flags.seeds.empty()) config.seeds = flags.seeds;
  config.Validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Emergent language games: training, transfer and analysis"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::vector<std::string> games;
  auto* train = app.add_subcommand("train", "Train speaker/listener pairs");
  AddCommon(train, flags);
  train->add_option("--game", games, "Game ids to train (default: whole roster)")
      ->delimiter(',');
  auto* transfer = app.add_subcommand("transfer", "Fill the transfer matrix");
  AddCommon(transfer, flags);
  auto* analyze = app.add_subcommand("analyze", "Verdicts and language reports");
  AddCommon(analyze, flags);
  auto* report = app.add_subcommand("report", "Render figures");
  AddCommon(report, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    emlang::ExperimentConfig config = Resolve(flags);
    const std::string root = emlang::ExperimentRoot(config).string();
    if (train->parsed()) {
      if (games.empty()) games = config.games;
      for (const auto& g : games) {
        if (std::find(config.games.begin(), config.games.end(), g) == config.games.end()) {
          std::string valid;
          for (const auto& id : config.games) valid += (valid.empty() ? "" : ", ") + id;
          std::cerr << "error: unknown game id '" << g << "' (valid: " << valid << ")\n";
          return kExitUsage;
        }
      }
      emlang::TrainMany(config, games, config.seeds, flags.workers);
      std::cout << "trained " << games.size() * config.seeds.size() << " run(s) under "
                << root << "\n";
    } else if (transfer->parsed()) {
      auto matrix = emlang::RunTransferCommand(config, flags.workers);
      int failed = 0;
      for (const auto& cell : matrix.cells()) {
        if (cell.failed) {
          ++failed;
          std::cerr << "failed cell " << cell.source << "/" << cell.target << "/"
                    << cell.seed << ": " << cell.error << "\n";
        }
      }
      std::cout << "transfer matrix: " << matrix.cells().size() << " cells ("
                << failed << " failed) under " << root << "/transfer\n";
      if (failed > 0) return kExitError;
    } else if (analyze->parsed()) {
      emlang::RunAnalyzeCommand(config);
      std::cout << "analysis written under " << root << "/analysis\n";
    } else if (report->parsed()) {
      for (const auto& path : emlang::RunReportCommand(config)) {
        std::cout << path.string() << "\n";
      }
    }
  } catch (const emlang::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const emlang::RunDivergedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDiverged;
  } catch (const emlang::MissingInputsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMissing;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
