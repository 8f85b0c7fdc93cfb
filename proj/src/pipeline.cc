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

#include "emlang/pipeline.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "emlang/analysis.h"
#include "emlang/checkpoint.h"
#include "emlang/language.h"
#include "emlang/parallel.h"
#include "emlang/report.h"
#include "emlang/transfer.h"

namespace emlang {

namespace fs = std::filesystem;

std::filesystem::path ExperimentRoot(const ExperimentConfig& config) {
  return fs::path(config.output_dir) / ConfigHash(config);
}

std::filesystem::path RunDirectory(const ExperimentConfig& config, const std::string& game,
                                   std::uint64_t seed) {
  return ExperimentRoot(config) / game / ("seed-" + std::to_string(seed));
}

RunFiles FilesFor(const ExperimentConfig& config, const std::string& game,
                  std::uint64_t seed) {
  fs::path dir = RunDirectory(config, game, seed);
  return {dir / "checkpoint.txt", dir / "language.tsv", dir / "initial_language.tsv",
          dir / "diagnostics.tsv"};
}

namespace {

std::string JoinLines(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) out += "\n  " + item;
  return out;
}

fs::path TransferDir(const ExperimentConfig& c) { return ExperimentRoot(c) / "transfer"; }
fs::path AnalysisDir(const ExperimentConfig& c) { return ExperimentRoot(c) / "analysis"; }
fs::path FigureDir(const ExperimentConfig& c) { return ExperimentRoot(c) / "figures"; }

void WriteResolvedConfig(const ExperimentConfig& config) {
  fs::create_directories(ExperimentRoot(config));
  WriteTextFile(ExperimentRoot(config) / "config.txt", ConfigToText(config));
}

InputSpace SpaceFor(const ExperimentConfig& config) {
  return InputSpace(config.attributes, config.max_space_size);
}

}  // namespace

MissingInputsError::MissingInputsError(std::vector<std::string> missing)
    : std::runtime_error("missing inputs:" + JoinLines(missing)),
      missing_(std::move(missing)) {}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

TrainResult TrainAndStore(const ExperimentConfig& config, const std::string& game,
                          std::uint64_t seed) {
  InputSpace space = SpaceFor(config);
  TrainRunConfig rc = config.Training(game, seed);
  RunFiles files = FilesFor(config, game, seed);
  fs::create_directories(files.language.parent_path());
  TrainResult result;
  try {
    result = TrainGame(rc, space);
  } catch (const DivergenceError& e) {
    std::ostringstream diag;
    WriteDiagnostics(e.history(), diag);
    WriteTextFile(files.diagnostics, diag.str());
    throw RunDivergedError(game + " seed " + std::to_string(seed) + ": " + e.what() +
                               "; diagnostics in " + files.diagnostics.string(),
                           files.diagnostics);
  }
  std::ostringstream lang, initial, diag, ckpt;
  WriteLanguage(result.language, lang);
  WriteLanguage(result.initial_language, initial);
  WriteDiagnostics(result.diagnostics, diag);
  Checkpoint checkpoint{rc.channel, rc.Shape(space), seed, result.speaker, result.listener};
  SaveCheckpoint(checkpoint, ckpt);
  WriteTextFile(files.language, lang.str());
  WriteTextFile(files.initial_language, initial.str());
  WriteTextFile(files.diagnostics, diag.str());
  WriteTextFile(files.checkpoint, ckpt.str());
  return result;
}

void TrainMany(const ExperimentConfig& config, const std::vector<std::string>& games,
               const std::vector<std::uint64_t>& seeds, int workers) {
  WriteResolvedConfig(config);
  std::vector<std::pair<std::string, std::uint64_t>> jobs;
  for (const auto& g : games) {
    for (auto s : seeds) jobs.emplace_back(g, s);
  }
  ParallelFor(static_cast<int>(jobs.size()), workers, [&](int i) {
    TrainAndStore(config, jobs[i].first, jobs[i].second);
  });
}

std::vector<std::string> SourceIds(const ExperimentConfig& config) {
  return config.sources.empty() ? config.games : config.sources;
}

std::vector<std::string> TargetIds(const ExperimentConfig& config) {
  return config.targets.empty() ? config.games : config.targets;
}

TransferMatrix RunTransferCommand(const ExperimentConfig& config, int workers) {
  WriteResolvedConfig(config);
  InputSpace space = SpaceFor(config);
  const auto sources = SourceIds(config);
  std::vector<std::pair<std::string, std::uint64_t>> absent;
  for (const auto& g : sources) {
    for (auto s : config.seeds) {
      if (!fs::exists(FilesFor(config, g, s).language)) absent.emplace_back(g, s);
    }
  }
  if (!absent.empty()) {
    if (!config.train_missing) {
      std::vector<std::string> missing;
      for (const auto& [g, s] : absent) missing.push_back(FilesFor(config, g, s).language.string());
      throw MissingInputsError(missing);
    }
    ParallelFor(static_cast<int>(absent.size()), workers, [&](int i) {
      TrainAndStore(config, absent[i].first, absent[i].second);
    });
  }
  std::vector<SourceRun> runs;
  for (const auto& g : sources) {
    for (auto s : config.seeds) {
      EmergentLanguage lang = ReadLanguageFile(FilesFor(config, g, s).language.string());
      runs.push_back({config.Game(g), s, std::move(lang)});
    }
  }
  TransferMatrix matrix =
      TransferLanguages(runs, config.GameSpecs(TargetIds(config)), space,
                        config.Experiment(workers));
  std::ostringstream raw, aggregate;
  WriteTransferMatrix(matrix, raw);
  WriteAggregateTable(matrix, aggregate);
  WriteTextFile(TransferDir(config) / "matrix.tsv", raw.str());
  WriteTextFile(TransferDir(config) / "aggregate.tsv", aggregate.str());
  return matrix;
}

void RunAnalyzeCommand(const ExperimentConfig& config) {
  WriteResolvedConfig(config);
  InputSpace space = SpaceFor(config);
  const auto sources = SourceIds(config);
  const bool pairwise = sources.size() >= 2;
  const fs::path matrix_path = TransferDir(config) / "matrix.tsv";

  std::vector<std::string> missing;
  for (const auto& g : config.games) {
    for (auto s : config.seeds) {
      RunFiles f = FilesFor(config, g, s);
      for (const auto& p : {f.language, f.initial_language, f.diagnostics}) {
        if (!fs::exists(p)) missing.push_back(p.string());
      }
    }
  }
  if (pairwise && !fs::exists(matrix_path)) missing.push_back(matrix_path.string());
  if (!missing.empty()) throw MissingInputsError(missing);

  fs::path dir = AnalysisDir(config);
  fs::create_directories(dir);
  if (pairwise) {
    std::ifstream in(matrix_path);
    TransferMatrix matrix = ReadTransferMatrix(in);
    OrderReport report;
    try {
      report = FullOrderReport(matrix, config.alpha, config.test);
    } catch (const std::invalid_argument& e) {
      auto cells = matrix.MissingCells(matrix.Sources(), matrix.Targets(), matrix.Seeds());
      if (cells.empty()) throw;
      for (auto& c : cells) c = "transfer cell " + c;
      throw MissingInputsError(cells);
    }
    WriteTable(VerdictTable(report), dir / "verdicts.tsv");
    WriteTable(EvidenceTable(report), dir / "evidence.tsv");
    WriteTextFile(dir / "chain.txt", ChainText(report));
  } else {
    for (const char* name : {"verdicts.tsv", "evidence.tsv", "chain.txt"}) {
      fs::remove(dir / name);
    }
  }

  std::map<std::string, std::vector<EmergentLanguage>> groups;
  std::vector<InformationRow> information;
  std::vector<ComponentRecord> components;
  std::map<std::string, std::vector<CurvePoint>> collapse, mi_curves;
  for (const auto& g : config.games) {
    std::vector<std::vector<EpochDiagnostics>> runs;
    for (auto s : config.seeds) {
      RunFiles f = FilesFor(config, g, s);
      EmergentLanguage final_lang = ReadLanguageFile(f.language.string());
      EmergentLanguage initial = ReadLanguageFile(f.initial_language.string());
      std::ifstream diag(f.diagnostics);
      runs.push_back(ReadDiagnostics(diag));
      information.push_back({g, s, CountMessageTypes(final_lang),
                             PaperMutualInformation(final_lang),
                             TypeSumInformation(final_lang)});
      components.push_back(
          {g, s, "initial", DegenerateComponentAnalysis(initial, space, config.top_k)});
      components.push_back(
          {g, s, "final", DegenerateComponentAnalysis(final_lang, space, config.top_k)});
      groups[g].push_back(std::move(final_lang));
    }
    collapse[g] = CollapseCurve(runs);
    mi_curves[g] = MutualInformationCurve(runs);
  }
  // Report rows in roster order rather than map order.
  std::vector<DegeneracyRow> degeneracy;
  for (const auto& g : config.games) {
    std::vector<double> counts;
    for (const auto& lang : groups[g]) counts.push_back(CountMessageTypes(lang));
    degeneracy.push_back(DegeneracyFromCounts(g, counts));
  }
  WriteTable(DegeneracyTable(degeneracy), dir / "degeneracy.tsv");
  WriteTable(InformationTable(information), dir / "mutual_information.tsv");
  WriteTable(InformationSummary(information), dir / "mutual_information_summary.tsv");
  WriteTable(ComponentTable(components), dir / "components.tsv");
  WriteTable(ComponentDistanceTable(components), dir / "component_distance.tsv");
  WriteTable(CurveTable(collapse), dir / "collapse_curve.tsv");
  WriteTable(CurveTable(mi_curves), dir / "mi_curve.tsv");
}

std::vector<std::filesystem::path> RunReportCommand(const ExperimentConfig& config) {
  const fs::path matrix_path = TransferDir(config) / "matrix.tsv";
  const fs::path analysis = AnalysisDir(config);
  std::vector<fs::path> inputs = {matrix_path, analysis / "components.tsv",
                                  analysis / "collapse_curve.tsv", analysis / "mi_curve.tsv"};
  std::vector<std::string> missing;
  for (const auto& p : inputs) {
    if (!fs::exists(p)) missing.push_back(p.string());
  }
  if (!missing.empty()) throw MissingInputsError(missing);

  fs::path dir = FigureDir(config);
  fs::create_directories(dir);
  std::vector<fs::path> figures;
  auto emit = [&](const std::string& stem, const Table& data, const std::string& svg) {
    WriteTable(data, dir / (stem + ".tsv"));
    WriteTextFile(dir / (stem + ".svg"), svg);
    figures.push_back(dir / (stem + ".svg"));
  };

  std::ifstream in(matrix_path);
  Table summary = TransferSummaryTable(ReadTransferMatrix(in));
  emit("source_over_targets", summary, SourceOverTargetsFigure(summary));
  emit("target_over_sources", summary, TargetOverSourcesFigure(summary));

  // Final-stage components of the first seed, one panel per game.
  Table all = ReadTable(analysis / "components.tsv");
  Table final_components{all.header, {}};
  const int sc = all.Column("stage"), seed_c = all.Column("seed");
  const std::string first_seed = std::to_string(config.seeds.front());
  for (const auto& row : all.rows) {
    if (row[sc] == "final" && row[seed_c] == first_seed) final_components.rows.push_back(row);
  }
  emit("degenerate_components", final_components, ComponentFigure(final_components));

  Table collapse = ReadTable(analysis / "collapse_curve.tsv");
  emit("collapse_curve", collapse,
       CurveFigure(collapse, "Message types during training", "message types"));
  Table mi = ReadTable(analysis / "mi_curve.tsv");
  emit("mi_curve", mi, CurveFigure(mi, "Mutual information during training",
                                   "mutual information (nats, summed over meanings)"));
  return figures;
}

}  // namespace emlang
