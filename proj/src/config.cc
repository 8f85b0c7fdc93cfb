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

#include "emlang/config.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "emlang/random.h"

namespace emlang {

std::string ToString(Scale scale) { return scale == Scale::kPaper ? "paper" : "desk"; }

Scale ParseScale(const std::string& text) {
  if (text == "paper") return Scale::kPaper;
  if (text == "desk") return Scale::kDesk;
  throw ConfigError("unknown scale '" + text + "' (expected paper or desk)");
}

const std::vector<std::string>& ProfileNames() {
  static const std::vector<std::string> names = {
      "default", "channel-8x20", "hidden-128", "channel-8x20+hidden-128"};
  return names;
}

ExperimentConfig Preset(Scale scale) {
  ExperimentConfig c;
  c.scale = scale;
  if (scale == Scale::kPaper) {
    c.attributes = {4, 10};
    c.hidden_size = 256;
    c.embed_size = 256;
    c.learning_rate = 1e-4;
    c.batch_size = 1024;
    c.transfer_batch_size = 1024;
    c.games = {"recon",     "refer2",    "refer10",   "refer100",  "refer1000",
               "refer2500", "refer5000", "refer7500", "refer10000"};
    c.seeds = {0, 1, 2, 3, 4, 5};
  } else {
    c.attributes = {3, 10};
    c.hidden_size = 64;
    c.embed_size = 64;
    c.learning_rate = 1e-3;
    c.batch_size = 32;
    c.transfer_batch_size = 32;
    // Large-|D| games sit at chance for the first ~100 epochs, where the
    // absolute tolerance would otherwise stop them.
    c.convergence.min_epochs = 200;
    c.games = {"recon", "refer2", "refer100", "refer1000"};
    c.seeds = {0, 1, 2, 3};
  }
  return c;
}

void ApplyProfile(ExperimentConfig& config, const std::string& profile) {
  if (std::find(ProfileNames().begin(), ProfileNames().end(), profile) ==
      ProfileNames().end()) {
    std::string names;
    for (const auto& n : ProfileNames()) names += (names.empty() ? "" : ", ") + n;
    throw ConfigError("unknown profile '" + profile + "' (valid: " + names + ")");
  }
  config.profile = profile;
  if (profile.find("channel-8x20") != std::string::npos) {
    config.channel.message_length = 8;
    config.channel.vocab_size = 20;
  }
  if (profile.find("hidden-128") != std::string::npos) {
    config.hidden_size = 128;
    config.embed_size = 128;
  }
}

namespace {

std::string Trim(const std::string& s) {
  const char* ws = " \t\r";
  std::size_t b = s.find_first_not_of(ws);
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

std::vector<std::string> SplitList(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream s(value);
  std::string item;
  while (std::getline(s, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
T ParseNumber(const std::string& text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("expected a number, got '" + text + "'");
  }
  return value;
}

double ParseReal(const std::string& text) {
  try {
    std::size_t used = 0;
    double value = std::stod(text, &used);
    if (used == text.size()) return value;
  } catch (const std::exception&) {
  }
  throw ConfigError("expected a real number, got '" + text + "'");
}

bool ParseBool(const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ConfigError("expected true or false, got '" + text + "'");
}

std::string JoinList(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) out += (out.empty() ? "" : ", ") + item;
  return out;
}

std::string Real(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::map<std::string, Setter>& Setters() {
  static const std::map<std::string, Setter> setters = {
      {"attributes.count", [](auto& c, auto& v) { c.attributes.n_attributes = ParseNumber<int>(v); }},
      {"attributes.values", [](auto& c, auto& v) { c.attributes.n_values = ParseNumber<int>(v); }},
      {"space.max_size", [](auto& c, auto& v) { c.max_space_size = ParseNumber<std::int64_t>(v); }},
      {"channel.length", [](auto& c, auto& v) { c.channel.message_length = ParseNumber<int>(v); }},
      {"channel.vocab", [](auto& c, auto& v) { c.channel.vocab_size = ParseNumber<int>(v); }},
      {"channel.temperature", [](auto& c, auto& v) { c.channel.temperature = ParseReal(v); }},
      {"agent.hidden", [](auto& c, auto& v) { c.hidden_size = ParseNumber<int>(v); }},
      {"agent.embed", [](auto& c, auto& v) { c.embed_size = ParseNumber<int>(v); }},
      {"train.learning_rate", [](auto& c, auto& v) { c.learning_rate = ParseReal(v); }},
      {"train.batch_size", [](auto& c, auto& v) { c.batch_size = ParseNumber<int>(v); }},
      {"train.max_epochs", [](auto& c, auto& v) { c.max_epochs = ParseNumber<int>(v); }},
      {"convergence.window", [](auto& c, auto& v) { c.convergence.window = ParseNumber<int>(v); }},
      {"convergence.patience", [](auto& c, auto& v) { c.convergence.patience = ParseNumber<int>(v); }},
      {"convergence.tolerance", [](auto& c, auto& v) { c.convergence.tolerance = ParseReal(v); }},
      {"convergence.min_epochs", [](auto& c, auto& v) { c.convergence.min_epochs = ParseNumber<int>(v); }},
      {"transfer.max_epochs", [](auto& c, auto& v) { c.transfer_max_epochs = ParseNumber<int>(v); }},
      {"transfer.batch_size", [](auto& c, auto& v) { c.transfer_batch_size = ParseNumber<int>(v); }},
      {"transfer.train_missing", [](auto& c, auto& v) { c.train_missing = ParseBool(v); }},
      {"games", [](auto& c, auto& v) { c.games = SplitList(v); }},
      {"transfer.sources", [](auto& c, auto& v) { c.sources = SplitList(v); }},
      {"transfer.targets", [](auto& c, auto& v) { c.targets = SplitList(v); }},
      {"seeds",
       [](auto& c, auto& v) {
         c.seeds.clear();
         for (const auto& s : SplitList(v)) c.seeds.push_back(ParseNumber<std::uint64_t>(s));
       }},
      {"analysis.alpha", [](auto& c, auto& v) { c.alpha = ParseReal(v); }},
      {"analysis.test",
       [](auto& c, auto& v) {
         try {
           c.test = ParseSignificanceTest(v);
         } catch (const std::invalid_argument& e) {
           throw ConfigError(e.what());
         }
       }},
      {"analysis.top_k", [](auto& c, auto& v) { c.top_k = ParseNumber<int>(v); }},
      {"output.dir", [](auto& c, auto& v) { c.output_dir = v; }},
  };
  return setters;
}

}  // namespace

void ExperimentConfig::Validate() const {
  try {
    attributes.Validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("attributes: ") + e.what());
  }
  if (max_space_size < 1) throw ConfigError("space.max_size must be >= 1");
  if (attributes.SpaceSize() > static_cast<std::uint64_t>(max_space_size)) {
    throw ConfigError("attributes: space of " + std::to_string(attributes.SpaceSize()) +
                      " meanings exceeds space.max_size " + std::to_string(max_space_size));
  }
  try {
    channel.Validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("channel: ") + e.what());
  }
  if (hidden_size < 1) throw ConfigError("agent.hidden must be >= 1");
  if (embed_size < 1) throw ConfigError("agent.embed must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("train.learning_rate must be > 0");
  if (batch_size < 1) throw ConfigError("train.batch_size must be >= 1");
  if (max_epochs < 1) throw ConfigError("train.max_epochs must be >= 1");
  if (transfer_max_epochs < 1) throw ConfigError("transfer.max_epochs must be >= 1");
  if (transfer_batch_size < 1) throw ConfigError("transfer.batch_size must be >= 1");
  try {
    convergence.Validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("convergence: ") + e.what());
  }
  if (games.empty()) throw ConfigError("games: roster is empty");
  const int space = static_cast<int>(attributes.SpaceSize());
  std::set<std::string> roster;
  for (const auto& id : games) {
    if (!roster.insert(id).second) throw ConfigError("games: duplicate game '" + id + "'");
    try {
      Game(id).Validate(space);
    } catch (const std::exception& e) {
      throw ConfigError("games: " + std::string(e.what()));
    }
  }
  for (const auto* list : {&sources, &targets}) {
    for (const auto& id : *list) {
      if (!roster.count(id)) {
        throw ConfigError("transfer: game '" + id + "' is not in the roster");
      }
    }
  }
  if (seeds.empty()) throw ConfigError("seeds: at least one seed is required");
  std::set<std::uint64_t> distinct(seeds.begin(), seeds.end());
  if (distinct.size() != seeds.size()) throw ConfigError("seeds: seeds must be distinct");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("analysis.alpha must be in (0, 1)");
  if (top_k < 1) throw ConfigError("analysis.top_k must be >= 1");
  if (output_dir.empty()) throw ConfigError("output.dir must not be empty");
}

GameSpec ExperimentConfig::Game(const std::string& id) const {
  const std::string error = "unknown game id '" + id + "' (valid: " + JoinList(games) + ")";
  if (std::find(games.begin(), games.end(), id) == games.end()) throw ConfigError(error);
  try {
    return ParseGameId(id, batch_size);
  } catch (const std::invalid_argument&) {
    throw ConfigError(error);
  }
}

std::vector<GameSpec> ExperimentConfig::GameSpecs(
    const std::vector<std::string>& ids) const {
  std::vector<GameSpec> out;
  for (const auto& id : ids) out.push_back(Game(id));
  return out;
}

TrainRunConfig ExperimentConfig::Training(const std::string& game,
                                          std::uint64_t seed) const {
  TrainRunConfig rc;
  rc.game = Game(game);
  rc.channel = channel;
  rc.hidden_size = hidden_size;
  rc.embed_size = embed_size;
  rc.adam.learning_rate = learning_rate;
  rc.max_epochs = max_epochs;
  rc.convergence = convergence;
  rc.seed = seed;
  return rc;
}

TransferConfig ExperimentConfig::Transfer() const {
  TransferConfig tc;
  tc.hidden_size = hidden_size;
  tc.embed_size = embed_size;
  tc.adam.learning_rate = learning_rate;
  tc.max_epochs = transfer_max_epochs;
  tc.convergence = convergence;
  tc.batch_size = transfer_batch_size;
  return tc;
}

TransferExperimentConfig ExperimentConfig::Experiment(int workers) const {
  TransferExperimentConfig ec;
  ec.source = Training(games.front(), 0);
  ec.transfer = Transfer();
  ec.workers = workers;
  return ec;
}

ExperimentConfig ParseConfig(const std::string& text, std::optional<Scale> scale_override,
                             const std::string& source_name) {
  struct Entry {
    int line;
    std::string key;
    std::string value;
  };
  std::vector<Entry> entries;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  auto fail = [&](int line, const std::string& message) {
    throw ConfigError(source_name + ":" + std::to_string(line) + ": " + message);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = Trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
    Entry e{line_no, Trim(line.substr(0, eq)), Trim(line.substr(eq + 1))};
    if (e.key.empty()) fail(line_no, "missing key");
    if (entries.empty() && e.key != "version") {
      fail(line_no, "the first setting must be 'version = 1'");
    }
    if (!seen.insert(e.key).second) fail(line_no, "duplicate key '" + e.key + "'");
    if (e.key != "version" && e.key != "scale" && e.key != "profile" &&
        !Setters().count(e.key)) {
      fail(line_no, "unknown key '" + e.key + "'");
    }
    entries.push_back(std::move(e));
  }
  if (entries.empty()) fail(line_no, "empty config; expected 'version = 1'");
  if (entries.front().value != "1") {
    fail(entries.front().line, "unsupported version '" + entries.front().value + "'");
  }

  Scale scale = Scale::kDesk;
  std::string profile = "default";
  for (const auto& e : entries) {
    try {
      if (e.key == "scale") scale = ParseScale(e.value);
      if (e.key == "profile") profile = e.value;
    } catch (const ConfigError& error) {
      fail(e.line, error.what());
    }
  }
  if (scale_override) scale = *scale_override;
  ExperimentConfig config = Preset(scale);
  int profile_line = 0;
  for (const auto& e : entries) {
    if (e.key == "profile") profile_line = e.line;
  }
  try {
    ApplyProfile(config, profile);
  } catch (const ConfigError& error) {
    fail(profile_line, error.what());
  }
  std::map<std::string, int> lines;
  for (const auto& e : entries) {
    lines[e.key] = e.line;
    if (e.key == "version" || e.key == "scale" || e.key == "profile") continue;
    try {
      Setters().at(e.key)(config, e.value);
    } catch (const ConfigError& error) {
      fail(e.line, e.key + ": " + error.what());
    }
  }
  try {
    config.Validate();
  } catch (const ConfigError& error) {
    // Point at the line of the key the message starts with, when present.
    std::string message = error.what();
    int line = 0;
    for (const auto& [key, l] : lines) {
      std::string head = key.substr(0, key.find('.'));
      if (message.rfind(key, 0) == 0 || message.rfind(head + ":", 0) == 0) line = l;
    }
    if (line > 0) fail(line, message);
    throw ConfigError(source_name + ": " + message);
  }
  return config;
}

ExperimentConfig LoadConfig(const std::string& path, std::optional<Scale> scale_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str(), scale_override, path);
}

namespace {

// `complete` adds the roster, seeds, analysis and output settings, none of
// which changes the result of a single run.
std::string ResultText(const ExperimentConfig& c, bool complete) {
  std::ostringstream out;
  auto seeds = [&] {
    std::vector<std::string> s;
    for (auto seed : c.seeds) s.push_back(std::to_string(seed));
    return JoinList(s);
  };
  out << "version = 1\n"
      << "scale = " << ToString(c.scale) << "\n"
      << "attributes.count = " << c.attributes.n_attributes << "\n"
      << "attributes.values = " << c.attributes.n_values << "\n"
      << "space.max_size = " << c.max_space_size << "\n"
      << "channel.length = " << c.channel.message_length << "\n"
      << "channel.vocab = " << c.channel.vocab_size << "\n"
      << "channel.temperature = " << Real(c.channel.temperature) << "\n"
      << "agent.hidden = " << c.hidden_size << "\n"
      << "agent.embed = " << c.embed_size << "\n"
      << "train.learning_rate = " << Real(c.learning_rate) << "\n"
      << "train.batch_size = " << c.batch_size << "\n"
      << "train.max_epochs = " << c.max_epochs << "\n"
      << "convergence.window = " << c.convergence.window << "\n"
      << "convergence.patience = " << c.convergence.patience << "\n"
      << "convergence.tolerance = " << Real(c.convergence.tolerance) << "\n"
      << "convergence.min_epochs = " << c.convergence.min_epochs << "\n"
      << "transfer.max_epochs = " << c.transfer_max_epochs << "\n"
      << "transfer.batch_size = " << c.transfer_batch_size << "\n";
  if (!complete) return out.str();
  out << "transfer.train_missing = " << (c.train_missing ? "true" : "false") << "\n"
      << "games = " << JoinList(c.games) << "\n";
  if (!c.sources.empty()) out << "transfer.sources = " << JoinList(c.sources) << "\n";
  if (!c.targets.empty()) out << "transfer.targets = " << JoinList(c.targets) << "\n";
  out << "seeds = " << seeds() << "\n"
      << "analysis.alpha = " << Real(c.alpha) << "\n"
      << "analysis.test = " << ToString(c.test) << "\n"
      << "analysis.top_k = " << c.top_k << "\n"
      << "output.dir = " << c.output_dir << "\n";
  return out.str();
}

}  // namespace

std::string ConfigToText(const ExperimentConfig& config) {
  return ResultText(config, true);
}

std::string ConfigHash(const ExperimentConfig& config) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(Fnv1a(ResultText(config, false))));
  return buffer;
}

}  // namespace emlang
