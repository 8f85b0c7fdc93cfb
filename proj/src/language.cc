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

#include "emlang/language.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "emlang/checkpoint.h"

namespace emlang {

namespace {

[[noreturn]] void Fail(int line, const std::string& what) {
  throw std::runtime_error("language file line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

}  // namespace

EmergentLanguage RecordLanguage(const Speaker& speaker, const InputSpace& space,
                                const GameSpec& source, std::uint64_t seed, int epoch) {
  EmergentLanguage language;
  language.attributes = space.spec();
  language.channel = speaker.channel();
  language.source = source;
  language.seed = seed;
  language.epoch = epoch;
  language.messages = speaker.Greedy(space.flat_matrix());
  return language;
}

int CountMessageTypes(const EmergentLanguage& language) {
  std::unordered_set<Message, MessageHash> types(language.messages.begin(),
                                                 language.messages.end());
  return static_cast<int>(types.size());
}

std::vector<std::pair<Message, int>> MessageFrequencies(const EmergentLanguage& language) {
  std::map<Message, int> counts;
  for (const Message& m : language.messages) ++counts[m];
  return {counts.begin(), counts.end()};
}

void WriteLanguage(const EmergentLanguage& language, std::ostream& out) {
  out << "# emlang-language 1\n";
  out << "# game " << language.source.Id() << " batch " << language.source.batch_size
      << '\n';
  out << "# attributes " << language.attributes.n_attributes << ' '
      << language.attributes.n_values << '\n';
  out << "# channel " << language.channel.message_length << ' '
      << language.channel.vocab_size << ' '
      << FormatHexDouble(language.channel.temperature) << '\n';
  out << "# seed " << language.seed << " epoch " << language.epoch << '\n';
  out << "index\tattributes\tmessage\n";
  std::vector<int> tuple(language.attributes.n_attributes, 0);
  for (int i = 0; i < language.size(); ++i) {
    out << i << '\t';
    for (std::size_t a = 0; a < tuple.size(); ++a) {
      if (a) out << ',';
      out << tuple[a];
    }
    out << '\t' << ToString(language.messages[i]) << '\n';
    for (int a = language.attributes.n_attributes - 1; a >= 0; --a) {
      if (++tuple[a] < language.attributes.n_values) break;
      tuple[a] = 0;
    }
  }
}

EmergentLanguage ReadLanguage(std::istream& in) {
  EmergentLanguage language;
  std::string line;
  int line_no = 0;
  auto next = [&](const char* what) {
    if (!std::getline(in, line)) Fail(line_no + 1, std::string("missing ") + what);
    ++line_no;
  };

  next("magic");
  if (line != "# emlang-language 1") Fail(line_no, "not an emlang language file");

  next("game header");
  {
    std::istringstream s(line);
    std::string hash, key, id, batch_key;
    int batch = 0;
    if (!(s >> hash >> key >> id >> batch_key >> batch) || key != "game" ||
        batch_key != "batch") {
      Fail(line_no, "malformed game header");
    }
    language.source = ParseGameId(id, batch);
  }
  next("attributes header");
  {
    std::istringstream s(line);
    std::string hash, key;
    if (!(s >> hash >> key >> language.attributes.n_attributes >>
          language.attributes.n_values) ||
        key != "attributes") {
      Fail(line_no, "malformed attributes header");
    }
    language.attributes.Validate();
  }
  next("channel header");
  {
    std::istringstream s(line);
    std::string hash, key, temperature;
    if (!(s >> hash >> key >> language.channel.message_length >>
          language.channel.vocab_size >> temperature) ||
        key != "channel") {
      Fail(line_no, "malformed channel header");
    }
    language.channel.temperature = ParseDouble(temperature);
    language.channel.Validate();
  }
  next("seed header");
  {
    std::istringstream s(line);
    std::string hash, key, epoch_key;
    if (!(s >> hash >> key >> language.seed >> epoch_key >> language.epoch) ||
        key != "seed" || epoch_key != "epoch") {
      Fail(line_no, "malformed seed header");
    }
  }
  next("column header");
  if (line != "index\tattributes\tmessage") Fail(line_no, "unexpected column header");

  InputSpace space(language.attributes);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = SplitTabs(line);
    if (fields.size() != 3) Fail(line_no, "expected 3 tab-separated fields");
    int index = std::stoi(fields[0]);
    if (index != language.size()) Fail(line_no, "rows must be in index order");
    std::vector<int> attrs;
    std::stringstream as(fields[1]);
    std::string part;
    while (std::getline(as, part, ',')) attrs.push_back(std::stoi(part));
    if (index >= space.size() || space.IndexOf(attrs) != index) {
      Fail(line_no, "attribute tuple does not match index");
    }
    Message m;
    std::istringstream ms(fields[2]);
    int token;
    while (ms >> token) {
      if (token < 0 || token >= language.channel.vocab_size) {
        Fail(line_no, "token out of vocabulary");
      }
      m.tokens.push_back(token);
    }
    if (static_cast<int>(m.tokens.size()) != language.channel.message_length) {
      Fail(line_no, "message has wrong length");
    }
    language.messages.push_back(std::move(m));
  }
  if (language.size() != space.size()) {
    Fail(line_no, "language covers " + std::to_string(language.size()) + " of " +
                      std::to_string(space.size()) + " meanings");
  }
  return language;
}

void WriteLanguageFile(const EmergentLanguage& language, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  WriteLanguage(language, out);
}

EmergentLanguage ReadLanguageFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return ReadLanguage(in);
}

}  // namespace emlang
