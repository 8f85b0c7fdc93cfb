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

#ifndef EMLANG_LANGUAGE_H_
#define EMLANG_LANGUAGE_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "emlang/agents.h"
#include "emlang/games.h"
#include "emlang/meaning_space.h"

namespace emlang {

// A total mapping from meaning index to message, plus where it came from.
// messages[i] is the message for meaning i; the mapping may be non-injective.
struct EmergentLanguage {
  AttributeSpec attributes;
  ChannelSpec channel;
  GameSpec source;
  std::uint64_t seed = 0;
  int epoch = 0;
  std::vector<Message> messages;

  int size() const { return static_cast<int>(messages.size()); }
};

// Greedy-decodes every meaning of `space`.
EmergentLanguage RecordLanguage(const Speaker& speaker, const InputSpace& space,
                                const GameSpec& source, std::uint64_t seed, int epoch);

int CountMessageTypes(const EmergentLanguage& language);

// Frequency of each message type, keyed by message and sorted by message.
std::vector<std::pair<Message, int>> MessageFrequencies(const EmergentLanguage& language);

// Line-oriented text format:
//
//   # emlang-language 1
//   # game <id> batch <B>
//   # attributes <n_attributes> <n_values>
//   # channel <length> <vocab> <temperature>
//   # seed <seed> epoch <epoch>
//   index<TAB>attributes<TAB>message
//   0<TAB>0,0,0<TAB>3 1 4 1 5 9
//
// Temperature is written as a hexadecimal float so the round trip is exact.
void WriteLanguage(const EmergentLanguage& language, std::ostream& out);
EmergentLanguage ReadLanguage(std::istream& in);
void WriteLanguageFile(const EmergentLanguage& language, const std::string& path);
EmergentLanguage ReadLanguageFile(const std::string& path);

}  // namespace emlang

#endif  // EMLANG_LANGUAGE_H_
