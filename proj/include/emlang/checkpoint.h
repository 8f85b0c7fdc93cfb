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

#ifndef EMLANG_CHECKPOINT_H_
#define EMLANG_CHECKPOINT_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>

#include "emlang/agents.h"

namespace emlang {

// Versioned text dump of all parameter tensors keyed by module path. Values
// are written as hexadecimal floating point, so loading is bit-exact.
//
//   emlang-checkpoint 1
//   channel <length> <vocab> <temperature>
//   shape <input> <hidden> <embed>
//   seed <seed>
//   listener_head <referential|reconstruction|none>
//   tensor <name> <rows> <cols>
//   <one line per row>
//   ...
//   end
struct Checkpoint {
  ChannelSpec channel;
  AgentShape shape;
  std::uint64_t seed = 0;
  std::optional<Speaker> speaker;
  std::optional<Listener> listener;
};

void SaveCheckpoint(const Checkpoint& checkpoint, std::ostream& out);
Checkpoint LoadCheckpoint(std::istream& in);

void SaveCheckpointFile(const Checkpoint& checkpoint, const std::string& path);
Checkpoint LoadCheckpointFile(const std::string& path);

std::string FormatHexDouble(double value);
double ParseDouble(const std::string& text);

}  // namespace emlang

#endif  // EMLANG_CHECKPOINT_H_
