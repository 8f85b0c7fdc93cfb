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

#include "emlang/checkpoint.h"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace emlang {

namespace {

constexpr int kVersion = 1;

std::string HeadName(const std::optional<Listener>& listener) {
  if (!listener) return "none";
  return listener->head() == ListenerHead::kReferential ? "referential"
                                                        : "reconstruction";
}

void WriteTensor(const ParamRef& p, std::ostream& out) {
  const Matrix& m = *p.value;
  out << "tensor " << p.name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << FormatHexDouble(m(i, j));
    }
    out << '\n';
  }
}

[[noreturn]] void Fail(const std::string& what) {
  throw std::runtime_error("checkpoint: " + what);
}

std::string Expect(std::istream& in, const std::string& keyword) {
  std::string word;
  if (!(in >> word) || word != keyword) {
    Fail("expected '" + keyword + "', found '" + word + "'");
  }
  return word;
}

}  // namespace

std::string FormatHexDouble(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%a", value);
  return buffer;
}

double ParseDouble(const std::string& text) {
  errno = 0;
  char* end = nullptr;
  double value = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return value;
}

void SaveCheckpoint(const Checkpoint& checkpoint, std::ostream& out) {
  out << "emlang-checkpoint " << kVersion << '\n';
  out << "channel " << checkpoint.channel.message_length << ' '
      << checkpoint.channel.vocab_size << ' '
      << FormatHexDouble(checkpoint.channel.temperature) << '\n';
  out << "shape " << checkpoint.shape.input_size << ' '
      << checkpoint.shape.hidden_size << ' ' << checkpoint.shape.embed_size << '\n';
  out << "seed " << checkpoint.seed << '\n';
  out << "listener_head " << HeadName(checkpoint.listener) << '\n';
  if (checkpoint.speaker) {
    Speaker speaker = *checkpoint.speaker;
    speaker.VisitParams([&](const ParamRef& p) { WriteTensor(p, out); });
  }
  if (checkpoint.listener) {
    Listener listener = *checkpoint.listener;
    listener.VisitParams([&](const ParamRef& p) { WriteTensor(p, out); });
  }
  out << "end\n";
}

Checkpoint LoadCheckpoint(std::istream& in) {
  Checkpoint cp;
  Expect(in, "emlang-checkpoint");
  int version = 0;
  if (!(in >> version) || version != kVersion) {
    Fail("unsupported version " + std::to_string(version));
  }
  std::string temperature;
  Expect(in, "channel");
  in >> cp.channel.message_length >> cp.channel.vocab_size >> temperature;
  cp.channel.temperature = ParseDouble(temperature);
  Expect(in, "shape");
  in >> cp.shape.input_size >> cp.shape.hidden_size >> cp.shape.embed_size;
  Expect(in, "seed");
  in >> cp.seed;
  Expect(in, "listener_head");
  std::string head;
  in >> head;
  if (!in) Fail("truncated header");

  std::map<std::string, Matrix> tensors;
  std::string word;
  while (in >> word && word != "end") {
    if (word != "tensor") Fail("expected 'tensor', found '" + word + "'");
    std::string name;
    Eigen::Index rows = 0, cols = 0;
    in >> name >> rows >> cols;
    if (!in || rows < 0 || cols < 0) Fail("bad tensor header for " + name);
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) {
        std::string token;
        if (!(in >> token)) Fail("truncated tensor " + name);
        m(i, j) = ParseDouble(token);
      }
    }
    tensors.emplace(name, std::move(m));
  }
  if (word != "end") Fail("missing 'end'");

  auto fill = [&](const ParamRef& p) {
    auto it = tensors.find(p.name);
    if (it == tensors.end()) Fail("missing tensor " + p.name);
    if (it->second.rows() != p.value->rows() || it->second.cols() != p.value->cols()) {
      Fail("shape mismatch for " + p.name);
    }
    *p.value = it->second;
    tensors.erase(it);
  };
  if (tensors.contains("speaker.head.weight")) {
    cp.speaker.emplace(cp.shape, cp.channel);
    cp.speaker->VisitParams(fill);
  }
  if (head != "none") {
    ListenerHead kind;
    if (head == "referential") {
      kind = ListenerHead::kReferential;
    } else if (head == "reconstruction") {
      kind = ListenerHead::kReconstruction;
    } else {
      Fail("unknown listener head '" + head + "'");
    }
    cp.listener.emplace(cp.shape, cp.channel, kind);
    cp.listener->VisitParams(fill);
  }
  if (!tensors.empty()) Fail("unexpected tensor " + tensors.begin()->first);
  return cp;
}

void SaveCheckpointFile(const Checkpoint& checkpoint, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  SaveCheckpoint(checkpoint, out);
}

Checkpoint LoadCheckpointFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return LoadCheckpoint(in);
}

}  // namespace emlang
