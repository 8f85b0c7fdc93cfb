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

#include "emlang/meaning_space.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace emlang {

void AttributeSpec::Validate() const {
  if (n_attributes < 1) {
    throw std::invalid_argument("AttributeSpec: n_attributes must be >= 1");
  }
  if (n_values < 2) {
    throw std::invalid_argument("AttributeSpec: n_values must be >= 2");
  }
}

std::uint64_t AttributeSpec::SpaceSize() const {
  std::uint64_t size = 1;
  for (int i = 0; i < n_attributes; ++i) {
    if (size > std::numeric_limits<std::uint64_t>::max() /
                   static_cast<std::uint64_t>(n_values)) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    size *= static_cast<std::uint64_t>(n_values);
  }
  return size;
}

std::vector<std::uint8_t> MeaningVector::Flat() const {
  std::vector<std::uint8_t> flat(spec.FlatSize(), 0);
  for (int a = 0; a < spec.n_attributes; ++a) {
    flat[a * spec.n_values + attributes[a]] = 1;
  }
  return flat;
}

MeaningVector MakeMeaning(const AttributeSpec& spec, std::vector<int> attributes) {
  spec.Validate();
  if (static_cast<int>(attributes.size()) != spec.n_attributes) {
    throw std::invalid_argument("MakeMeaning: expected " +
                                std::to_string(spec.n_attributes) +
                                " attributes, got " +
                                std::to_string(attributes.size()));
  }
  for (int v : attributes) {
    if (v < 0 || v >= spec.n_values) {
      throw std::invalid_argument("MakeMeaning: attribute value " +
                                  std::to_string(v) + " out of range");
    }
  }
  return MeaningVector{spec, std::move(attributes)};
}

MeaningVector Unflatten(const AttributeSpec& spec,
                        std::span<const std::uint8_t> flat) {
  spec.Validate();
  if (static_cast<int>(flat.size()) != spec.FlatSize()) {
    throw std::invalid_argument("Unflatten: wrong flat length");
  }
  std::vector<int> attributes(spec.n_attributes, -1);
  for (int a = 0; a < spec.n_attributes; ++a) {
    for (int v = 0; v < spec.n_values; ++v) {
      std::uint8_t bit = flat[a * spec.n_values + v];
      if (bit > 1) throw std::invalid_argument("Unflatten: non-binary digit");
      if (bit == 1) {
        if (attributes[a] != -1) {
          throw std::invalid_argument("Unflatten: block " + std::to_string(a) +
                                      " has more than one hot digit");
        }
        attributes[a] = v;
      }
    }
    if (attributes[a] == -1) {
      throw std::invalid_argument("Unflatten: block " + std::to_string(a) +
                                  " has no hot digit");
    }
  }
  return MeaningVector{spec, std::move(attributes)};
}

InputSpace::InputSpace(const AttributeSpec& spec, std::uint64_t max_size)
    : spec_(spec) {
  spec.Validate();
  std::uint64_t size = spec.SpaceSize();
  if (size > max_size) {
    throw std::invalid_argument("InputSpace: " + std::to_string(spec.n_values) +
                                "^" + std::to_string(spec.n_attributes) +
                                " meanings exceeds the cap of " +
                                std::to_string(max_size));
  }
  samples_.reserve(size);
  flat_ = Eigen::MatrixXd::Zero(spec.FlatSize(), static_cast<Eigen::Index>(size));
  std::vector<int> tuple(spec.n_attributes, 0);
  for (std::uint64_t i = 0; i < size; ++i) {
    for (int a = 0; a < spec.n_attributes; ++a) {
      flat_(a * spec.n_values + tuple[a], static_cast<Eigen::Index>(i)) = 1.0;
    }
    samples_.push_back(MeaningVector{spec, tuple});
    // Odometer increment, last attribute fastest.
    for (int a = spec.n_attributes - 1; a >= 0; --a) {
      if (++tuple[a] < spec.n_values) break;
      tuple[a] = 0;
    }
  }
}

Eigen::MatrixXd InputSpace::Gather(std::span<const int> indices) const {
  Eigen::MatrixXd out(flat_.rows(), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t j = 0; j < indices.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) = flat_.col(indices[j]);
  }
  return out;
}

int InputSpace::IndexOf(std::span<const int> attributes) const {
  if (static_cast<int>(attributes.size()) != spec_.n_attributes) {
    throw std::invalid_argument("IndexOf: wrong attribute count");
  }
  int index = 0;
  for (int v : attributes) {
    if (v < 0 || v >= spec_.n_values) {
      throw std::invalid_argument("IndexOf: attribute out of range");
    }
    index = index * spec_.n_values + v;
  }
  return index;
}

InputSpace GenerateInputSpace(const AttributeSpec& spec, std::uint64_t max_size) {
  return InputSpace(spec, max_size);
}

int AttributeDistance(const MeaningVector& a, const MeaningVector& b) {
  if (!(a.spec == b.spec)) {
    throw std::invalid_argument("AttributeDistance: meanings from different specs");
  }
  int distance = 0;
  for (int i = 0; i < a.spec.n_attributes; ++i) {
    distance += a.attributes[i] != b.attributes[i];
  }
  return distance;
}

double FlatEuclideanDistance(const MeaningVector& a, const MeaningVector& b) {
  return std::sqrt(2.0 * AttributeDistance(a, b));
}

void ExportInputSpace(const InputSpace& space, std::ostream& out) {
  out << "index\tattributes\tflat\n";
  for (int i = 0; i < space.size(); ++i) {
    const MeaningVector& m = space[i];
    out << i << '\t';
    for (std::size_t a = 0; a < m.attributes.size(); ++a) {
      if (a) out << ',';
      out << m.attributes[a];
    }
    out << '\t';
    for (std::uint8_t bit : m.Flat()) out << static_cast<int>(bit);
    out << '\n';
  }
}

}  // namespace emlang
