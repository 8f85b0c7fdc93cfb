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

#ifndef EMLANG_MEANING_SPACE_H_
#define EMLANG_MEANING_SPACE_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace emlang {

// Shape of a categorical meaning: `n_attributes` one-hot blocks of width
// `n_values` each.
struct AttributeSpec {
  int n_attributes = 4;
  int n_values = 10;

  void Validate() const;
  int FlatSize() const { return n_attributes * n_values; }
  // n_values ^ n_attributes, saturating at UINT64_MAX.
  std::uint64_t SpaceSize() const;

  friend bool operator==(const AttributeSpec&, const AttributeSpec&) = default;
};

struct MeaningVector {
  AttributeSpec spec;
  std::vector<int> attributes;

  // Flattened binary vector of length spec.FlatSize().
  std::vector<std::uint8_t> Flat() const;

  friend bool operator==(const MeaningVector&, const MeaningVector&) = default;
};

MeaningVector MakeMeaning(const AttributeSpec& spec, std::vector<int> attributes);

// Inverse of MeaningVector::Flat. Throws if `flat` is not a valid
// concatenation of one-hot blocks.
MeaningVector Unflatten(const AttributeSpec& spec,
                        std::span<const std::uint8_t> flat);

// Every meaning of a spec, in lexicographic order of attribute tuples (first
// attribute most significant). Index i in `samples` is the meaning index used
// throughout the library.
class InputSpace {
 public:
  explicit InputSpace(const AttributeSpec& spec,
                      std::uint64_t max_size = kDefaultMaxSize);

  static constexpr std::uint64_t kDefaultMaxSize = 1'000'000;

  const AttributeSpec& spec() const { return spec_; }
  int size() const { return static_cast<int>(samples_.size()); }
  const MeaningVector& operator[](int index) const { return samples_[index]; }
  const std::vector<MeaningVector>& samples() const { return samples_; }

  // Column-per-meaning matrix of flat vectors, FlatSize() x size().
  const Eigen::MatrixXd& flat_matrix() const { return flat_; }
  // Gathers the flat columns for the given meaning indices.
  Eigen::MatrixXd Gather(std::span<const int> indices) const;

  int IndexOf(std::span<const int> attributes) const;

 private:
  AttributeSpec spec_;
  std::vector<MeaningVector> samples_;
  Eigen::MatrixXd flat_;
};

InputSpace GenerateInputSpace(const AttributeSpec& spec,
                              std::uint64_t max_size = InputSpace::kDefaultMaxSize);

// Number of attribute positions where the meanings differ.
int AttributeDistance(const MeaningVector& a, const MeaningVector& b);

// Euclidean distance between flat vectors; equals sqrt(2 * Hamming).
double FlatEuclideanDistance(const MeaningVector& a, const MeaningVector& b);

// Debug export. Columns: index, attributes (comma separated), flat bits.
void ExportInputSpace(const InputSpace& space, std::ostream& out);

}  // namespace emlang

#endif  // EMLANG_MEANING_SPACE_H_
