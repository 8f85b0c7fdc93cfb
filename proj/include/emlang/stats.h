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

#ifndef EMLANG_STATS_H_
#define EMLANG_STATS_H_

#include <span>

namespace emlang {

double Mean(std::span<const double> values);
// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double SampleStdDev(std::span<const double> values);

// Percentile in [0, 100] with linear interpolation between order statistics
// (position p/100 * (n - 1)).
double PercentileLinear(std::span<const double> values, double percentile);

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Two-sided Welch's unequal-variance t-test. Degenerate inputs: if both
// samples have zero variance, p = 1 when the means are equal and 0 otherwise.
TestResult WelchTTest(std::span<const double> a, std::span<const double> b);

// Two-sided Mann-Whitney U test. Exact null distribution when there are no
// ties and n_a * n_b is small, normal approximation with tie correction
// otherwise. The statistic is U for sample `a`.
TestResult MannWhitneyU(std::span<const double> a, std::span<const double> b);

}  // namespace emlang

#endif  // EMLANG_STATS_H_
