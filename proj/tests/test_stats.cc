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

#include <vector>

#include "doctest.h"
#include "emlang/stats.h"

namespace emlang {
namespace {

// Reference values from scipy.stats 1.15 (ttest_ind with equal_var=False,
// mannwhitneyu two-sided) and numpy.percentile.

TEST_CASE("mean, standard deviation and linear percentiles") {
  std::vector<double> v = {3, 1, 4, 1, 5, 9, 2, 6};
  CHECK(Mean(v) == doctest::Approx(3.875));
  CHECK(SampleStdDev(v) == doctest::Approx(2.748376));
  CHECK(PercentileLinear(v, 25) == doctest::Approx(1.75));
  CHECK(PercentileLinear(v, 50) == doctest::Approx(3.5));
  CHECK(PercentileLinear(v, 75) == doctest::Approx(5.25));
  CHECK(PercentileLinear(v, 10) == doctest::Approx(1.0));
  CHECK(PercentileLinear(v, 0) == 1.0);
  CHECK(PercentileLinear(v, 100) == 9.0);
  std::vector<double> one = {7};
  CHECK(SampleStdDev(one) == 0.0);
}

TEST_CASE("Welch t-test matches scipy") {
  std::vector<double> a = {0.91, 0.93, 0.89, 0.95, 0.92, 0.90};
  std::vector<double> b = {0.85, 0.88, 0.86, 0.84, 0.90, 0.87};
  TestResult r = WelchTTest(a, b);
  CHECK(r.statistic == doctest::Approx(4.00891862868636).epsilon(1e-9));
  CHECK(r.p_value == doctest::Approx(0.002482376529730179).epsilon(1e-6));

  std::vector<double> c = {1, 2, 3, 4, 5};
  std::vector<double> d = {2, 4, 6, 8, 10, 12, 14};
  r = WelchTTest(c, d);
  CHECK(r.statistic == doctest::Approx(-2.809757434745082).epsilon(1e-9));
  CHECK(r.p_value == doctest::Approx(0.022747255279670916).epsilon(1e-6));

  std::vector<double> e = {0.5, 0.52, 0.49};
  std::vector<double> f = {0.51, 0.50, 0.53, 0.48};
  r = WelchTTest(e, f);
  CHECK(r.p_value == doctest::Approx(0.9075293344470844).epsilon(1e-6));
}

TEST_CASE("Welch t-test is symmetric and handles zero variance") {
  std::vector<double> a = {1, 2, 3, 4};
  std::vector<double> b = {2, 3, 5, 8};
  CHECK(WelchTTest(a, b).p_value == doctest::Approx(WelchTTest(b, a).p_value));
  CHECK(WelchTTest(a, b).statistic == doctest::Approx(-WelchTTest(b, a).statistic));
  std::vector<double> same = {1, 1, 1};
  std::vector<double> other = {2, 2, 2};
  CHECK(WelchTTest(same, same).p_value == 1.0);
  CHECK(WelchTTest(same, other).p_value == 0.0);
}

TEST_CASE("Mann-Whitney U matches scipy") {
  // No ties: exact null distribution.
  std::vector<double> a = {1.1, 2.3, 3.5, 4.2, 5.9};
  std::vector<double> b = {2.0, 4.4, 6.1, 8.3, 10.2, 12.7, 14.5};
  TestResult r = MannWhitneyU(a, b);
  CHECK(r.statistic == 5.0);
  CHECK(r.p_value == doctest::Approx(0.04797979797979798).epsilon(1e-9));
  std::vector<double> c = {0.1, 0.2, 0.3};
  std::vector<double> d = {0.4, 0.5, 0.6};
  CHECK(MannWhitneyU(c, d).p_value == doctest::Approx(0.1).epsilon(1e-9));

  // Ties: normal approximation with tie and continuity correction.
  std::vector<double> e = {0.91, 0.93, 0.89, 0.95, 0.92, 0.90};
  std::vector<double> f = {0.85, 0.88, 0.86, 0.84, 0.90, 0.87};
  r = MannWhitneyU(e, f);
  CHECK(r.statistic == 34.5);
  CHECK(r.p_value == doctest::Approx(0.010271837730705762).epsilon(1e-9));
  std::vector<double> g = {1, 2, 2, 3, 3, 3, 4};
  std::vector<double> h = {3, 4, 4, 5, 5, 6, 6, 7};
  r = MannWhitneyU(g, h);
  CHECK(r.statistic == 3.5);
  CHECK(r.p_value == doctest::Approx(0.004793348746185457).epsilon(1e-9));
  std::vector<double> flat = {2, 2, 2};
  CHECK(MannWhitneyU(flat, flat).p_value == 1.0);
}

}  // namespace
}  // namespace emlang
