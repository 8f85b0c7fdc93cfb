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

#include "emlang/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace emlang {

double Mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("Mean: empty sample");
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

double SampleStdDev(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  double mean = Mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double PercentileLinear(std::span<const double> values, double percentile) {
  if (values.empty()) throw std::invalid_argument("PercentileLinear: empty sample");
  if (percentile < 0.0 || percentile > 100.0) {
    throw std::invalid_argument("PercentileLinear: percentile out of [0, 100]");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double position = percentile / 100.0 * static_cast<double>(sorted.size() - 1);
  std::size_t lo = static_cast<std::size_t>(std::floor(position));
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  double frac = position - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

TestResult WelchTTest(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw std::invalid_argument("WelchTTest: need at least 2 values per sample");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = Mean(a), mb = Mean(b);
  const double va = std::pow(SampleStdDev(a), 2), vb = std::pow(SampleStdDev(b), 2);
  const double se2 = va / na + vb / nb;
  TestResult result;
  if (se2 == 0.0) {
    result.statistic = ma == mb ? 0.0 : (ma > mb ? INFINITY : -INFINITY);
    result.p_value = ma == mb ? 1.0 : 0.0;
    return result;
  }
  result.statistic = (ma - mb) / std::sqrt(se2);
  const double df = se2 * se2 / ((va / na) * (va / na) / (na - 1.0) +
                                 (vb / nb) * (vb / nb) / (nb - 1.0));
  boost::math::students_t dist(df);
  result.p_value = 2.0 * boost::math::cdf(boost::math::complement(
                             dist, std::fabs(result.statistic)));
  result.p_value = std::min(1.0, result.p_value);
  return result;
}

namespace {

// Number of ways to obtain each U value for sample sizes (m, n) without ties.
std::vector<double> ExactUCounts(int m, int n) {
  // counts[k][u]: arrangements of k items from `a` among the first positions.
  // Standard recurrence f(m, n, u) = f(m-1, n, u-n) + f(m, n-1, u).
  std::vector<std::vector<std::vector<double>>> f(
      m + 1, std::vector<std::vector<double>>(n + 1));
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= n; ++j) {
      f[i][j].assign(i * j + 1, 0.0);
      if (i == 0 || j == 0) {
        f[i][j][0] = 1.0;
        continue;
      }
      for (int u = 0; u <= i * j; ++u) {
        double v = 0.0;
        if (u - j >= 0 && u - j <= (i - 1) * j) v += f[i - 1][j][u - j];
        if (u <= i * (j - 1)) v += f[i][j - 1][u];
        f[i][j][u] = v;
      }
    }
  }
  return f[m][n];
}

}  // namespace

TestResult MannWhitneyU(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("MannWhitneyU: empty sample");
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(b.size());
  struct Item {
    double value;
    bool from_a;
  };
  std::vector<Item> items;
  for (double v : a) items.push_back({v, true});
  for (double v : b) items.push_back({v, false});
  std::sort(items.begin(), items.end(),
            [](const Item& x, const Item& y) { return x.value < y.value; });
  // Midranks.
  std::vector<double> ranks(items.size());
  bool ties = false;
  double tie_term = 0.0;
  for (std::size_t i = 0; i < items.size();) {
    std::size_t j = i;
    while (j + 1 < items.size() && items[j + 1].value == items[i].value) ++j;
    double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[k] = rank;
    double t = static_cast<double>(j - i + 1);
    if (t > 1) {
      ties = true;
      tie_term += t * t * t - t;
    }
    i = j + 1;
  }
  double rank_sum_a = 0.0;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (items[k].from_a) rank_sum_a += ranks[k];
  }
  TestResult result;
  result.statistic = rank_sum_a - m * (m + 1) / 2.0;
  const double mean_u = m * n / 2.0;
  if (!ties && m * n <= 400) {
    std::vector<double> counts = ExactUCounts(m, n);
    double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    double u = result.statistic;
    double u_low = std::min(u, m * n - u);
    double tail = 0.0;
    for (int k = 0; k <= static_cast<int>(std::floor(u_low)); ++k) tail += counts[k];
    result.p_value = std::min(1.0, 2.0 * tail / total);
    return result;
  }
  const double big_n = static_cast<double>(m + n);
  const double var_u =
      m * n / 12.0 * ((big_n + 1.0) - tie_term / (big_n * (big_n - 1.0)));
  if (var_u <= 0.0) {
    result.p_value = 1.0;
    return result;
  }
  double z = (std::fabs(result.statistic - mean_u) - 0.5) / std::sqrt(var_u);
  z = std::max(0.0, z);
  boost::math::normal_distribution<> normal;
  result.p_value = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(normal, z)));
  return result;
}

}  // namespace emlang
