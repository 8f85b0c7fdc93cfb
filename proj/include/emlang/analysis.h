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

#ifndef EMLANG_ANALYSIS_H_
#define EMLANG_ANALYSIS_H_

#include <map>
#include <string>
#include <vector>

#include "emlang/language.h"
#include "emlang/meaning_space.h"
#include "emlang/trainer.h"
#include "emlang/transfer_matrix.h"

namespace emlang {

// ---------------------------------------------------------------------------
// Expressivity partial order.
//
// For each target game the per-seed performances of two source languages are
// compared with a two-sided test at level alpha. A is greater than B when it
// is significantly better on at least one target and significantly worse on
// none; less is the mirror case; equal when no target is significant;
// incomparable when both directions occur.
// ---------------------------------------------------------------------------

enum class Relation { kGreater, kLess, kEqual, kIncomparable };
enum class SignificanceTest { kWelch, kMannWhitney };

std::string ToString(Relation relation);
std::string ToString(SignificanceTest test);
SignificanceTest ParseSignificanceTest(const std::string& text);

struct TargetEvidence {
  std::string target;
  double mean_a = 0.0;
  double mean_b = 0.0;
  double p_value = 1.0;
  int direction = 0;  // +1 A significantly better, -1 worse, 0 neither
};

struct OrderVerdict {
  std::string source_a;
  std::string source_b;
  Relation relation = Relation::kEqual;
  std::vector<TargetEvidence> evidence;
};

Relation Flip(Relation relation);

OrderVerdict ExpressivityPartialOrder(const TransferMatrix& matrix,
                                      const std::string& source_a,
                                      const std::string& source_b, double alpha,
                                      SignificanceTest test = SignificanceTest::kWelch);

struct OrderReport {
  std::vector<std::string> sources;
  std::vector<OrderVerdict> verdicts;  // one per unordered pair, i < j
  // Longest-path layering of the "greater" relation (cycles condensed):
  // tier k holds the sources whose longest chain of dominators has length k.
  std::vector<std::vector<std::string>> tiers;
  // Maximal paths through the cover relation of "greater".
  std::vector<std::vector<std::string>> maximal_chains;
  std::string chain;  // e.g. "a ≈ b > c ≠ d > e"
  std::vector<std::string> missing;

  const OrderVerdict* Find(const std::string& a, const std::string& b) const;
  // Relation of a to b (flipped if stored the other way round).
  Relation RelationOf(const std::string& a, const std::string& b) const;
  int TierOf(const std::string& source) const;
};

// Throws std::invalid_argument listing missing cells when the matrix is
// incomplete.
OrderReport FullOrderReport(const TransferMatrix& matrix, double alpha,
                            SignificanceTest test = SignificanceTest::kWelch);

// ---------------------------------------------------------------------------
// Information and degeneracy.
// ---------------------------------------------------------------------------

// Sum over meanings x of (ln|X| - ln f(L(x))), f = message-type frequency.
double PaperMutualInformation(const EmergentLanguage& language);

// |X| * I(X; M) computed from the explicit joint distribution of the
// language under a uniform input distribution. Analytically equal to
// PaperMutualInformation.
double EntropyMiOracle(const EmergentLanguage& language);

// Sum over message types m of (ln|X| - ln f(m)). This is the per-type sum
// as literally written in the derivation; it is reported alongside, not used
// as the mutual information.
double TypeSumInformation(const EmergentLanguage& language);

struct DegeneracyRow {
  std::string source;
  std::vector<double> counts;
  double mean = 0.0;
  double p25 = 0.0;
  double p75 = 0.0;
};

std::vector<DegeneracyRow> DegeneracyReport(
    const std::map<std::string, std::vector<EmergentLanguage>>& groups);
DegeneracyRow DegeneracyFromCounts(const std::string& source,
                                   const std::vector<double>& counts);

struct DegenerateComponent {
  Message message;
  std::vector<int> meanings;  // ascending meaning indices, size >= 2
  double mean_distance = 0.0;   // mean pairwise attribute (Hamming) distance
  double mean_euclidean = 0.0;  // mean pairwise flat-vector Euclidean distance
};

// The top_k message types by meaning count (ties by message order) among
// those with at least two meanings.
std::vector<DegenerateComponent> DegenerateComponentAnalysis(
    const EmergentLanguage& language, const InputSpace& space, int top_k);

// Mean of the components' mean distances; NaN for an empty list.
double MeanComponentDistance(const std::vector<DegenerateComponent>& components);

struct CurvePoint {
  int epoch = 0;
  double mean = 0.0;
  double sd = 0.0;
};

// Per-epoch mean and sample deviation of message-type counts across seeds,
// truncated to the shortest run.
std::vector<CurvePoint> CollapseCurve(
    const std::vector<std::vector<EpochDiagnostics>>& runs);
// Same for the per-epoch mutual information.
std::vector<CurvePoint> MutualInformationCurve(
    const std::vector<std::vector<EpochDiagnostics>>& runs);

}  // namespace emlang

#endif  // EMLANG_ANALYSIS_H_
