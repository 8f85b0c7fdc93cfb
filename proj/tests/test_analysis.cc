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

#include <cmath>
#include <map>
#include <numbers>
#include <unordered_map>

#include "doctest.h"
#include "emlang/analysis.h"
#include "emlang/random.h"

namespace emlang {
namespace {

void AddRow(TransferMatrix& m, const std::string& source, const std::string& target,
            const std::vector<double>& values) {
  for (std::size_t s = 0; s < values.size(); ++s) {
    TransferCell c;
    c.source = source;
    c.target = target;
    c.seed = s;
    c.value = values[s];
    m.Set(c);
  }
}

std::vector<double> Around(double mean) { return {mean - 0.01, mean, mean + 0.01, mean + 0.005}; }

TEST_CASE("verdict rule cases") {
  TransferMatrix m;
  for (const char* t : {"t1", "t2", "t3"}) {
    AddRow(m, "strong", t, Around(0.9));
    AddRow(m, "weak", t, Around(0.5));
    AddRow(m, "twin", t, Around(0.5));
  }
  AddRow(m, "mixed", "t1", Around(0.9));
  AddRow(m, "mixed", "t2", Around(0.1));
  AddRow(m, "mixed", "t3", Around(0.5));

  OrderVerdict v = ExpressivityPartialOrder(m, "strong", "weak", 0.05);
  CHECK(v.relation == Relation::kGreater);
  REQUIRE(v.evidence.size() == 3);
  for (const auto& e : v.evidence) {
    CHECK(e.direction == 1);
    CHECK(e.p_value < 0.05);
    CHECK(e.mean_a > e.mean_b);
  }
  CHECK(ExpressivityPartialOrder(m, "weak", "strong", 0.05).relation == Relation::kLess);
  CHECK(ExpressivityPartialOrder(m, "weak", "twin", 0.05).relation == Relation::kEqual);
  CHECK(ExpressivityPartialOrder(m, "mixed", "weak", 0.05).relation ==
        Relation::kIncomparable);
  CHECK(ExpressivityPartialOrder(m, "strong", "weak", 0.05, SignificanceTest::kMannWhitney)
            .relation == Relation::kGreater);
}

TEST_CASE("one significant target without contrary evidence is enough") {
  TransferMatrix m;
  AddRow(m, "a", "t1", Around(0.9));
  AddRow(m, "b", "t1", Around(0.5));
  AddRow(m, "a", "t2", {0.4, 0.6, 0.5, 0.45});
  AddRow(m, "b", "t2", {0.5, 0.55, 0.42, 0.6});
  OrderVerdict v = ExpressivityPartialOrder(m, "a", "b", 0.05);
  CHECK(v.relation == Relation::kGreater);
  CHECK(v.evidence[1].direction == 0);
}

TEST_CASE("verdicts are antisymmetric") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    TransferMatrix m;
    for (const char* t : {"t1", "t2", "t3"}) {
      for (const char* s : {"a", "b"}) {
        std::vector<double> v;
        double centre = UniformOpen01(rng);
        for (int k = 0; k < 5; ++k) v.push_back(centre + 0.05 * SampleNormal(rng));
        AddRow(m, s, t, v);
      }
    }
    Relation ab = ExpressivityPartialOrder(m, "a", "b", 0.05).relation;
    Relation ba = ExpressivityPartialOrder(m, "b", "a", 0.05).relation;
    CHECK(ba == Flip(ab));
  }
}

TEST_CASE("verdicts need two seeds per source") {
  TransferMatrix m;
  AddRow(m, "a", "t", {0.5});
  AddRow(m, "b", "t", {0.4});
  CHECK_THROWS_AS(ExpressivityPartialOrder(m, "a", "b", 0.05), std::invalid_argument);
}

TEST_CASE("identical constants are all equal") {
  TransferMatrix m;
  for (const char* s : {"a", "b", "c"}) {
    for (const char* t : {"a", "b", "c"}) AddRow(m, s, t, {0.7, 0.7, 0.7});
  }
  OrderReport r = FullOrderReport(m, 0.05);
  CHECK(r.verdicts.size() == 3);
  for (const auto& v : r.verdicts) CHECK(v.relation == Relation::kEqual);
  CHECK(r.tiers.size() == 1);
  CHECK(r.chain == "a ≈ b ≈ c");
}

TEST_CASE("a dominant row beats every other source") {
  // Hand-applied rule: "top" is better than both others on every target;
  // "mid" and "low" are identical, so equal.
  TransferMatrix m;
  for (const char* t : {"x", "y", "z"}) {
    AddRow(m, "top", t, {0.95, 0.96, 0.97});
    AddRow(m, "mid", t, {0.50, 0.52, 0.51});
    AddRow(m, "low", t, {0.50, 0.52, 0.51});
  }
  OrderReport r = FullOrderReport(m, 0.05);
  CHECK(r.RelationOf("top", "mid") == Relation::kGreater);
  CHECK(r.RelationOf("mid", "top") == Relation::kLess);
  CHECK(r.RelationOf("low", "top") == Relation::kLess);
  CHECK(r.RelationOf("mid", "low") == Relation::kEqual);
  CHECK(r.TierOf("top") == 0);
  CHECK(r.TierOf("mid") == 1);
  CHECK(r.chain == "top > mid ≈ low");
  CHECK(r.maximal_chains.size() == 2);
}

TEST_CASE("chains follow the cover relation") {
  TransferMatrix m;
  const std::vector<std::pair<std::string, double>> levels = {
      {"a", 0.9}, {"b", 0.7}, {"c", 0.5}, {"d", 0.3}};
  for (const auto& [s, level] : levels) {
    for (const char* t : {"t1", "t2"}) AddRow(m, s, t, Around(level));
  }
  // "e" beats "d" on t1 only and loses to "d" on t2: incomparable with d,
  // below everything else.
  AddRow(m, "e", "t1", Around(0.4));
  AddRow(m, "e", "t2", Around(0.2));
  OrderReport r = FullOrderReport(m, 0.05);
  CHECK(r.chain == "a > b > c > d ≠ e");
  REQUIRE(r.maximal_chains.size() == 2);
  CHECK(r.maximal_chains[0] == std::vector<std::string>{"a", "b", "c", "d"});
  CHECK(r.maximal_chains[1] == std::vector<std::string>{"a", "b", "c", "e"});
}

TEST_CASE("incomplete matrices list the missing cells") {
  TransferMatrix m;
  AddRow(m, "a", "t1", {0.5, 0.6});
  AddRow(m, "b", "t1", {0.5});
  TransferCell failed{"a", "t2", 1, MetricKind::kAccuracy, 0.0, true, "boom"};
  m.Set(failed);
  try {
    FullOrderReport(m, 0.05);
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    std::string what = e.what();
    CHECK(what.find("b/t1/1") != std::string::npos);
    CHECK(what.find("a/t2/1") != std::string::npos);
    CHECK(what.find("a/t2/0") != std::string::npos);
  }
}

EmergentLanguage FromTokens(const AttributeSpec& spec, const std::vector<int>& first_tokens) {
  EmergentLanguage lang;
  lang.attributes = spec;
  lang.channel = {2, 50, 1.0};
  for (int t : first_tokens) lang.messages.push_back(Message{{t, 0}});
  return lang;
}

TEST_CASE("mutual information worked examples") {
  AttributeSpec tiny{1, 4};
  EmergentLanguage lang = FromTokens(tiny, {1, 1, 2, 3});
  const double ln2 = std::numbers::ln2;
  CHECK(PaperMutualInformation(lang) == doctest::Approx(6 * ln2));
  CHECK(EntropyMiOracle(lang) == doctest::Approx(6 * ln2));
  CHECK(TypeSumInformation(lang) == doctest::Approx(3.4657).epsilon(1e-4));
  CHECK(PaperMutualInformation(FromTokens(tiny, {7, 7, 7, 7})) == 0.0);
  CHECK(EntropyMiOracle(FromTokens(tiny, {7, 7, 7, 7})) == doctest::Approx(0.0));
}

TEST_CASE("a bijective language over 10000 meanings has maximal information") {
  EmergentLanguage lang;
  lang.attributes = {4, 10};
  lang.channel = {4, 10, 1.0};
  for (int i = 0; i < 10000; ++i) {
    lang.messages.push_back(Message{{i / 1000, i / 100 % 10, i / 10 % 10, i % 10}});
  }
  CHECK(std::abs(PaperMutualInformation(lang) - 92103.4) < 0.1);
  CHECK(PaperMutualInformation(lang) == doctest::Approx(10000 * std::log(10000.0)));
}

// Independent recomputation: |X| * I(X; M) from the joint table, with
// I = sum p(x, m) ln(p(x, m) / (p(x) p(m))).
double JointTableInformation(const EmergentLanguage& lang) {
  const int n = lang.size();
  std::map<Message, int> counts;
  for (const auto& m : lang.messages) ++counts[m];
  double info = 0.0;
  for (int x = 0; x < n; ++x) {
    for (const auto& [m, c] : counts) {
      double joint = lang.messages[x] == m ? 1.0 / n : 0.0;
      if (joint == 0.0) continue;
      info += joint * std::log(joint / ((1.0 / n) * (static_cast<double>(c) / n)));
    }
  }
  return n * info;
}

TEST_CASE("mutual information agrees with the joint-table oracle on random languages") {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    AttributeSpec spec{1 + static_cast<int>(UniformIndex(rng, 2)),
                       2 + static_cast<int>(UniformIndex(rng, 5))};
    int alphabet = 1 + static_cast<int>(UniformIndex(rng, 8));
    std::vector<int> tokens;
    for (std::uint64_t i = 0; i < spec.SpaceSize(); ++i) {
      tokens.push_back(static_cast<int>(UniformIndex(rng, alphabet)));
    }
    EmergentLanguage lang = FromTokens(spec, tokens);
    double expected = JointTableInformation(lang);
    double scale = std::max(1.0, std::abs(expected));
    CHECK(std::abs(PaperMutualInformation(lang) - expected) / scale < 1e-6);
    CHECK(std::abs(EntropyMiOracle(lang) - expected) / scale < 1e-6);
    CHECK(PaperMutualInformation(lang) <= spec.SpaceSize() * std::log(spec.SpaceSize()) + 1e-9);
  }
}

TEST_CASE("degeneracy statistics") {
  DegeneracyRow row = DegeneracyFromCounts("g", {100, 200, 300, 400});
  CHECK(row.mean == doctest::Approx(250));
  CHECK(row.p25 == doctest::Approx(175));
  CHECK(row.p75 == doctest::Approx(325));
  DegeneracyRow shuffled = DegeneracyFromCounts("g", {300, 100, 400, 200});
  CHECK(shuffled.p25 == row.p25);
  CHECK(shuffled.p75 == row.p75);

  AttributeSpec spec{2, 3};
  std::vector<int> bijective(9);
  for (int i = 0; i < 9; ++i) bijective[i] = i;
  std::map<std::string, std::vector<EmergentLanguage>> groups;
  groups["bij"] = {FromTokens(spec, bijective), FromTokens(spec, bijective)};
  groups["const"] = {FromTokens(spec, std::vector<int>(9, 4))};
  auto report = DegeneracyReport(groups);
  REQUIRE(report.size() == 2);
  CHECK(report[0].source == "bij");
  CHECK(report[0].mean == 9);
  CHECK(report[0].p25 == 9);
  CHECK(report[0].p75 == 9);
  CHECK(report[1].mean == 1);
}

TEST_CASE("degenerate components") {
  AttributeSpec spec{2, 3};
  InputSpace space(spec);
  auto idx = [&](int a, int b) { return space.IndexOf(std::vector<int>{a, b}); };

  std::vector<int> bijective(9);
  for (int i = 0; i < 9; ++i) bijective[i] = i;
  CHECK(DegenerateComponentAnalysis(FromTokens(spec, bijective), space, 10).empty());
  CHECK(std::isnan(MeanComponentDistance({})));

  std::vector<int> tokens = bijective;
  tokens[idx(0, 0)] = tokens[idx(0, 1)] = tokens[idx(0, 2)] = 40;
  auto comps = DegenerateComponentAnalysis(FromTokens(spec, tokens), space, 10);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].meanings.size() == 3);
  CHECK(comps[0].mean_distance == doctest::Approx(1.0));
  // Flat vectors of meanings differing in one attribute are sqrt(2) apart.
  CHECK(comps[0].mean_euclidean == doctest::Approx(std::sqrt(2.0)));

  // A pair differing in both attributes, plus a larger component.
  tokens[idx(1, 1)] = tokens[idx(2, 2)] = 30;
  comps = DegenerateComponentAnalysis(FromTokens(spec, tokens), space, 10);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].meanings.size() == 3);
  CHECK(comps[1].mean_distance == doctest::Approx(2.0));
  CHECK(MeanComponentDistance(comps) == doctest::Approx(1.5));
  CHECK(DegenerateComponentAnalysis(FromTokens(spec, tokens), space, 1).size() == 1);

  // Relabeling the tokens leaves the distances unchanged.
  std::vector<int> relabeled = tokens;
  for (int& t : relabeled) t = 49 - t;
  auto again = DegenerateComponentAnalysis(FromTokens(spec, relabeled), space, 10);
  REQUIRE(again.size() == 2);
  CHECK(again[0].mean_distance == comps[0].mean_distance);
  CHECK(again[1].mean_distance == comps[1].mean_distance);
}

TEST_CASE("equal-sized components are ordered by message") {
  AttributeSpec spec{1, 6};
  InputSpace space(spec);
  auto comps = DegenerateComponentAnalysis(FromTokens(spec, {9, 9, 3, 3, 5, 5}), space, 2);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].message.tokens[0] == 3);
  CHECK(comps[1].message.tokens[0] == 5);
}

std::vector<EpochDiagnostics> Run(const std::vector<int>& types) {
  std::vector<EpochDiagnostics> d;
  for (std::size_t i = 0; i < types.size(); ++i) {
    d.push_back({static_cast<int>(i + 1), 0.0, 0.0, types[i], 0.5 * types[i]});
  }
  return d;
}

TEST_CASE("collapse curves") {
  auto single = CollapseCurve({Run({10, 8, 5})});
  REQUIRE(single.size() == 3);
  CHECK(single[1].epoch == 2);
  CHECK(single[1].mean == 8);
  CHECK(single[1].sd == 0);

  auto pair = CollapseCurve({Run({10, 8, 6}), Run({12, 6})});
  REQUIRE(pair.size() == 2);
  CHECK(pair[0].mean == 11);
  CHECK(pair[0].sd == doctest::Approx(std::sqrt(2.0)));
  auto mi = MutualInformationCurve({Run({10, 8, 6}), Run({12, 6})});
  CHECK(mi[1].mean == doctest::Approx(3.5));
  CHECK_THROWS(CollapseCurve({}));
}

}  // namespace
}  // namespace emlang
