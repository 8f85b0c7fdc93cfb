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

#include "emlang/analysis.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "emlang/stats.h"

namespace emlang {

std::string ToString(Relation relation) {
  switch (relation) {
    case Relation::kGreater: return "greater";
    case Relation::kLess: return "less";
    case Relation::kEqual: return "equal";
    case Relation::kIncomparable: return "incomparable";
  }
  return "?";
}

std::string ToString(SignificanceTest test) {
  return test == SignificanceTest::kWelch ? "welch" : "mann-whitney";
}

SignificanceTest ParseSignificanceTest(const std::string& text) {
  if (text == "welch") return SignificanceTest::kWelch;
  if (text == "mann-whitney") return SignificanceTest::kMannWhitney;
  throw std::invalid_argument("unknown significance test '" + text +
                              "' (expected welch or mann-whitney)");
}

Relation Flip(Relation relation) {
  switch (relation) {
    case Relation::kGreater: return Relation::kLess;
    case Relation::kLess: return Relation::kGreater;
    default: return relation;
  }
}

OrderVerdict ExpressivityPartialOrder(const TransferMatrix& matrix,
                                      const std::string& source_a,
                                      const std::string& source_b, double alpha,
                                      SignificanceTest test) {
  OrderVerdict verdict;
  verdict.source_a = source_a;
  verdict.source_b = source_b;
  bool better = false, worse = false;
  for (const auto& target : matrix.Targets()) {
    std::vector<double> a = matrix.Values(source_a, target);
    std::vector<double> b = matrix.Values(source_b, target);
    if (a.empty() && b.empty()) continue;
    if (a.size() < 2 || b.size() < 2) {
      throw std::invalid_argument("expressivity order: " + source_a + " vs " +
                                  source_b + " on " + target +
                                  " needs at least 2 seeds per source");
    }
    TargetEvidence e;
    e.target = target;
    e.mean_a = Mean(a);
    e.mean_b = Mean(b);
    e.p_value = test == SignificanceTest::kWelch ? WelchTTest(a, b).p_value
                                                 : MannWhitneyU(a, b).p_value;
    if (e.p_value < alpha && e.mean_a != e.mean_b) {
      e.direction = e.mean_a > e.mean_b ? 1 : -1;
    }
    better |= e.direction > 0;
    worse |= e.direction < 0;
    verdict.evidence.push_back(e);
  }
  if (better && worse) {
    verdict.relation = Relation::kIncomparable;
  } else if (better) {
    verdict.relation = Relation::kGreater;
  } else if (worse) {
    verdict.relation = Relation::kLess;
  } else {
    verdict.relation = Relation::kEqual;
  }
  return verdict;
}

const OrderVerdict* OrderReport::Find(const std::string& a, const std::string& b) const {
  for (const auto& v : verdicts) {
    if ((v.source_a == a && v.source_b == b) || (v.source_a == b && v.source_b == a)) {
      return &v;
    }
  }
  return nullptr;
}

Relation OrderReport::RelationOf(const std::string& a, const std::string& b) const {
  const OrderVerdict* v = Find(a, b);
  if (v == nullptr) throw std::invalid_argument("no verdict for " + a + " vs " + b);
  return v->source_a == a ? v->relation : Flip(v->relation);
}

int OrderReport::TierOf(const std::string& source) const {
  for (std::size_t k = 0; k < tiers.size(); ++k) {
    if (std::find(tiers[k].begin(), tiers[k].end(), source) != tiers[k].end()) {
      return static_cast<int>(k);
    }
  }
  return -1;
}

OrderReport FullOrderReport(const TransferMatrix& matrix, double alpha,
                            SignificanceTest test) {
  OrderReport report;
  report.sources = matrix.Sources();
  report.missing =
      matrix.MissingCells(report.sources, matrix.Targets(), matrix.Seeds());
  if (!report.missing.empty()) {
    std::string message = "transfer matrix is incomplete; missing cells:";
    for (const auto& m : report.missing) message += "\n  " + m;
    throw std::invalid_argument(message);
  }
  const int n = static_cast<int>(report.sources.size());
  std::vector<std::vector<bool>> greater(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      OrderVerdict v = ExpressivityPartialOrder(matrix, report.sources[i],
                                                report.sources[j], alpha, test);
      if (v.relation == Relation::kGreater) greater[i][j] = true;
      if (v.relation == Relation::kLess) greater[j][i] = true;
      report.verdicts.push_back(std::move(v));
    }
  }

  // Transitive closure, then strongly connected components.
  auto reach = greater;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
      }
    }
  }
  std::vector<int> component(n, -1);
  int components = 0;
  for (int i = 0; i < n; ++i) {
    if (component[i] != -1) continue;
    component[i] = components;
    for (int j = i + 1; j < n; ++j) {
      if (component[j] == -1 && reach[i][j] && reach[j][i]) component[j] = components;
    }
    ++components;
  }
  // comp_greater[a][b]: some member of a beats some member of b.
  std::vector<std::vector<bool>> comp_greater(components,
                                              std::vector<bool>(components, false));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (greater[i][j] && component[i] != component[j]) {
        comp_greater[component[i]][component[j]] = true;
      }
    }
  }
  std::vector<int> layer(components, -1);
  std::function<int(int)> layer_of = [&](int c) {
    if (layer[c] >= 0) return layer[c];
    int best = 0;
    for (int p = 0; p < components; ++p) {
      if (comp_greater[p][c]) best = std::max(best, layer_of(p) + 1);
    }
    return layer[c] = best;
  };
  int max_layer = -1;
  for (int c = 0; c < components; ++c) max_layer = std::max(max_layer, layer_of(c));
  report.tiers.assign(max_layer + 1, {});
  for (int i = 0; i < n; ++i) {
    report.tiers[layer[component[i]]].push_back(report.sources[i]);
  }

  for (std::size_t k = 0; k < report.tiers.size(); ++k) {
    if (k) report.chain += " > ";
    const auto& tier = report.tiers[k];
    for (std::size_t m = 0; m < tier.size(); ++m) {
      if (m) {
        Relation r = report.RelationOf(tier[m - 1], tier[m]);
        report.chain += r == Relation::kEqual          ? " ≈ "
                        : r == Relation::kIncomparable ? " ≠ "
                                                       : " ~ ";
      }
      report.chain += tier[m];
    }
  }

  // Cover relation on components and maximal paths through it.
  std::vector<std::vector<bool>> comp_reach = comp_greater;
  for (int k = 0; k < components; ++k) {
    for (int i = 0; i < components; ++i) {
      for (int j = 0; j < components; ++j) {
        if (comp_reach[i][k] && comp_reach[k][j]) comp_reach[i][j] = true;
      }
    }
  }
  std::vector<std::vector<int>> cover(components);
  std::vector<bool> has_parent(components, false);
  for (int a = 0; a < components; ++a) {
    for (int b = 0; b < components; ++b) {
      if (!comp_reach[a][b]) continue;
      bool direct = true;
      for (int c = 0; c < components && direct; ++c) {
        if (c != a && c != b && comp_reach[a][c] && comp_reach[c][b]) direct = false;
      }
      if (direct) {
        cover[a].push_back(b);
        has_parent[b] = true;
      }
    }
  }
  auto label = [&](int c) {
    std::string out;
    for (int i = 0; i < n; ++i) {
      if (component[i] != c) continue;
      if (!out.empty()) out += "|";
      out += report.sources[i];
    }
    return out;
  };
  constexpr std::size_t kMaxChains = 4096;
  std::vector<std::string> path;
  std::function<void(int)> walk = [&](int c) {
    path.push_back(label(c));
    if (cover[c].empty()) {
      if (report.maximal_chains.size() < kMaxChains) report.maximal_chains.push_back(path);
    } else {
      for (int next : cover[c]) walk(next);
    }
    path.pop_back();
  };
  for (int c = 0; c < components; ++c) {
    if (!has_parent[c]) walk(c);
  }
  return report;
}

namespace {

std::unordered_map<Message, int, MessageHash> Frequencies(const EmergentLanguage& lang) {
  std::unordered_map<Message, int, MessageHash> f;
  for (const Message& m : lang.messages) ++f[m];
  return f;
}

}  // namespace

double PaperMutualInformation(const EmergentLanguage& language) {
  const double n = static_cast<double>(language.size());
  if (language.size() == 0) return 0.0;
  auto f = Frequencies(language);
  double total = 0.0;
  for (const Message& m : language.messages) {
    total += std::log(n) - std::log(static_cast<double>(f.at(m)));
  }
  return total;
}

double EntropyMiOracle(const EmergentLanguage& language) {
  const int n = language.size();
  if (n == 0) return 0.0;
  // Explicit joint table over (meaning, message type) with uniform p(x).
  std::map<Message, int> type_index;
  for (const Message& m : language.messages) type_index.emplace(m, 0);
  int next = 0;
  for (auto& [m, idx] : type_index) idx = next++;
  const int types = next;
  std::vector<double> p_m(types, 0.0);
  std::vector<std::pair<int, double>> joint;  // (type, p(x, m)) per meaning
  joint.reserve(n);
  for (int x = 0; x < n; ++x) {
    int t = type_index.at(language.messages[x]);
    joint.emplace_back(t, 1.0 / n);
    p_m[t] += 1.0 / n;
  }
  const double p_x = 1.0 / n;
  double mi = 0.0;
  for (int x = 0; x < n; ++x) {
    auto [t, p_xm] = joint[x];
    mi += p_xm * std::log(p_xm / (p_x * p_m[t]));
  }
  return mi * n;
}

double TypeSumInformation(const EmergentLanguage& language) {
  const double n = static_cast<double>(language.size());
  double total = 0.0;
  for (const auto& [m, count] : Frequencies(language)) {
    total += std::log(n) - std::log(static_cast<double>(count));
  }
  return total;
}

DegeneracyRow DegeneracyFromCounts(const std::string& source,
                                   const std::vector<double>& counts) {
  if (counts.empty()) {
    throw std::invalid_argument("degeneracy report: group " + source + " is empty");
  }
  DegeneracyRow row;
  row.source = source;
  row.counts = counts;
  row.mean = Mean(counts);
  row.p25 = PercentileLinear(counts, 25.0);
  row.p75 = PercentileLinear(counts, 75.0);
  return row;
}

std::vector<DegeneracyRow> DegeneracyReport(
    const std::map<std::string, std::vector<EmergentLanguage>>& groups) {
  std::vector<DegeneracyRow> rows;
  for (const auto& [source, languages] : groups) {
    std::vector<double> counts;
    for (const auto& lang : languages) counts.push_back(CountMessageTypes(lang));
    rows.push_back(DegeneracyFromCounts(source, counts));
  }
  return rows;
}

std::vector<DegenerateComponent> DegenerateComponentAnalysis(
    const EmergentLanguage& language, const InputSpace& space, int top_k) {
  if (language.size() != space.size()) {
    throw std::invalid_argument("component analysis: language and space sizes differ");
  }
  std::map<Message, std::vector<int>> groups;
  for (int x = 0; x < language.size(); ++x) groups[language.messages[x]].push_back(x);
  std::vector<const std::pair<const Message, std::vector<int>>*> degenerate;
  for (const auto& entry : groups) {
    if (entry.second.size() >= 2) degenerate.push_back(&entry);
  }
  // Map iteration is already in message order, so a stable sort by size
  // breaks ties lexicographically.
  std::stable_sort(degenerate.begin(), degenerate.end(), [](auto* a, auto* b) {
    return a->second.size() > b->second.size();
  });
  if (top_k >= 0 && static_cast<int>(degenerate.size()) > top_k) {
    degenerate.resize(top_k);
  }
  std::vector<DegenerateComponent> out;
  for (const auto* entry : degenerate) {
    DegenerateComponent c;
    c.message = entry->first;
    c.meanings = entry->second;
    double hamming = 0.0, euclid = 0.0;
    long pairs = 0;
    for (std::size_t i = 0; i < c.meanings.size(); ++i) {
      for (std::size_t j = i + 1; j < c.meanings.size(); ++j) {
        const auto& a = space[c.meanings[i]];
        const auto& b = space[c.meanings[j]];
        hamming += AttributeDistance(a, b);
        euclid += FlatEuclideanDistance(a, b);
        ++pairs;
      }
    }
    c.mean_distance = hamming / static_cast<double>(pairs);
    c.mean_euclidean = euclid / static_cast<double>(pairs);
    out.push_back(std::move(c));
  }
  return out;
}

double MeanComponentDistance(const std::vector<DegenerateComponent>& components) {
  if (components.empty()) return std::numeric_limits<double>::quiet_NaN();
  double total = 0.0;
  for (const auto& c : components) total += c.mean_distance;
  return total / static_cast<double>(components.size());
}

namespace {

std::vector<CurvePoint> Curve(const std::vector<std::vector<EpochDiagnostics>>& runs,
                              double (*field)(const EpochDiagnostics&)) {
  if (runs.empty()) throw std::invalid_argument("curve: no runs");
  std::size_t length = std::numeric_limits<std::size_t>::max();
  for (const auto& run : runs) length = std::min(length, run.size());
  if (length == 0) throw std::invalid_argument("curve: empty diagnostics");
  std::vector<CurvePoint> out;
  for (std::size_t e = 0; e < length; ++e) {
    std::vector<double> values;
    for (const auto& run : runs) values.push_back(field(run[e]));
    out.push_back({runs[0][e].epoch, Mean(values), SampleStdDev(values)});
  }
  return out;
}

}  // namespace

std::vector<CurvePoint> CollapseCurve(
    const std::vector<std::vector<EpochDiagnostics>>& runs) {
  return Curve(runs, [](const EpochDiagnostics& d) {
    return static_cast<double>(d.message_types);
  });
}

std::vector<CurvePoint> MutualInformationCurve(
    const std::vector<std::vector<EpochDiagnostics>>& runs) {
  return Curve(runs, [](const EpochDiagnostics& d) { return d.mutual_information; });
}

}  // namespace emlang
