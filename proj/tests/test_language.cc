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

#include <set>
#include <sstream>

#include "doctest.h"
#include "emlang/language.h"

namespace emlang {
namespace {

EmergentLanguage SmallLanguage() {
  AttributeSpec spec{2, 3};
  InputSpace space(spec);
  Speaker speaker({spec.FlatSize(), 8, 8}, ChannelSpec{3, 4, 0.5});
  Rng rng(3);
  speaker.Init(rng);
  return RecordLanguage(speaker, space, ParseGameId("refer3", 16), 9, 12);
}

TEST_CASE("recorded languages are total and greedy") {
  EmergentLanguage lang = SmallLanguage();
  CHECK(lang.size() == 9);
  CHECK(lang.seed == 9);
  CHECK(lang.epoch == 12);
  for (const auto& m : lang.messages) CHECK(m.tokens.size() == 3);
  EmergentLanguage again = SmallLanguage();
  CHECK(again.messages == lang.messages);
}

TEST_CASE("message types and frequencies") {
  EmergentLanguage lang;
  lang.attributes = {1, 4};
  lang.channel = {2, 3, 1.0};
  lang.messages = {Message{{1, 1}}, Message{{0, 2}}, Message{{1, 1}}, Message{{2, 0}}};
  CHECK(CountMessageTypes(lang) == 3);
  auto freq = MessageFrequencies(lang);
  REQUIRE(freq.size() == 3);
  CHECK(freq[0].first == Message{{0, 2}});
  CHECK(freq[1] == std::make_pair(Message{{1, 1}}, 2));
  CHECK(freq[2].second == 1);
}

TEST_CASE("language files round trip losslessly") {
  EmergentLanguage lang = SmallLanguage();
  std::ostringstream out;
  WriteLanguage(lang, out);
  std::istringstream in(out.str());
  EmergentLanguage back = ReadLanguage(in);
  CHECK(back.messages == lang.messages);
  CHECK(back.attributes == lang.attributes);
  CHECK(back.channel == lang.channel);
  CHECK(back.source == lang.source);
  CHECK(back.seed == lang.seed);
  CHECK(back.epoch == lang.epoch);
  std::ostringstream again;
  WriteLanguage(back, again);
  CHECK(again.str() == out.str());
  CHECK(out.str().find("0\t0,0\t") != std::string::npos);
  CHECK(out.str().find("8\t2,2\t") != std::string::npos);
}

TEST_CASE("malformed language files are rejected") {
  EmergentLanguage lang = SmallLanguage();
  std::ostringstream out;
  WriteLanguage(lang, out);
  const std::string good = out.str();
  auto rejects = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS(ReadLanguage(in));
  };
  rejects("");
  rejects("# something else\n");
  // Drop the last row: no longer total.
  rejects(good.substr(0, good.rfind("8\t")));
  // Swap a row's attribute tuple.
  std::string swapped = good;
  swapped.replace(swapped.find("1\t0,1\t"), 6, "1\t1,0\t");
  rejects(swapped);
  // Token outside the vocabulary.
  std::string token = good;
  std::size_t row = token.find("\n0\t0,0\t") + 7;
  token[row] = '9';
  rejects(token);
}

}  // namespace
}  // namespace emlang
