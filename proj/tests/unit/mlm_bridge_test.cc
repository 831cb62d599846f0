// Copyright 2026 The neradapt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "neradapt/mlm_bridge.h"

#include <gtest/gtest.h>

#include <random>

#include "json.hpp"
#include "neradapt/errors.h"
#include "neradapt/mock_backend.h"

namespace neradapt {
namespace {

using Tokens = std::vector<std::string>;

MaskQuery Query(std::uint64_t id, Tokens tokens, std::size_t mask,
                std::size_t k = 5) {
  MaskQuery q;
  q.id = id;
  q.tokens = std::move(tokens);
  q.mask_index = mask;
  q.top_k = k;
  return q;
}

TEST(Protocol, QueryWireFormat) {
  const MaskQuery q = Query(7, {"a", "[MASK]", "b"}, 1, 3);
  const auto j = nlohmann::json::parse(FormatQuery(q));
  EXPECT_EQ(j.at("id"), 7);
  EXPECT_EQ(j.at("tokens"), nlohmann::json({"a", "[MASK]", "b"}));
  EXPECT_EQ(j.at("mask_index"), 1);
  EXPECT_EQ(j.at("top_k"), 3);
  EXPECT_EQ(FormatQuery(q).find('\n'), std::string::npos);
}

TEST(Protocol, RoundTripProperty) {
  std::mt19937_64 gen(23);
  const Tokens words{"x", "naïve", "quote\"d", "back\\slash", "中文", "tab\tin"};
  for (int trial = 0; trial < 300; ++trial) {
    Tokens tokens(1 + gen() % 8);
    for (auto& t : tokens) t = words[gen() % words.size()];
    const std::size_t mask = gen() % tokens.size();
    tokens[mask] = std::string(kMaskToken);
    const MaskQuery q = Query(gen(), tokens, mask, 1 + gen() % 9);
    EXPECT_EQ(ParseQuery(FormatQuery(q)), q);

    MaskReply r;
    r.id = q.id;
    double p = 1.0;
    for (std::size_t i = 0; i < q.top_k; ++i) {
      p *= 0.5 + 0.5 * std::generate_canonical<double, 53>(gen);
      r.candidates.push_back({words[i % words.size()] + std::to_string(i), p});
    }
    const MaskReply back = ParseReply(FormatReply(r));
    EXPECT_EQ(back.id, r.id);
    EXPECT_EQ(back.candidates, r.candidates);
    EXPECT_FALSE(back.error);
    EXPECT_NO_THROW(CheckReply(back, q));
  }
}

TEST(Protocol, ErrorReplyRoundTrip) {
  MaskReply r;
  r.id = 4;
  r.error = "boom";
  const MaskReply back = ParseReply(FormatReply(r));
  ASSERT_TRUE(back.error);
  EXPECT_EQ(*back.error, "boom");
  EXPECT_THROW(CheckReply(back, Query(4, {"[MASK]"}, 0)), BackendError);
}

TEST(Protocol, MalformedLinesRejected) {
  EXPECT_THROW(ParseReply("nope"), ProtocolError);
  EXPECT_THROW(ParseReply("{\"candidates\": []}"), ProtocolError);
  EXPECT_THROW(ParseQuery("{\"id\": 1}"), ProtocolError);
}

TEST(Protocol, QueryValidation) {
  EXPECT_NO_THROW(Query(1, {"a", "[MASK]"}, 1).Validate());
  EXPECT_THROW(Query(1, {"a", "b"}, 1).Validate(), ProtocolError);
  EXPECT_THROW(Query(1, {"[MASK]", "[MASK]"}, 1).Validate(), ProtocolError);
  EXPECT_THROW(Query(1, {"[MASK]"}, 3).Validate(), ProtocolError);
  EXPECT_THROW(Query(1, {"[MASK]"}, 0, 0).Validate(), ProtocolError);
}

TEST(CheckReply, Violations) {
  const MaskQuery q = Query(1, {"[MASK]"}, 0, 2);
  auto reply = [](std::uint64_t id, std::vector<Candidate> c) {
    MaskReply r;
    r.id = id;
    r.candidates = std::move(c);
    return r;
  };
  EXPECT_THROW(CheckReply(reply(2, {{"a", 0.5}}), q), ProtocolError);
  EXPECT_THROW(CheckReply(reply(1, {{"a", 0.3}, {"b", 0.5}}), q),
               ProtocolError);
  EXPECT_THROW(CheckReply(reply(1, {{"a", 0.5}, {"b", 0.4}, {"c", 0.1}}), q),
               ProtocolError);
  EXPECT_THROW(CheckReply(reply(1, {{"a", 0.0}}), q), ProtocolError);
  EXPECT_THROW(CheckReply(reply(1, {{"a", 1.5}}), q), ProtocolError);
  EXPECT_THROW(CheckReply(reply(1, {{"a", 0.5}, {"a", 0.4}}), q),
               ProtocolError);
  EXPECT_THROW(CheckReply(reply(1, {{"", 0.5}}), q), ProtocolError);
  EXPECT_NO_THROW(CheckReply(reply(1, {}), q));
  EXPECT_NO_THROW(CheckReply(reply(1, {{"a", 0.5}, {"b", 0.5}}), q));
}

TEST(MockBackend, FallbackAnswersEverything) {
  MockBackend mock({}, {{"x", 1.0}});
  MlmClient client(mock);
  EXPECT_EQ(client.Predict({"a", "b"}, 0), (std::vector<Candidate>{{"x", 1.0}}));
  EXPECT_EQ(client.Predict({"c"}, 0), (std::vector<Candidate>{{"x", 1.0}}));
}

TEST(MockBackend, ScriptedSingleCandidate) {
  MockBackend mock;
  mock.SetFallback({{"beer", 0.4}});
  MlmClient client(mock);
  EXPECT_EQ(client.Predict({"Pepsi", "is", "Coke"}, 2),
            (std::vector<Candidate>{{"beer", 0.4}}));
}

TEST(MockBackend, TruncatesToTopK) {
  MockBackend mock;
  mock.Script({"a", "[MASK]"}, 1,
              {{"c3", 0.1}, {"c1", 0.3}, {"c7", 0.01}, {"c2", 0.2},
               {"c5", 0.05}, {"c4", 0.09}, {"c6", 0.02}});
  MlmClient client(mock, 5);
  const auto got = client.Predict({"a", "b"}, 1);
  ASSERT_EQ(got.size(), 5u);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(got[i].token, "c" + std::to_string(i + 1));
}

TEST(MockBackend, ScriptKeyIncludesContext) {
  MockBackend mock;
  mock.SetFallback({{"fallback", 0.9}});
  mock.Script({"x", "[MASK]", "z"}, 1, {{"scripted", 0.5}});
  MlmClient client(mock);
  EXPECT_EQ(client.Predict({"x", "y", "z"}, 1)[0].token, "scripted");
  EXPECT_EQ(client.Predict({"q", "y", "z"}, 1)[0].token, "fallback");
  ASSERT_EQ(mock.transcript().size(), 2u);
  EXPECT_EQ(mock.transcript()[1].tokens, (Tokens{"q", "[MASK]", "z"}));
}

TEST(MockBackend, FromJson) {
  const auto mock = MockBackend::FromJson(R"({
    "fallback": [{"token": "f", "prob": 0.1}],
    "entries": [{"context": "a [MASK]", "mask_index": 1,
                 "candidates": [{"token": "b", "prob": 0.7}]}]
  })");
  MlmClient client(*mock);
  EXPECT_EQ(client.Predict({"a", "zz"}, 1)[0].token, "b");
  EXPECT_EQ(client.Predict({"zz", "a"}, 0)[0].token, "f");
  EXPECT_THROW(MockBackend::FromJson("{\"entries\": 3}"), ParseError);
}

TEST(MockBackend, ContextHashIsDeterministicAndWellFormed) {
  MockBackend a;
  MockBackend b;
  const Tokens vocab{"v1", "v2", "v3", "v4", "v5", "v6", "v7"};
  a.SetResponder(MockBackend::ContextHashResponder(vocab));
  b.SetResponder(MockBackend::ContextHashResponder(vocab));
  MlmClient ca(a);
  MlmClient cb(b);
  for (std::size_t i = 0; i < 4; ++i) {
    const Tokens s{"w", "x", "y", "z"};
    const auto ra = ca.Predict(s, i);
    EXPECT_EQ(ra, cb.Predict(s, i));
    EXPECT_EQ(ra.size(), 5u);
  }
}

TEST(MockBackend, UnknownIdIsProtocolError) {
  MockBackend mock;
  EXPECT_THROW(mock.Await(99), ProtocolError);
}

TEST(Loopback, MockPassesThousandQueries) {
  MockBackend mock;
  mock.SetResponder(MockBackend::ContextHashResponder(
      {"a", "b", "c", "d", "e", "f"}));
  const LoopbackResult r = RunLoopback(
      mock, {{"one", "two", "three"}, {"four", "five"}}, 1000, 5);
  EXPECT_TRUE(r.ok()) << (r.failures.empty() ? "" : r.failures[0]);
  EXPECT_EQ(r.queries, 1000u);
  EXPECT_EQ(r.replies, 1000u);
}

TEST(Loopback, ReportsBadOrdering) {
  MockBackend mock;
  mock.SetResponder([](const MaskQuery&) {
    return std::vector<Candidate>{{"a", 0.5}, {"a", 0.4}};
  });
  const LoopbackResult r = RunLoopback(mock, {{"x", "y"}}, 10, 5);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.failures.size(), 10u);
}

}  // namespace
}  // namespace neradapt
