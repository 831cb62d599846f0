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

#include <algorithm>
#include <set>

#include "json.hpp"
#include "neradapt/errors.h"

namespace neradapt {

using nlohmann::ordered_json;

void MaskQuery::Validate() const {
  if (top_k < 1) throw ProtocolError("query top_k must be at least 1");
  if (mask_index >= tokens.size()) {
    throw ProtocolError("query mask_index " + std::to_string(mask_index) +
                        " outside " + std::to_string(tokens.size()) +
                        " tokens");
  }
  if (tokens[mask_index] != kMaskToken) {
    throw ProtocolError("query token at mask_index is not the mask sentinel");
  }
  if (std::count(tokens.begin(), tokens.end(), kMaskToken) != 1) {
    throw ProtocolError("query must contain exactly one mask sentinel");
  }
}

std::string FormatQuery(const MaskQuery& query) {
  ordered_json j;
  j["id"] = query.id;
  j["tokens"] = query.tokens;
  j["mask_index"] = query.mask_index;
  j["top_k"] = query.top_k;
  return j.dump();
}

MaskQuery ParseQuery(std::string_view line) {
  MaskQuery query;
  try {
    const ordered_json j = ordered_json::parse(line);
    query.id = j.at("id").get<std::uint64_t>();
    query.tokens = j.at("tokens").get<std::vector<std::string>>();
    query.mask_index = j.at("mask_index").get<std::size_t>();
    query.top_k = j.at("top_k").get<std::size_t>();
  } catch (const ordered_json::exception& e) {
    throw ProtocolError(std::string("malformed query: ") + e.what());
  }
  query.Validate();
  return query;
}

std::string FormatReply(const MaskReply& reply) {
  ordered_json j;
  j["id"] = reply.id;
  if (reply.error) {
    j["error"] = *reply.error;
    return j.dump();
  }
  ordered_json candidates = ordered_json::array();
  for (const Candidate& c : reply.candidates) {
    ordered_json item;
    item["token"] = c.token;
    item["prob"] = c.prob;
    candidates.push_back(std::move(item));
  }
  j["candidates"] = std::move(candidates);
  return j.dump();
}

MaskReply ParseReply(std::string_view line) {
  MaskReply reply;
  try {
    const ordered_json j = ordered_json::parse(line);
    reply.id = j.at("id").get<std::uint64_t>();
    if (j.contains("error")) {
      reply.error = j.at("error").get<std::string>();
      return reply;
    }
    for (const auto& item : j.at("candidates")) {
      reply.candidates.push_back(
          {item.at("token").get<std::string>(), item.at("prob").get<double>()});
    }
  } catch (const ordered_json::exception& e) {
    throw ProtocolError(std::string("malformed reply: ") + e.what());
  }
  return reply;
}

void CheckReply(const MaskReply& reply, const MaskQuery& query) {
  const std::string where = "reply " + std::to_string(reply.id);
  if (reply.id != query.id) {
    throw ProtocolError(where + " does not match request " +
                        std::to_string(query.id));
  }
  if (reply.error) {
    throw BackendError("backend failed on request " + std::to_string(query.id) +
                       ": " + *reply.error);
  }
  if (reply.candidates.size() > query.top_k) {
    throw ProtocolError(where + " has " +
                        std::to_string(reply.candidates.size()) +
                        " candidates, top_k is " + std::to_string(query.top_k));
  }
  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < reply.candidates.size(); ++i) {
    const Candidate& c = reply.candidates[i];
    if (!(c.prob > 0.0 && c.prob <= 1.0)) {
      throw ProtocolError(where + ": probability outside (0, 1]");
    }
    if (i > 0 && c.prob > reply.candidates[i - 1].prob) {
      throw ProtocolError(where + ": candidates not sorted by probability");
    }
    if (c.token.empty()) throw ProtocolError(where + ": empty candidate");
    if (!seen.insert(c.token).second) {
      throw ProtocolError(where + ": duplicate candidate '" + c.token + "'");
    }
  }
}

MaskReply RequestTopK(MlmBackend& backend, const MaskQuery& query) {
  query.Validate();
  backend.Send(query);
  MaskReply reply = backend.Await(query.id);
  CheckReply(reply, query);
  return reply;
}

MaskQuery MlmClient::MakeQuery(const std::vector<std::string>& tokens,
                               std::size_t mask_index) {
  MaskQuery query;
  query.id = next_id_.fetch_add(1);
  query.tokens = tokens;
  query.tokens.at(mask_index) = std::string(kMaskToken);
  query.mask_index = mask_index;
  query.top_k = top_k_;
  return query;
}

std::vector<Candidate> MlmClient::Predict(
    const std::vector<std::string>& tokens, std::size_t mask_index) {
  return RequestTopK(backend_, MakeQuery(tokens, mask_index)).candidates;
}

namespace {

void AwaitReversed(MlmBackend& backend, const std::vector<MaskQuery>& sent,
                   LoopbackResult& result) {
  for (auto it = sent.rbegin(); it != sent.rend(); ++it) {
    try {
      const MaskReply reply = backend.Await(it->id);
      CheckReply(reply, *it);
      for (const Candidate& c : reply.candidates) {
        if (c.token == kMaskToken) {
          throw ProtocolError("reply " + std::to_string(reply.id) +
                              " proposes the mask sentinel");
        }
      }
      ++result.replies;
    } catch (const Error& e) {
      result.failures.push_back(e.what());
    }
  }
}

}  // namespace

LoopbackResult RunLoopback(
    MlmBackend& backend, const std::vector<std::vector<std::string>>& sentences,
    std::size_t count, std::size_t top_k) {
  LoopbackResult result;
  if (sentences.empty()) {
    result.failures.push_back("no probe sentences");
    return result;
  }
  // Bounded in-flight window keeps both pipe directions from filling up.
  constexpr std::size_t kWindow = 32;
  std::vector<MaskQuery> sent;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& tokens = sentences[i % sentences.size()];
    if (tokens.empty()) continue;
    MaskQuery query;
    query.id = i + 1;
    query.tokens = tokens;
    query.mask_index = (i / sentences.size()) % tokens.size();
    query.tokens[query.mask_index] = std::string(kMaskToken);
    query.top_k = top_k;
    try {
      backend.Send(query);
    } catch (const Error& e) {
      result.failures.push_back(e.what());
      return result;
    }
    ++result.queries;
    sent.push_back(std::move(query));
    if (sent.size() == kWindow || i + 1 == count) {
      AwaitReversed(backend, sent, result);
      sent.clear();
    }
  }
  AwaitReversed(backend, sent, result);
  return result;
}

}  // namespace neradapt
