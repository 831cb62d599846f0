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

#include "neradapt/mock_backend.h"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "neradapt/errors.h"

namespace neradapt {

std::string ContextFingerprint(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

void MockBackend::Script(const std::vector<std::string>& masked_tokens,
                         std::size_t mask_index,
                         std::vector<Candidate> candidates) {
  std::lock_guard<std::mutex> lock(mu_);
  script_[{ContextFingerprint(masked_tokens), mask_index}] =
      std::move(candidates);
}

void MockBackend::SetFallback(std::vector<Candidate> fallback) {
  std::lock_guard<std::mutex> lock(mu_);
  fallback_ = std::move(fallback);
}

void MockBackend::SetResponder(Responder responder) {
  std::lock_guard<std::mutex> lock(mu_);
  responder_ = std::move(responder);
}

void MockBackend::Send(const MaskQuery& query) {
  std::lock_guard<std::mutex> lock(mu_);
  transcript_.push_back(query);
  std::vector<Candidate> candidates;
  const auto it =
      script_.find({ContextFingerprint(query.tokens), query.mask_index});
  if (it != script_.end()) {
    candidates = it->second;
  } else if (responder_) {
    candidates = responder_(query);
  } else {
    candidates = fallback_;
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.prob > b.prob;
                   });
  if (candidates.size() > query.top_k) candidates.resize(query.top_k);
  pending_[query.id] = MaskReply{query.id, std::move(candidates), {}};
}

MaskReply MockBackend::Await(std::uint64_t id) {
  std::lock_guard<std::mutex> lock(mu_);
  auto node = pending_.extract(id);
  if (node.empty()) {
    throw ProtocolError("mock backend has no reply for request " +
                        std::to_string(id));
  }
  return std::move(node.mapped());
}

std::vector<MaskQuery> MockBackend::transcript() const {
  std::lock_guard<std::mutex> lock(mu_);
  return transcript_;
}

void MockBackend::ClearTranscript() {
  std::lock_guard<std::mutex> lock(mu_);
  transcript_.clear();
}

MockBackend::Responder MockBackend::ContextHashResponder(
    std::vector<std::string> vocabulary, std::size_t count) {
  return [vocabulary = std::move(vocabulary),
          count](const MaskQuery& query) -> std::vector<Candidate> {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : ContextFingerprint(query.tokens)) {
      h = (h ^ c) * 0x100000001b3ULL;
    }
    h ^= query.mask_index * 0x9e3779b97f4a7c15ULL;
    std::vector<Candidate> out;
    std::set<std::string> used;
    // Leading probability in [0.30, 0.89], then p0/2, p0/3, ...
    const double p0 = 0.30 + static_cast<double>(h % 60) / 100.0;
    for (std::size_t i = 0; i < count && !vocabulary.empty(); ++i) {
      const std::string& word =
          vocabulary[(h / 61 + i * 7919) % vocabulary.size()];
      if (!used.insert(word).second) break;
      out.push_back({word, p0 / static_cast<double>(i + 1)});
    }
    return out;
  };
}

namespace {

std::vector<Candidate> CandidatesFromJson(const nlohmann::json& array) {
  std::vector<Candidate> out;
  for (const auto& item : array) {
    out.push_back(
        {item.at("token").get<std::string>(), item.at("prob").get<double>()});
  }
  return out;
}

}  // namespace

std::unique_ptr<MockBackend> MockBackend::FromJson(std::string_view text) {
  auto mock = std::make_unique<MockBackend>();
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.contains("fallback")) {
      mock->fallback_ = CandidatesFromJson(j.at("fallback"));
    }
    if (j.contains("entries")) {
      for (const auto& entry : j.at("entries")) {
        const auto& context = entry.at("context");
        const std::string fingerprint =
            context.is_string()
                ? context.get<std::string>()
                : ContextFingerprint(context.get<std::vector<std::string>>());
        mock->script_[{fingerprint, entry.at("mask_index").get<std::size_t>()}] =
            CandidatesFromJson(entry.at("candidates"));
      }
    }
    if (j.contains("context_hash")) {
      const auto& hash = j.at("context_hash");
      mock->responder_ = ContextHashResponder(
          hash.at("vocabulary").get<std::vector<std::string>>(),
          hash.value("count", std::size_t{5}));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad mock backend script: ") + e.what());
  }
  return mock;
}

}  // namespace neradapt
