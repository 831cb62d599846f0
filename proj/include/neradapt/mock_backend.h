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

#ifndef NERADAPT_MOCK_BACKEND_H_
#define NERADAPT_MOCK_BACKEND_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "neradapt/mlm_bridge.h"

namespace neradapt {

// Tokens joined by single spaces, sentinel included. Scripts key on this.
std::string ContextFingerprint(const std::vector<std::string>& tokens);

// Deterministic scripted fill-mask backend for tests. Replies are looked up by
// (context fingerprint, mask index); unscripted queries go to the responder
// when one is set, otherwise to the fallback list. Candidate lists are sorted
// by descending probability and truncated to the query's top_k. Every query
// received is appended to the transcript.
class MockBackend : public MlmBackend {
 public:
  using Key = std::pair<std::string, std::size_t>;
  using Responder = std::function<std::vector<Candidate>(const MaskQuery&)>;

  MockBackend() = default;
  MockBackend(std::map<Key, std::vector<Candidate>> script,
              std::vector<Candidate> fallback)
      : script_(std::move(script)), fallback_(std::move(fallback)) {}

  void Script(const std::vector<std::string>& masked_tokens,
              std::size_t mask_index, std::vector<Candidate> candidates);
  void SetFallback(std::vector<Candidate> fallback);
  void SetResponder(Responder responder);

  void Send(const MaskQuery& query) override;
  MaskReply Await(std::uint64_t id) override;

  std::vector<MaskQuery> transcript() const;
  void ClearTranscript();

  // Responder whose candidates are a pure function of the masked context:
  // `count` distinct words from `vocabulary` with decreasing probabilities.
  static Responder ContextHashResponder(std::vector<std::string> vocabulary,
                                        std::size_t count = 5);

  // Loads {"fallback": [...], "entries": [{"context": [...], "mask_index": i,
  // "candidates": [{"token", "prob"}]}], "context_hash": {"vocabulary": [...],
  // "count": n}} where every field is optional.
  static std::unique_ptr<MockBackend> FromJson(std::string_view text);

 private:
  mutable std::mutex mu_;
  std::map<Key, std::vector<Candidate>> script_;
  std::vector<Candidate> fallback_;
  Responder responder_;
  std::vector<MaskQuery> transcript_;
  std::map<std::uint64_t, MaskReply> pending_;
};

}  // namespace neradapt

#endif  // NERADAPT_MOCK_BACKEND_H_
