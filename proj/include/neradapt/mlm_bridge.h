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

#ifndef NERADAPT_MLM_BRIDGE_H_
#define NERADAPT_MLM_BRIDGE_H_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace neradapt {

// Sentinel placed at the masked position on the wire. Backends translate it
// into their own model's mask token.
inline constexpr std::string_view kMaskToken = "[MASK]";

struct Candidate {
  std::string token;
  double prob = 0.0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct MaskQuery {
  std::uint64_t id = 0;
  std::vector<std::string> tokens;  // tokens[mask_index] == kMaskToken
  std::size_t mask_index = 0;
  std::size_t top_k = 5;

  // Throws ProtocolError unless exactly one sentinel sits at mask_index and
  // top_k >= 1.
  void Validate() const;

  friend bool operator==(const MaskQuery&, const MaskQuery&) = default;
};

struct MaskReply {
  std::uint64_t id = 0;
  std::vector<Candidate> candidates;
  // Set when the backend reported a per-query failure.
  std::optional<std::string> error;
};

// Wire format, one JSON object per line:
//   query  {"id": 7, "tokens": ["a", "[MASK]", "sat"], "mask_index": 1,
//           "top_k": 5}
//   reply  {"id": 7, "candidates": [{"token": "cat", "prob": 0.61}, ...]}
//   error  {"id": 7, "error": "message"}
std::string FormatQuery(const MaskQuery& query);
MaskQuery ParseQuery(std::string_view line);
std::string FormatReply(const MaskReply& reply);
MaskReply ParseReply(std::string_view line);

// Checks a reply against its query: matching id, at most top_k candidates,
// probabilities in (0, 1] and non-increasing, distinct non-empty tokens.
// Throws ProtocolError, or BackendError for an error reply.
void CheckReply(const MaskReply& reply, const MaskQuery& query);

// Fill-mask service. Send may return before the reply is available; Await
// blocks until the reply carrying `id` has arrived. Replies may arrive in any
// order and are matched to requests by id only.
class MlmBackend {
 public:
  virtual ~MlmBackend() = default;

  virtual void Send(const MaskQuery& query) = 0;
  virtual MaskReply Await(std::uint64_t id) = 0;
};

// Sends one validated query and waits for its validated reply.
MaskReply RequestTopK(MlmBackend& backend, const MaskQuery& query);

// Assigns monotonically increasing request ids.
class MlmClient {
 public:
  explicit MlmClient(MlmBackend& backend, std::size_t top_k = 5)
      : backend_(backend), top_k_(top_k) {}

  // `tokens` with position `mask_index` replaced by the sentinel.
  MaskQuery MakeQuery(const std::vector<std::string>& tokens,
                      std::size_t mask_index);

  std::vector<Candidate> Predict(const std::vector<std::string>& tokens,
                                 std::size_t mask_index);

  MlmBackend& backend() { return backend_; }
  std::size_t top_k() const { return top_k_; }

 private:
  MlmBackend& backend_;
  std::size_t top_k_;
  std::atomic<std::uint64_t> next_id_{1};
};

struct LoopbackResult {
  std::size_t queries = 0;
  std::size_t replies = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty() && queries == replies; }
};

// Conformance harness: pipelines `count` queries built from `sentences`
// (cycling, masking a rotating position), then awaits the replies in reverse
// order and checks each one with CheckReply.
LoopbackResult RunLoopback(MlmBackend& backend,
                           const std::vector<std::vector<std::string>>& sentences,
                           std::size_t count, std::size_t top_k = 5);

}  // namespace neradapt

#endif  // NERADAPT_MLM_BRIDGE_H_
