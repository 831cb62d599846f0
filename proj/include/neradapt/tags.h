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

#ifndef NERADAPT_TAGS_H_
#define NERADAPT_TAGS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace neradapt {

enum class TagScheme { kBio, kIobes };

std::string_view SchemeName(TagScheme scheme);

// Accepts "bio" / "iobes" in any case. Throws ValidationError otherwise.
TagScheme ParseScheme(std::string_view name);

// A tag split into its position marker ('O', 'B', 'I', 'E' or 'S') and its
// entity type (empty for 'O').
struct TagParts {
  char marker = 'O';
  std::string_view type;
};

// Returns nullopt when `tag` does not match the grammar of `scheme`:
//   BIO    O | (B|I)-TYPE
//   IOBES  O | (B|I|E|S)-TYPE
std::optional<TagParts> SplitTag(std::string_view tag, TagScheme scheme);

inline constexpr std::string_view kOutsideTag = "O";

// A contiguous labeled span; `start` and `end` are inclusive token indices.
struct EntitySpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string type;

  std::size_t length() const { return end - start + 1; }
  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
};

struct TagIssue {
  std::size_t position = 0;
  std::string tag;
  bool grammar = false;  // true: tag itself is malformed, not just misplaced
};

// Finds the first position at which `tags` stops being a structurally valid
// sequence for `scheme`, or nullopt if the whole sequence is valid.
std::optional<TagIssue> FindInvalidTag(std::span<const std::string> tags,
                                       TagScheme scheme);

bool IsValidSequence(std::span<const std::string> tags, TagScheme scheme);

// Throws ValidationError naming the first offending position and tag.
void ValidateTags(std::span<const std::string> tags, TagScheme scheme);

// Spans of a valid sequence, sorted and non-overlapping.
std::vector<EntitySpan> SpansFromTags(std::span<const std::string> tags,
                                      TagScheme scheme);

// Inverse of SpansFromTags for non-overlapping spans inside [0, length).
std::vector<std::string> TagsFromSpans(std::span<const EntitySpan> spans,
                                       std::size_t length, TagScheme scheme);

std::vector<std::string> BioToIobes(std::span<const std::string> tags);
std::vector<std::string> IobesToBio(std::span<const std::string> tags);

// Converts between schemes; identity when `from == to`.
std::vector<std::string> ConvertTags(std::span<const std::string> tags,
                                     TagScheme from, TagScheme to);

struct RepairResult {
  std::vector<std::string> tags;
  std::vector<std::size_t> repaired_positions;
};

// Decodes spans leniently (an I/E continuation without a matching opener
// starts a new span) and re-encodes them, e.g. BIO [O, I-X] -> [O, B-X].
// Malformed tags are not repairable and raise ValidationError.
RepairResult RepairTags(std::span<const std::string> tags, TagScheme scheme);

// Guesses the scheme of a tag inventory: IOBES if any E-/S- tag is present.
TagScheme InferScheme(std::span<const std::string> tag_set);

}  // namespace neradapt

#endif  // NERADAPT_TAGS_H_
