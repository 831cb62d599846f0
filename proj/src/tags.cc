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

#include "neradapt/tags.h"

#include <algorithm>
#include <cctype>
#include <utility>

#include "neradapt/errors.h"

namespace neradapt {

std::string_view SchemeName(TagScheme scheme) {
  return scheme == TagScheme::kBio ? "bio" : "iobes";
}

TagScheme ParseScheme(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "bio" || lower == "iob2") return TagScheme::kBio;
  if (lower == "iobes" || lower == "bioes") return TagScheme::kIobes;
  throw ValidationError("unknown tagging scheme '" + std::string(name) + "'");
}

std::optional<TagParts> SplitTag(std::string_view tag, TagScheme scheme) {
  if (tag == kOutsideTag) return TagParts{'O', {}};
  if (tag.size() < 3 || tag[1] != '-') return std::nullopt;
  const char marker = tag[0];
  const bool allowed = marker == 'B' || marker == 'I' ||
                       (scheme == TagScheme::kIobes &&
                        (marker == 'E' || marker == 'S'));
  if (!allowed) return std::nullopt;
  return TagParts{marker, tag.substr(2)};
}

namespace {

// Validity of `current` given the previous and next tags. Both neighbours
// are already known to be grammatical.
bool TransitionOk(const std::optional<TagParts>& prev, const TagParts& cur,
                  const std::optional<TagParts>& next, TagScheme scheme) {
  const bool prev_open =
      prev && (prev->marker == 'B' || prev->marker == 'I');
  if (scheme == TagScheme::kBio) {
    if (cur.marker != 'I') return true;
    return prev && prev->marker != 'O' && prev->type == cur.type;
  }
  // IOBES: an opener must be continued, a continuation must be opened.
  switch (cur.marker) {
    case 'O':
    case 'S':
    case 'B':
      if (prev_open) return false;
      break;
    case 'I':
    case 'E':
      if (!prev_open || prev->type != cur.type) return false;
      break;
  }
  if (cur.marker == 'B' || cur.marker == 'I') {
    if (!next) return false;
    if (next->marker != 'I' && next->marker != 'E') return false;
    if (next->type != cur.type) return false;
  }
  return true;
}

std::vector<EntitySpan> LenientSpans(std::span<const std::string> tags,
                                     TagScheme scheme) {
  std::vector<EntitySpan> spans;
  std::optional<EntitySpan> open;
  auto close = [&] {
    if (open) spans.push_back(*std::exchange(open, std::nullopt));
  };
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const auto parts = SplitTag(tags[i], scheme);
    if (!parts) {
      throw ValidationError("malformed tag '" + tags[i] + "' at position " +
                            std::to_string(i));
    }
    const std::string type(parts->type);
    switch (parts->marker) {
      case 'O':
        close();
        break;
      case 'S':
        close();
        spans.push_back({i, i, type});
        break;
      case 'B':
        close();
        open = EntitySpan{i, i, type};
        break;
      case 'I':
        if (open && open->type == type) {
          open->end = i;
        } else {
          close();
          open = EntitySpan{i, i, type};
        }
        break;
      case 'E':
        if (open && open->type == type) {
          open->end = i;
          close();
        } else {
          close();
          spans.push_back({i, i, type});
        }
        break;
    }
  }
  close();
  return spans;
}

}  // namespace

std::optional<TagIssue> FindInvalidTag(std::span<const std::string> tags,
                                       TagScheme scheme) {
  std::vector<std::optional<TagParts>> parts;
  parts.reserve(tags.size());
  for (std::size_t i = 0; i < tags.size(); ++i) {
    parts.push_back(SplitTag(tags[i], scheme));
    if (!parts.back()) return TagIssue{i, tags[i], true};
  }
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const std::optional<TagParts> prev =
        i > 0 ? parts[i - 1] : std::optional<TagParts>{};
    const std::optional<TagParts> next =
        i + 1 < tags.size() ? parts[i + 1] : std::optional<TagParts>{};
    if (!TransitionOk(prev, *parts[i], next, scheme)) {
      return TagIssue{i, tags[i], false};
    }
  }
  return std::nullopt;
}

bool IsValidSequence(std::span<const std::string> tags, TagScheme scheme) {
  return !FindInvalidTag(tags, scheme).has_value();
}

void ValidateTags(std::span<const std::string> tags, TagScheme scheme) {
  if (auto issue = FindInvalidTag(tags, scheme)) {
    throw ValidationError(
        std::string(issue->grammar ? "malformed" : "invalid") + " " +
        std::string(SchemeName(scheme)) + " tag '" + issue->tag +
        "' at position " + std::to_string(issue->position));
  }
}

std::vector<EntitySpan> SpansFromTags(std::span<const std::string> tags,
                                      TagScheme scheme) {
  return LenientSpans(tags, scheme);
}

std::vector<std::string> TagsFromSpans(std::span<const EntitySpan> spans,
                                       std::size_t length, TagScheme scheme) {
  std::vector<std::string> tags(length, std::string(kOutsideTag));
  for (const EntitySpan& span : spans) {
    if (span.start > span.end || span.end >= length) {
      throw ValidationError("span [" + std::to_string(span.start) + ", " +
                            std::to_string(span.end) +
                            "] outside sentence of length " +
                            std::to_string(length));
    }
    for (std::size_t i = span.start; i <= span.end; ++i) {
      char marker = 'I';
      if (scheme == TagScheme::kBio) {
        if (i == span.start) marker = 'B';
      } else if (span.start == span.end) {
        marker = 'S';
      } else if (i == span.start) {
        marker = 'B';
      } else if (i == span.end) {
        marker = 'E';
      }
      tags[i] = std::string(1, marker) + "-" + span.type;
    }
  }
  return tags;
}

std::vector<std::string> ConvertTags(std::span<const std::string> tags,
                                     TagScheme from, TagScheme to) {
  ValidateTags(tags, from);
  if (from == to) return {tags.begin(), tags.end()};
  const auto spans = SpansFromTags(tags, from);
  return TagsFromSpans(spans, tags.size(), to);
}

std::vector<std::string> BioToIobes(std::span<const std::string> tags) {
  return ConvertTags(tags, TagScheme::kBio, TagScheme::kIobes);
}

std::vector<std::string> IobesToBio(std::span<const std::string> tags) {
  return ConvertTags(tags, TagScheme::kIobes, TagScheme::kBio);
}

RepairResult RepairTags(std::span<const std::string> tags, TagScheme scheme) {
  RepairResult result;
  const auto spans = LenientSpans(tags, scheme);
  result.tags = TagsFromSpans(spans, tags.size(), scheme);
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (result.tags[i] != tags[i]) result.repaired_positions.push_back(i);
  }
  return result;
}

TagScheme InferScheme(std::span<const std::string> tag_set) {
  for (const std::string& tag : tag_set) {
    if (tag.size() >= 2 && tag[1] == '-' && (tag[0] == 'E' || tag[0] == 'S')) {
      return TagScheme::kIobes;
    }
  }
  return TagScheme::kBio;
}

}  // namespace neradapt
