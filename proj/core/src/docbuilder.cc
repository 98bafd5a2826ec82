/*
 * Copyright 2026 The shoprank Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "shoprank/docbuilder.h"

#include <array>
#include <cstddef>
#include <optional>

namespace shoprank {
namespace {

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

char to_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool iequals_at(std::string_view s, std::size_t pos, std::string_view word) {
  if (pos + word.size() > s.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (to_lower(s[pos + i]) != word[i]) return false;
  }
  return true;
}

struct Tag {
  std::size_t end = 0;  // one past '>'
  std::string name;     // lowercased; empty for comments/declarations
  bool closing = false;
};

// Index one past the first '>' at or after `from`, or npos.
std::size_t after_next_gt(std::string_view s, std::size_t from) {
  const std::size_t gt = s.find('>', from);
  return gt == std::string_view::npos ? gt : gt + 1;
}

// Tries to read a tag starting at s[pos] == '<'.
std::optional<Tag> parse_tag(std::string_view s, std::size_t pos) {
  const std::size_t n = s.size();
  if (pos + 1 >= n) return std::nullopt;
  Tag tag;
  std::size_t i = pos + 1;
  const char lead = s[i];

  if (lead == '!' || lead == '?') {
    if (s.compare(pos, 4, "<!--") == 0) {
      const std::size_t close = s.find("-->", pos + 4);
      if (close != std::string_view::npos) {
        tag.end = close + 3;
        return tag;
      }
    }
    tag.end = after_next_gt(s, i);
    if (tag.end == std::string_view::npos) return std::nullopt;
    return tag;
  }

  if (lead == '/') {
    tag.closing = true;
    ++i;
  }
  if (i >= n || !is_alpha(s[i])) return std::nullopt;
  while (i < n && !is_ascii_space(s[i]) && s[i] != '/' && s[i] != '>') {
    tag.name.push_back(to_lower(s[i]));
    ++i;
  }

  // Attribute values quoted right after '=' may contain '>'.
  std::size_t j = i;
  bool last_was_eq = false;
  while (j < n) {
    const char c = s[j];
    if (c == '>') {
      tag.end = j + 1;
      return tag;
    }
    if ((c == '"' || c == '\'') && last_was_eq) {
      const std::size_t close = s.find(c, j + 1);
      if (close == std::string_view::npos) break;
      j = close + 1;
      last_was_eq = false;
      continue;
    }
    if (c == '=') {
      last_was_eq = true;
    } else if (!is_ascii_space(c)) {
      last_was_eq = false;
    }
    ++j;
  }
  // Unbalanced quote: fall back to the first '>'.
  tag.end = after_next_gt(s, i);
  if (tag.end == std::string_view::npos) return std::nullopt;
  return tag;
}

bool is_block_tag(std::string_view name) {
  return name == "p" || name == "br" || name == "li" || name == "div" ||
         name == "tr";
}

// Skips a raw-text element body; `from` is just past the opening tag.
std::size_t skip_raw_text(std::string_view s, std::size_t from,
                          std::string_view name) {
  for (std::size_t i = s.find("</", from); i != std::string_view::npos;
       i = s.find("</", i + 2)) {
    if (!iequals_at(s, i + 2, name)) continue;
    const std::size_t after_name = i + 2 + name.size();
    if (after_name < s.size() && is_alpha(s[after_name])) continue;
    const std::size_t end = after_next_gt(s, after_name);
    return end == std::string_view::npos ? s.size() : end;
  }
  return s.size();
}

struct Entity {
  std::size_t length = 0;
  char value = 0;
};

std::optional<Entity> parse_entity(std::string_view s, std::size_t pos) {
  static constexpr std::array<std::pair<std::string_view, char>, 5> kNamed = {{
      {"&amp;", '&'},
      {"&lt;", '<'},
      {"&gt;", '>'},
      {"&quot;", '"'},
      {"&nbsp;", ' '},
  }};
  for (const auto& [name, value] : kNamed) {
    if (s.compare(pos, name.size(), name) == 0) {
      return Entity{name.size(), value};
    }
  }
  if (pos + 2 >= s.size() || s[pos + 1] != '#') return std::nullopt;

  std::size_t i = pos + 2;
  const bool hex = s[i] == 'x' || s[i] == 'X';
  if (hex) ++i;
  const std::size_t digits_begin = i;
  unsigned long value = 0;
  while (i < s.size() && i - digits_begin < 8) {
    const char c = s[i];
    int digit;
    if (is_digit(c)) {
      digit = c - '0';
    } else if (hex && to_lower(c) >= 'a' && to_lower(c) <= 'f') {
      digit = to_lower(c) - 'a' + 10;
    } else {
      break;
    }
    value = value * (hex ? 16 : 10) + static_cast<unsigned long>(digit);
    ++i;
  }
  if (i == digits_begin || i >= s.size() || s[i] != ';') return std::nullopt;
  if (value < 32 || value > 126) return std::nullopt;
  return Entity{i + 1 - pos, static_cast<char>(value)};
}

std::string clean_once(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == '<') {
      if (auto tag = parse_tag(s, i)) {
        if (!tag->closing && (tag->name == "script" || tag->name == "style")) {
          i = skip_raw_text(s, tag->end, tag->name);
          continue;
        }
        if (is_block_tag(tag->name)) out.push_back(' ');
        i = tag->end;
        continue;
      }
    } else if (c == '&') {
      if (auto entity = parse_entity(s, i)) {
        out.push_back(entity->value);
        i += entity->length;
        continue;
      }
    }
    out.push_back(c);
    ++i;
  }
  return normalize_whitespace(out);
}

}  // namespace

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_ascii_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string strip_html(std::string_view raw) {
  std::string current = clean_once(raw);
  for (;;) {
    std::string next = clean_once(current);
    if (next == current) return current;
    current = std::move(next);
  }
}

DocumentText build_document(const Product& product) {
  DocumentText doc{product.product_id, {}};
  for (const auto* field :
       {&product.title, &product.description, &product.bullet_points,
        &product.brand, &product.color_name}) {
    if (!field->has_value()) continue;
    std::string cleaned = strip_html(**field);
    if (cleaned.empty()) continue;
    if (!doc.text.empty()) doc.text.push_back(' ');
    doc.text += cleaned;
  }
  return doc;
}

}  // namespace shoprank
