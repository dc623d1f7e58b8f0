// Copyright 2026 The RepairBench Authors.
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

#include "repairbench/cleaner.hpp"

#include <algorithm>
#include <cctype>

#include "repairbench/corpus.hpp"

// Each heuristic iterates its own rewrite to a fixpoint, which is what makes
// the single-heuristic idempotence guarantee hold on adversarial input
// (stacked fences, repeated tag lines) and not just on typical responses.

namespace repairbench::cleaner {
namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

bool istarts_with(std::string_view text, std::string_view prefix) {
  return text.size() >= prefix.size() &&
         iequals(text.substr(0, prefix.size()), prefix);
}

bool is_ws(char c) { return std::isspace(static_cast<unsigned char>(c)); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ws(s.back())) s.remove_suffix(1);
  return s;
}

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

// A fence tag is a short language word like "java" or "c++"; anything else on
// the opening fence line means the line holds real content.
bool is_bare_fence_tag(std::string_view rest) {
  rest = trim(rest);
  return std::all_of(rest.begin(), rest.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '+' || c == '#' || c == '.' || c == '-';
  });
}

// One leading + one trailing strip; h5 loops this to a fixpoint.
bool h5_strip_once(std::string& text) {
  bool changed = false;

  std::size_t start = 0;
  while (start < text.size() && is_ws(text[start])) ++start;
  if (text.compare(start, 3, "```") == 0) {
    std::size_t line_end = text.find('\n', start);
    std::string_view rest =
        line_end == std::string::npos
            ? std::string_view(text).substr(start + 3)
            : std::string_view(text).substr(start + 3, line_end - start - 3);
    if (is_bare_fence_tag(rest)) {
      // drop the whole fence line, language tag included
      text.erase(0, line_end == std::string::npos ? text.size() : line_end + 1);
    } else {
      text.erase(0, start + 3);
    }
    changed = true;
  }

  std::size_t last = text.find_last_not_of(" \t\r\n\f\v");
  if (last != std::string::npos && last >= 2 &&
      text.compare(last - 2, 3, "```") == 0) {
    std::size_t line_start = text.rfind('\n', last);
    line_start = line_start == std::string::npos ? 0 : line_start;
    std::string_view line =
        std::string_view(text).substr(line_start, last + 1 - line_start);
    if (trim(line) == "```") {
      text.erase(line_start);
    } else {
      text.erase(last - 2);
    }
    changed = true;
  }
  return changed;
}

// [line_start, line_end) of the first line with non-whitespace content.
bool first_nonblank_line(const std::string& text, std::size_t& line_start,
                         std::size_t& line_end) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    if (!trim(std::string_view(text).substr(pos, end - pos)).empty()) {
      line_start = pos;
      line_end = end;
      return true;
    }
    pos = end + 1;
  }
  return false;
}

void erase_line(std::string& text, std::size_t line_start,
                std::size_t line_end) {
  text.erase(line_start,
             line_end < text.size() ? line_end + 1 - line_start
                                    : line_end - line_start);
}

// Removes standalone occurrences of `marker`, replacing them with a space so
// neighbours never fuse. Word markers respect identifier boundaries.
bool remove_marker(std::string& text, std::string_view marker) {
  bool word_like = is_word_char(marker.front());
  bool changed = false;
  std::size_t pos = 0;
  while ((pos = text.find(marker, pos)) != std::string::npos) {
    if (word_like) {
      bool left_ok = pos == 0 || !is_word_char(text[pos - 1]);
      std::size_t after = pos + marker.size();
      bool right_ok = after >= text.size() || !is_word_char(text[after]);
      if (!left_ok || !right_ok) {
        ++pos;
        continue;
      }
    }
    text.replace(pos, marker.size(), " ");
    changed = true;
  }
  return changed;
}

}  // namespace

std::string h5_strip_backticks(std::string_view input) {
  std::string text(input);
  while (h5_strip_once(text)) {
  }
  return text;
}

std::string h3_strip_lang_prefix(std::string_view input) {
  std::string text(input);
  std::size_t line_start = 0, line_end = 0;
  while (first_nonblank_line(text, line_start, line_end)) {
    std::string_view line =
        trim(std::string_view(text).substr(line_start, line_end - line_start));
    if (!iequals(line, "java")) break;
    erase_line(text, line_start, line_end);
  }
  return text;
}

std::string h4_strip_redundant(std::string_view input,
                               const HeuristicConfig& config) {
  std::string text(input);
  bool changed = true;
  while (changed) {
    changed = false;
    std::size_t line_start = 0, line_end = 0;
    if (first_nonblank_line(text, line_start, line_end)) {
      std::string_view line = trim(
          std::string_view(text).substr(line_start, line_end - line_start));
      if (!line.empty() && line.back() == ':') {
        line = trim(line.substr(0, line.size() - 1));
      }
      for (const std::string& keyword : config.title_keywords) {
        if (iequals(line, keyword)) {
          erase_line(text, line_start, line_end);
          changed = true;
          break;
        }
      }
    }
    for (std::string_view marker :
         {std::string_view("START"), std::string_view("END"),
          std::string_view("|startfocus|"), std::string_view("|endfocus|")}) {
      changed |= remove_marker(text, marker);
    }
  }
  return text;
}

std::string h2_strip_explanation(std::string_view input,
                                 const HeuristicConfig& config) {
  std::string text(input);
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line = std::string_view(text).substr(pos, end - pos);
    std::string_view content = line;
    while (!content.empty() && is_ws(content.front())) content.remove_prefix(1);
    for (const std::string& keyword : config.explanation_keywords) {
      if (istarts_with(content, keyword)) {
        std::size_t after = keyword.size();
        bool boundary =
            after >= content.size() || !is_word_char(content[after]);
        if (boundary) {
          text.erase(pos);
          return text;
        }
      }
    }
    pos = end + 1;
  }
  return text;
}

std::string h1_adjust_space(std::string_view text) {
  return corpus::normalize_whitespace(text);
}

CleanResult clean(std::string_view raw_text, const HeuristicConfig& config) {
  CleanResult result;
  std::string text(raw_text);

  auto stage = [&](const char* name, auto&& fn) {
    std::size_t before = text.size();
    text = fn(text);
    result.trace.applied.push_back(TraceEntry{name, before, text.size()});
  };

  // A later stage can expose an earlier stage's pattern (truncating an
  // explanation strands the closing fence), so the pipeline repeats in order
  // until stable. Every rewrite shrinks the text, so this terminates.
  std::string previous;
  do {
    previous = text;
    stage("H5", [](const std::string& t) { return h5_strip_backticks(t); });
    stage("H3", [](const std::string& t) { return h3_strip_lang_prefix(t); });
    stage("H4",
          [&](const std::string& t) { return h4_strip_redundant(t, config); });
    stage("H2", [&](const std::string& t) {
      return h2_strip_explanation(t, config);
    });
    stage("H1", [](const std::string& t) { return h1_adjust_space(t); });
  } while (text != previous);

  result.cleaned_text = std::move(text);
  return result;
}

}  // namespace repairbench::cleaner
