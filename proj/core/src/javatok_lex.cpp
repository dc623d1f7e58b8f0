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

#include "repairbench/javatok.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace repairbench::javatok {
namespace {

const std::unordered_set<std::string_view> kKeywords = {
    "abstract", "assert",     "boolean",  "break",      "byte",
    "case",     "catch",      "char",     "class",      "const",
    "continue", "default",    "do",       "double",     "else",
    "enum",     "extends",    "final",    "finally",    "float",
    "for",      "goto",       "if",       "implements", "import",
    "instanceof", "int",      "interface", "long",      "native",
    "new",      "package",    "private",  "protected",  "public",
    "return",   "short",      "static",   "strictfp",   "super",
    "switch",   "synchronized", "this",   "throw",      "throws",
    "transient", "try",       "void",     "volatile",   "while",
};

// Dataset marker tokens. The pipe-delimited ones are matched before operator
// lexing; START and END are reclassified after identifier lexing.
constexpr std::array<std::string_view, 5> kPipeMarkers = {
    "|startcomment|", "|endcomment|", "|startfocus|", "|endfocus|", "|del|"};

constexpr std::array<std::string_view, 24> kMultiCharOperators = {
    ">>>=", "<<=", ">>=", ">>>", "->", "::", "==", "!=", "<=", ">=",
    "&&",   "||",  "++",  "--",  "+=", "-=", "*=", "/=", "%=", "&=",
    "|=",   "^=",  "<<",  ">>"};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }
bool is_hex_digit(char c) {
  return std::isxdigit(static_cast<unsigned char>(c));
}
bool is_separator(char c) {
  switch (c) {
    case '(':
    case ')':
    case '{':
    case '}':
    case '[':
    case ']':
    case ';':
    case ',':
    case '.':
    case '@':
      return true;
    default:
      return false;
  }
}

std::size_t scan_quoted(std::string_view src, std::size_t pos, char quote) {
  std::size_t i = pos + 1;
  while (i < src.size()) {
    if (src[i] == '\\' && i + 1 < src.size()) {
      i += 2;
      continue;
    }
    if (src[i] == quote) return i + 1;
    ++i;
  }
  return src.size();  // unterminated literal runs to end of input
}

std::size_t scan_number(std::string_view src, std::size_t pos) {
  std::size_t i = pos;
  if (src[i] == '0' && i + 1 < src.size() &&
      (src[i + 1] == 'x' || src[i + 1] == 'X')) {
    i += 2;
    while (i < src.size() && (is_hex_digit(src[i]) || src[i] == '_')) ++i;
  } else if (src[i] == '0' && i + 1 < src.size() &&
             (src[i + 1] == 'b' || src[i + 1] == 'B')) {
    i += 2;
    while (i < src.size() && (src[i] == '0' || src[i] == '1' || src[i] == '_'))
      ++i;
  } else {
    while (i < src.size() && (is_digit(src[i]) || src[i] == '_')) ++i;
    if (i < src.size() && src[i] == '.' && i + 1 < src.size() &&
        is_digit(src[i + 1])) {
      ++i;
      while (i < src.size() && (is_digit(src[i]) || src[i] == '_')) ++i;
    }
    if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
      std::size_t mark = i + 1;
      if (mark < src.size() && (src[mark] == '+' || src[mark] == '-')) ++mark;
      if (mark < src.size() && is_digit(src[mark])) {
        i = mark;
        while (i < src.size() && is_digit(src[i])) ++i;
      }
    }
  }
  if (i < src.size() && (src[i] == 'l' || src[i] == 'L' || src[i] == 'f' ||
                         src[i] == 'F' || src[i] == 'd' || src[i] == 'D')) {
    ++i;
  }
  return i;
}

}  // namespace

bool is_java_keyword(std::string_view word) { return kKeywords.count(word) > 0; }

bool is_focus_marker(std::string_view word) {
  if (word == "START" || word == "END") return true;
  return std::find(kPipeMarkers.begin(), kPipeMarkers.end(), word) !=
         kPipeMarkers.end();
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto emit = [&](std::size_t begin, std::size_t end, TokenKind kind) {
    out.push_back(Token{std::string(src.substr(begin, end - begin)), kind, begin});
    i = end;
  };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      std::size_t end = src.find('\n', i);
      emit(i, end == std::string_view::npos ? src.size() : end,
           TokenKind::Comment);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
      std::size_t end = src.find("*/", i + 2);
      emit(i, end == std::string_view::npos ? src.size() : end + 2,
           TokenKind::Comment);
      continue;
    }
    if (c == '"' || c == '\'') {
      emit(i, scan_quoted(src, i, c), TokenKind::Literal);
      continue;
    }
    if (is_digit(c) ||
        (c == '.' && i + 1 < src.size() && is_digit(src[i + 1]))) {
      emit(i, scan_number(src, i), TokenKind::Literal);
      continue;
    }
    if (is_ident_start(c)) {
      std::size_t end = i + 1;
      while (end < src.size() && is_ident_char(src[end])) ++end;
      std::string_view word = src.substr(i, end - i);
      TokenKind kind = TokenKind::Identifier;
      if (word == "START" || word == "END") {
        kind = TokenKind::FocusMarker;
      } else if (kKeywords.count(word) > 0) {
        kind = TokenKind::Keyword;
      } else if (word == "true" || word == "false" || word == "null") {
        kind = TokenKind::Literal;
      }
      emit(i, end, kind);
      continue;
    }
    if (c == '|') {
      bool matched = false;
      for (std::string_view marker : kPipeMarkers) {
        if (src.substr(i, marker.size()) == marker) {
          emit(i, i + marker.size(), TokenKind::FocusMarker);
          matched = true;
          break;
        }
      }
      if (matched) continue;
    }
    if (is_separator(c)) {
      if (c == '.' && src.substr(i, 3) == "...") {
        emit(i, i + 3, TokenKind::Separator);
      } else {
        emit(i, i + 1, TokenKind::Separator);
      }
      continue;
    }
    {
      bool matched = false;
      for (std::string_view op : kMultiCharOperators) {
        if (src.substr(i, op.size()) == op) {
          emit(i, i + op.size(), TokenKind::Operator);
          matched = true;
          break;
        }
      }
      if (matched) continue;
    }
    // Anything left (including bytes outside ASCII) is a single-char operator.
    emit(i, i + 1, TokenKind::Operator);
  }
  return out;
}

std::string join_tokens(const std::vector<Token>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += '\n';
    out += tokens[i].text;
  }
  return out;
}

std::vector<Token> code_tokens(std::string_view source) {
  std::vector<Token> tokens = lex(source);
  std::erase_if(tokens,
                [](const Token& t) { return t.kind == TokenKind::Comment; });
  return tokens;
}

std::vector<std::string> code_token_texts(std::string_view source) {
  std::vector<std::string> texts;
  for (Token& t : code_tokens(source)) texts.push_back(std::move(t.text));
  return texts;
}

}  // namespace repairbench::javatok
