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

#ifndef REPAIRBENCH_JAVATOK_HPP_
#define REPAIRBENCH_JAVATOK_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace repairbench::javatok {

enum class TokenKind {
  Identifier,
  Keyword,
  Literal,
  Operator,
  Separator,
  Comment,
  FocusMarker,
};

struct Token {
  std::string text;
  TokenKind kind = TokenKind::Identifier;
  std::size_t offset = 0;  // byte offset of the token's first character

  bool operator==(const Token& other) const {
    return text == other.text && kind == other.kind;
  }
};

// Maximal-munch lexing of the Java subset found in the corpora. Total: string
// and char literals are single tokens even when unterminated, comments are
// single tokens, and any character that fits nothing becomes a one-character
// Operator token.
std::vector<Token> lex(std::string_view source);

bool is_java_keyword(std::string_view word);
bool is_focus_marker(std::string_view word);

// Rejoins token texts with newlines. Newline (not space) so that re-lexing a
// joined stream cannot let a line comment swallow its successors.
std::string join_tokens(const std::vector<Token>& tokens);

// Lexes and drops comments; the token stream used by every metric.
std::vector<Token> code_tokens(std::string_view source);
std::vector<std::string> code_token_texts(std::string_view source);

// --- Parsing -----------------------------------------------------------

// Tree over a simplified method-level grammar. Nodes are held in one arena;
// `tokens` keeps the non-comment tokens the leaves map onto, and
// `source_index[i]` is the position of tokens[i] in the original lex stream.
struct SyntaxTree {
  static constexpr std::size_t kNoToken = static_cast<std::size_t>(-1);

  struct Node {
    std::string label;
    std::size_t begin = 0;  // token span [begin, end) over `tokens`
    std::size_t end = 0;
    std::size_t token = kNoToken;  // leaf's token index, kNoToken otherwise
    std::vector<std::size_t> children;

    bool is_leaf() const { return token != kNoToken; }
  };

  std::vector<Token> tokens;
  std::vector<std::size_t> source_index;
  std::vector<Node> nodes;
  std::size_t root = 0;

  const Node& at(std::size_t id) const { return nodes[id]; }
};

struct ParseFailure {
  // Index into the original token sequence where parsing gave up; equals the
  // sequence length when input ended too early.
  std::size_t token_index = 0;
  std::string expected;
};

using ParseResult = std::variant<SyntaxTree, ParseFailure>;

ParseResult parse(const std::vector<Token>& tokens);

inline const SyntaxTree* tree_of(const ParseResult& result) {
  return std::get_if<SyntaxTree>(&result);
}
inline const ParseFailure* failure_of(const ParseResult& result) {
  return std::get_if<ParseFailure>(&result);
}

// --- Data flow ---------------------------------------------------------

struct DataFlowEdge {
  std::size_t def_position = 0;  // leaf index in tree.tokens
  std::size_t use_position = 0;
  std::size_t var_slot = 0;  // order-of-first-appearance variable identity

  auto operator<=>(const DataFlowEdge&) const = default;
};

// Def sites are declarations, parameters and assignment targets; use sites are
// identifier reads. Each use links to the nearest preceding def of the same
// name, block-scoped with shadowing. Names assigned without a declaration are
// treated as method-scope variables.
std::vector<DataFlowEdge> dataflow(const SyntaxTree& tree);

}  // namespace repairbench::javatok

#endif  // REPAIRBENCH_JAVATOK_HPP_
