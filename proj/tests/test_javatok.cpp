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
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <doctest.h>

using namespace repairbench::javatok;

namespace {

std::vector<std::string> texts(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.text);
  return out;
}

const SyntaxTree& require_tree(const ParseResult& result) {
  const SyntaxTree* tree = tree_of(result);
  REQUIRE(tree != nullptr);
  return *tree;
}

// Collects leaf token indices in order.
void collect_leaves(const SyntaxTree& tree, std::size_t id,
                    std::vector<std::size_t>& out) {
  const auto& node = tree.at(id);
  if (node.is_leaf()) {
    out.push_back(node.token);
    return;
  }
  for (std::size_t child : node.children) collect_leaves(tree, child, out);
}

bool has_label(const SyntaxTree& tree, std::string_view label) {
  return std::any_of(tree.nodes.begin(), tree.nodes.end(),
                     [&](const auto& n) { return n.label == label; });
}

void check_spans(const SyntaxTree& tree, std::size_t id) {
  const auto& node = tree.at(id);
  if (node.is_leaf()) {
    CHECK(node.end == node.begin + 1);
    return;
  }
  std::size_t cursor = node.begin;
  for (std::size_t child : node.children) {
    CHECK(tree.at(child).begin == cursor);
    cursor = tree.at(child).end;
    check_spans(tree, child);
  }
  CHECK(cursor == node.end);
}

}  // namespace

TEST_CASE("javatok: lexes a simple declaration with kinds") {
  auto tokens = lex("int x=1;");
  REQUIRE(tokens.size() == 5);
  CHECK(tokens[0].text == "int");
  CHECK(tokens[0].kind == TokenKind::Keyword);
  CHECK(tokens[1].text == "x");
  CHECK(tokens[1].kind == TokenKind::Identifier);
  CHECK(tokens[2].text == "=");
  CHECK(tokens[2].kind == TokenKind::Operator);
  CHECK(tokens[3].text == "1");
  CHECK(tokens[3].kind == TokenKind::Literal);
  CHECK(tokens[4].text == ";");
  CHECK(tokens[4].kind == TokenKind::Separator);
}

TEST_CASE("javatok: string literal with spaces is one token") {
  auto tokens = lex("\"a b\"");
  REQUIRE(tokens.size() == 1);
  CHECK(tokens[0].kind == TokenKind::Literal);
  CHECK(tokens[0].text == "\"a b\"");
}

TEST_CASE("javatok: focus markers become FocusMarker tokens") {
  auto tokens = lex("|startfocus| x |endfocus|");
  REQUIRE(tokens.size() == 3);
  CHECK(tokens[0].kind == TokenKind::FocusMarker);
  CHECK(tokens[1].kind == TokenKind::Identifier);
  CHECK(tokens[2].kind == TokenKind::FocusMarker);

  auto tufano = lex("START x = 1 ; END");
  CHECK(tufano.front().kind == TokenKind::FocusMarker);
  CHECK(tufano.back().kind == TokenKind::FocusMarker);

  // identifiers that merely contain a marker word stay identifiers
  auto started = lex("STARTED ENDING");
  CHECK(started[0].kind == TokenKind::Identifier);
  CHECK(started[1].kind == TokenKind::Identifier);
}

TEST_CASE("javatok: comments and unknown bytes never fail") {
  auto tokens = lex("a(); // trailing\n/* block */ b(); \x01");
  std::size_t comments = 0;
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::Comment) ++comments;
  }
  CHECK(comments == 2);
  CHECK(tokens.back().kind == TokenKind::Operator);  // the stray byte

  CHECK(lex("\"unterminated").size() == 1);
  CHECK(lex("/* unterminated").size() == 1);
}

TEST_CASE("javatok: maximal munch on operators") {
  auto tokens = lex("a>>>=b;x<<=2;p->q;A::b");
  std::vector<std::string> ops;
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::Operator) ops.push_back(t.text);
  }
  CHECK(std::find(ops.begin(), ops.end(), ">>>=") != ops.end());
  CHECK(std::find(ops.begin(), ops.end(), "<<=") != ops.end());
  CHECK(std::find(ops.begin(), ops.end(), "->") != ops.end());
  CHECK(std::find(ops.begin(), ops.end(), "::") != ops.end());
}

TEST_CASE("javatok: relex of joined tokens is stable") {
  const std::string sources[] = {
      "int x = 1; // note\nreturn x;",
      "String s = \"a b\"; /* c */ s += \"d\";",
      "for (int i = 0; i < 10; i++) { total += i; }",
      "if (a >= b && c != d) throw new IllegalStateException(\"x\");",
      "START if (ok()) { END return; }",
  };
  for (const auto& src : sources) {
    auto first = lex(src);
    auto second = lex(join_tokens(first));
    CHECK(texts(first) == texts(second));
  }
}

TEST_CASE("javatok: parses a return statement") {
  auto result = parse(lex("return x ;"));
  const SyntaxTree& tree = require_tree(result);
  CHECK(tree.tokens.size() == 3);
  CHECK(has_label(tree, "ReturnStatement"));
  std::vector<std::size_t> leaves;
  collect_leaves(tree, tree.root, leaves);
  CHECK(leaves.size() == 3);
}

TEST_CASE("javatok: truncated input reports the failing index") {
  auto result = parse(lex("if ("));
  const ParseFailure* failure = failure_of(result);
  REQUIRE(failure != nullptr);
  CHECK(failure->token_index == 2);
}

TEST_CASE("javatok: block with two expression statements") {
  auto result = parse(lex("{ a(); b(); }"));
  const SyntaxTree& tree = require_tree(result);
  std::size_t expr_statements = 0;
  for (const auto& node : tree.nodes) {
    if (node.label == "ExpressionStatement") ++expr_statements;
  }
  CHECK(expr_statements == 2);
  CHECK(has_label(tree, "Block"));
}

TEST_CASE("javatok: leaves reproduce the non-comment token stream") {
  const std::string sources[] = {
      "public boolean accept(Issue issue) { return !bad(issue); }",
      "int a = 1; // c\nint b = a + 2; return b;",
      "List<String> xs = new ArrayList<>(); xs.add(\"x\");",
      "try { run(); } catch (Exception e) { log(e); } finally { done(); }",
      "switch (k) { case 1: return; default: break; }",
      "for (Item it : items) { use(it); }",
      "START if (cond) { END return false; }",
  };
  for (const auto& src : sources) {
    auto tokens = lex(src);
    auto result = parse(tokens);
    const SyntaxTree& tree = require_tree(result);
    std::vector<std::size_t> leaves;
    collect_leaves(tree, tree.root, leaves);
    // leaf order is exactly 0..n-1 over the significant tokens
    REQUIRE(leaves.size() == tree.tokens.size());
    for (std::size_t i = 0; i < leaves.size(); ++i) CHECK(leaves[i] == i);

    std::vector<std::string> expected;
    for (const auto& t : tokens) {
      if (t.kind != TokenKind::Comment) expected.push_back(t.text);
    }
    CHECK(texts(tree.tokens) == expected);
    check_spans(tree, tree.root);
  }
}

TEST_CASE("javatok: parses method declarations and generics") {
  auto result = parse(lex(
      "private FirewallRule findById(List<FirewallRule> collection, String "
      "id) { for (FirewallRule rule : collection) { if (rule.id().equals(id)) "
      "{ return rule; } } return null; }"));
  const SyntaxTree& tree = require_tree(result);
  CHECK(has_label(tree, "MethodDeclaration"));
  CHECK(has_label(tree, "ForEachStatement"));
  CHECK(has_label(tree, "TypeArguments"));
}

TEST_CASE("javatok: dataflow finds a single def-use chain") {
  auto result = parse(lex("int a = 1; return a;"));
  auto edges = dataflow(require_tree(result));
  REQUIRE(edges.size() == 1);
  CHECK(edges[0].def_position < edges[0].use_position);
  CHECK(edges[0].var_slot == 0);
}

TEST_CASE("javatok: dataflow of variable-free code is empty") {
  auto result = parse(lex("return 1;"));
  CHECK(dataflow(require_tree(result)).empty());
}

TEST_CASE("javatok: dataflow chains across declarations") {
  auto result = parse(lex("int a=1; int b=a; return b;"));
  auto edges = dataflow(require_tree(result));
  CHECK(edges.size() == 2);
  std::set<std::size_t> slots;
  for (const auto& e : edges) slots.insert(e.var_slot);
  CHECK(slots == std::set<std::size_t>{0, 1});
}

TEST_CASE("javatok: dataflow respects reassignment") {
  auto result = parse(lex("int x = 1; int y = x; x = 2; int z = x;"));
  auto edges = dataflow(require_tree(result));
  REQUIRE(edges.size() == 2);
  // the two uses of x read different defs
  CHECK(edges[0].def_position != edges[1].def_position);
  CHECK(edges[0].var_slot == edges[1].var_slot);
}

TEST_CASE("javatok: dataflow edges are invariant under consistent renaming") {
  const std::string templates[] = {
      "int VAR1 = 1; int VAR2 = VAR1 + 2; return VAR2;",
      "int VAR1 = 0; for (int VAR2 = 0; VAR2 < 10; VAR2++) { VAR1 += VAR2; } "
      "return VAR1;",
      "String VAR1 = name(); if (VAR1 != null) { use(VAR1); }",
  };
  std::mt19937 rng(7);
  const char* names_a[] = {"alpha", "beta"};
  const char* names_b[] = {"zulu", "yankee"};
  for (const auto& tmpl : templates) {
    auto substitute = [&](const char* n1, const char* n2) {
      std::string s = tmpl;
      auto replace_all = [&](const std::string& from, const std::string& to) {
        for (std::size_t pos = s.find(from); pos != std::string::npos;
             pos = s.find(from, pos + to.size())) {
          s.replace(pos, from.size(), to);
        }
      };
      replace_all("VAR1", n1);
      replace_all("VAR2", n2);
      return s;
    };
    auto edges_of = [&](const std::string& src) {
      auto result = parse(lex(src));
      auto edges = dataflow(require_tree(result));
      std::sort(edges.begin(), edges.end());
      return edges;
    };
    CHECK(edges_of(substitute(names_a[0], names_a[1])) ==
          edges_of(substitute(names_b[0], names_b[1])));
  }
  (void)rng;
}
