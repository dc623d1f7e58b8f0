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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "repairbench/javatok.hpp"

// Recursive-descent parser over a simplified method-level Java grammar:
// declarations, statements, expressions, blocks. Declaration/expression and
// cast/parenthesis ambiguities are resolved by tentative parsing with
// backtracking. Focus marker tokens are accepted at statement and member
// positions (the corpora place them there); anywhere else they fail the
// parse, and metric callers fall back per their contracts.

namespace repairbench::javatok {
namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

bool is_primitive_type(std::string_view t) {
  return t == "boolean" || t == "byte" || t == "short" || t == "int" ||
         t == "long" || t == "char" || t == "float" || t == "double";
}

bool is_modifier(std::string_view t) {
  return t == "public" || t == "protected" || t == "private" || t == "static" ||
         t == "final" || t == "abstract" || t == "synchronized" ||
         t == "native" || t == "transient" || t == "volatile" ||
         t == "strictfp" || t == "default";
}

bool is_assign_op(std::string_view t) {
  return t == "=" || t == "+=" || t == "-=" || t == "*=" || t == "/=" ||
         t == "%=" || t == "&=" || t == "|=" || t == "^=" || t == "<<=" ||
         t == ">>=" || t == ">>>=";
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<std::size_t> source_index)
      : tree_{} {
    tree_.tokens = std::move(tokens);
    tree_.source_index = std::move(source_index);
  }

  ParseResult run() {
    try {
      std::size_t root = parse_program();
      tree_.root = root;
      return std::move(tree_);
    } catch (const Fail& f) {
      ParseFailure failure;
      failure.token_index = f.pos < tree_.source_index.size()
                                ? tree_.source_index[f.pos]
                                : original_end();
      failure.expected = f.expected;
      return failure;
    }
  }

 private:
  struct Fail {
    std::size_t pos;
    const char* expected;
  };

  SyntaxTree tree_;
  std::size_t pos_ = 0;

  std::size_t original_end() const {
    return tree_.source_index.empty() ? 0 : tree_.source_index.back() + 1;
  }

  [[noreturn]] void fail(const char* expected) { throw Fail{pos_, expected}; }

  bool at_end() const { return pos_ >= tree_.tokens.size(); }
  const Token& cur() const { return tree_.tokens[pos_]; }

  bool check(std::string_view text, std::size_t ahead = 0) const {
    std::size_t p = pos_ + ahead;
    return p < tree_.tokens.size() && tree_.tokens[p].text == text;
  }
  bool check_kind(TokenKind kind, std::size_t ahead = 0) const {
    std::size_t p = pos_ + ahead;
    return p < tree_.tokens.size() && tree_.tokens[p].kind == kind;
  }

  // --- node building ---

  std::size_t leaf() {
    if (at_end()) fail("token");
    SyntaxTree::Node node;
    node.label = "leaf";
    node.begin = pos_;
    node.end = pos_ + 1;
    node.token = pos_;
    ++pos_;
    tree_.nodes.push_back(std::move(node));
    return tree_.nodes.size() - 1;
  }

  std::size_t expect(std::string_view text, const char* what) {
    if (!check(text)) fail(what);
    return leaf();
  }

  std::size_t node(std::string label, std::vector<std::size_t> children) {
    SyntaxTree::Node n;
    n.label = std::move(label);
    n.children = std::move(children);
    if (!n.children.empty()) {
      n.begin = tree_.nodes[n.children.front()].begin;
      n.end = tree_.nodes[n.children.back()].end;
    } else {
      n.begin = n.end = pos_;
    }
    tree_.nodes.push_back(std::move(n));
    return tree_.nodes.size() - 1;
  }

  // Tentative parse: restores both the cursor and the node arena on failure.
  template <typename F>
  std::optional<std::size_t> attempt(F&& f) {
    std::size_t saved_pos = pos_;
    std::size_t saved_nodes = tree_.nodes.size();
    try {
      return f();
    } catch (const Fail&) {
      pos_ = saved_pos;
      tree_.nodes.resize(saved_nodes);
      return std::nullopt;
    }
  }

  // --- program structure ---

  std::size_t parse_program() {
    std::vector<std::size_t> children;
    while (!at_end()) {
      children.push_back(parse_top_level());
    }
    return node("Program", std::move(children));
  }

  std::size_t parse_top_level() {
    if (check_kind(TokenKind::FocusMarker)) return parse_focus_marker();
    if (auto cls = attempt([&] { return parse_class_decl(); })) return *cls;
    if (auto method = attempt([&] { return parse_method_decl(); }))
      return *method;
    return parse_statement();
  }

  std::size_t parse_focus_marker() {
    std::vector<std::size_t> children{leaf()};
    return node("FocusMarker", std::move(children));
  }

  std::size_t parse_modifiers(std::vector<std::size_t>& out) {
    std::size_t count = 0;
    while (!at_end()) {
      if (check("@") && !check("interface", 1)) {
        out.push_back(parse_annotation());
        ++count;
      } else if (is_modifier(cur().text)) {
        out.push_back(leaf());
        ++count;
      } else {
        break;
      }
    }
    return count;
  }

  // Annotations are opaque: name plus a balanced argument span.
  std::size_t parse_annotation() {
    std::vector<std::size_t> children{expect("@", "'@'")};
    if (!check_kind(TokenKind::Identifier)) fail("annotation name");
    children.push_back(leaf());
    while (check(".")) {
      children.push_back(leaf());
      if (!check_kind(TokenKind::Identifier)) fail("annotation name");
      children.push_back(leaf());
    }
    if (check("(")) consume_balanced(children, "(", ")");
    return node("Annotation", std::move(children));
  }

  void consume_balanced(std::vector<std::size_t>& children,
                        std::string_view open, std::string_view close) {
    std::size_t depth = 0;
    if (!check(open)) fail("balanced group");
    do {
      if (at_end()) fail("balanced group close");
      if (cur().text == open) ++depth;
      if (cur().text == close) --depth;
      children.push_back(leaf());
    } while (depth > 0);
  }

  std::size_t parse_class_decl() {
    std::vector<std::size_t> children;
    parse_modifiers(children);
    if (check("@") && check("interface", 1)) {
      children.push_back(leaf());
      children.push_back(leaf());
    } else if (check("class") || check("interface") || check("enum")) {
      children.push_back(leaf());
    } else {
      fail("class keyword");
    }
    if (!check_kind(TokenKind::Identifier)) fail("class name");
    children.push_back(leaf());
    if (check("<")) children.push_back(parse_type_arguments());
    while (check("extends") || check("implements")) {
      children.push_back(leaf());
      children.push_back(parse_type());
      while (check(",")) {
        children.push_back(leaf());
        children.push_back(parse_type());
      }
    }
    children.push_back(parse_class_body());
    return node("ClassDeclaration", std::move(children));
  }

  std::size_t parse_class_body() {
    std::vector<std::size_t> children{expect("{", "'{'")};
    while (!check("}")) {
      if (at_end()) fail("class member or '}'");
      children.push_back(parse_member());
    }
    children.push_back(leaf());
    return node("ClassBody", std::move(children));
  }

  std::size_t parse_member() {
    if (check_kind(TokenKind::FocusMarker)) return parse_focus_marker();
    if (check(";")) {
      std::vector<std::size_t> children{leaf()};
      return node("EmptyStatement", std::move(children));
    }
    if (check("{")) return parse_block();  // initializer block
    if (auto cls = attempt([&] { return parse_class_decl(); })) return *cls;
    if (auto method = attempt([&] { return parse_method_decl(); }))
      return *method;
    if (auto field = attempt([&] { return parse_field_decl(); })) return *field;
    fail("class member");
  }

  std::size_t parse_field_decl() {
    std::size_t decl = parse_local_var_decl();
    tree_.nodes[decl].label = "FieldDeclaration";
    return decl;
  }

  std::size_t parse_method_decl() {
    std::vector<std::size_t> children;
    std::size_t modifiers = parse_modifiers(children);
    if (check("<")) children.push_back(parse_type_arguments());

    bool requires_body = false;
    if (check("void")) {
      children.push_back(leaf());
      if (!check_kind(TokenKind::Identifier)) fail("method name");
      children.push_back(leaf());
    } else if (check_kind(TokenKind::Identifier) && check("(", 1)) {
      // Constructor shape. Without modifiers this is indistinguishable from a
      // call statement until the body, so require a block then.
      requires_body = modifiers == 0;
      children.push_back(leaf());
    } else {
      children.push_back(parse_type());
      if (!check_kind(TokenKind::Identifier)) fail("method name");
      children.push_back(leaf());
    }

    children.push_back(parse_parameter_list());
    if (check("throws")) {
      std::vector<std::size_t> thr{leaf(), parse_type()};
      while (check(",")) {
        thr.push_back(leaf());
        thr.push_back(parse_type());
      }
      children.push_back(node("ThrowsClause", std::move(thr)));
    }
    if (check("{")) {
      children.push_back(parse_block());
    } else if (!requires_body && check(";")) {
      children.push_back(leaf());
    } else {
      fail("method body");
    }
    return node("MethodDeclaration", std::move(children));
  }

  std::size_t parse_parameter_list() {
    std::vector<std::size_t> children{expect("(", "'('")};
    if (!check(")")) {
      children.push_back(parse_parameter());
      while (check(",")) {
        children.push_back(leaf());
        children.push_back(parse_parameter());
      }
    }
    children.push_back(expect(")", "')'"));
    return node("ParameterList", std::move(children));
  }

  std::size_t parse_parameter() {
    std::vector<std::size_t> children;
    parse_modifiers(children);
    children.push_back(parse_type());
    if (check("...")) children.push_back(leaf());
    if (!check_kind(TokenKind::Identifier)) fail("parameter name");
    children.push_back(leaf());
    while (check("[") && check("]", 1)) {
      children.push_back(leaf());
      children.push_back(leaf());
    }
    return node("Parameter", std::move(children));
  }

  // --- types ---

  std::size_t parse_type() {
    std::vector<std::size_t> children;
    if (!at_end() && is_primitive_type(cur().text)) {
      children.push_back(leaf());
    } else if (check_kind(TokenKind::Identifier)) {
      children.push_back(leaf());
      if (check("<")) children.push_back(parse_type_arguments());
      while (check(".") && check_kind(TokenKind::Identifier, 1)) {
        children.push_back(leaf());
        children.push_back(leaf());
        if (check("<")) children.push_back(parse_type_arguments());
      }
    } else {
      fail("type");
    }
    while (check("[") && check("]", 1)) {
      children.push_back(leaf());
      children.push_back(leaf());
    }
    return node("Type", std::move(children));
  }

  // Opaque span between matching angle brackets; only type-ish tokens are
  // allowed inside so that `a < b` never lexes as a type argument list.
  std::size_t parse_type_arguments() {
    std::vector<std::size_t> children{expect("<", "'<'")};
    std::size_t depth = 1;
    while (depth > 0) {
      if (at_end()) fail("'>'");
      const std::string& t = cur().text;
      if (t == "<") {
        ++depth;
      } else if (t == ">") {
        --depth;
      } else if (t == ">>") {
        if (depth < 2) fail("'>'");
        depth -= 2;
      } else if (t == ">>>") {
        if (depth < 3) fail("'>'");
        depth -= 3;
      } else if (!(check_kind(TokenKind::Identifier) ||
                   is_primitive_type(t) || t == "," || t == "." || t == "?" ||
                   t == "extends" || t == "super" || t == "&" || t == "[" ||
                   t == "]" || t == "@")) {
        fail("type argument");
      }
      children.push_back(leaf());
    }
    return node("TypeArguments", std::move(children));
  }

  // --- statements ---

  std::size_t parse_block() {
    std::vector<std::size_t> children{expect("{", "'{'")};
    while (!check("}")) {
      if (at_end()) fail("statement or '}'");
      children.push_back(parse_block_item());
    }
    children.push_back(leaf());
    return node("Block", std::move(children));
  }

  std::size_t parse_block_item() {
    if (check_kind(TokenKind::FocusMarker)) return parse_focus_marker();
    if (check("class") || check("interface") || check("enum"))
      return parse_class_decl();
    return parse_statement();
  }

  std::size_t parse_statement() {
    if (check_kind(TokenKind::FocusMarker)) return parse_focus_marker();
    if (check("{")) return parse_block();
    if (check(";")) {
      std::vector<std::size_t> children{leaf()};
      return node("EmptyStatement", std::move(children));
    }
    if (check("if")) return parse_if();
    if (check("while")) return parse_while();
    if (check("do")) return parse_do();
    if (check("for")) return parse_for();
    if (check("return")) return parse_return();
    if (check("throw")) return parse_throw();
    if (check("break") || check("continue")) return parse_break_continue();
    if (check("try")) return parse_try();
    if (check("switch")) return parse_switch();
    if (check("synchronized") && check("(", 1)) return parse_synchronized();
    if (check("assert")) return parse_assert();
    if (check_kind(TokenKind::Identifier) && check(":", 1) &&
        !check("::", 1)) {
      std::vector<std::size_t> children{leaf(), leaf(), parse_statement()};
      return node("LabeledStatement", std::move(children));
    }
    if (auto decl = attempt([&] { return parse_local_var_decl(); }))
      return *decl;
    std::vector<std::size_t> children{parse_expression()};
    children.push_back(expect(";", "';'"));
    return node("ExpressionStatement", std::move(children));
  }

  std::size_t parse_if() {
    std::vector<std::size_t> children{expect("if", "'if'"),
                                      expect("(", "'('"), parse_expression(),
                                      expect(")", "')'"), parse_statement()};
    if (check("else")) {
      children.push_back(leaf());
      children.push_back(parse_statement());
    }
    return node("IfStatement", std::move(children));
  }

  std::size_t parse_while() {
    std::vector<std::size_t> children{expect("while", "'while'"),
                                      expect("(", "'('"), parse_expression(),
                                      expect(")", "')'"), parse_statement()};
    return node("WhileStatement", std::move(children));
  }

  std::size_t parse_do() {
    std::vector<std::size_t> children{
        expect("do", "'do'"),       parse_statement(),
        expect("while", "'while'"), expect("(", "'('"),
        parse_expression(),         expect(")", "')'"),
        expect(";", "';'")};
    return node("DoStatement", std::move(children));
  }

  std::size_t parse_for() {
    std::vector<std::size_t> children{expect("for", "'for'"),
                                      expect("(", "'('")};
    // For-each first: Type name : expr
    auto foreach_rest = attempt([&]() -> std::size_t {
      std::vector<std::size_t> inner;
      parse_modifiers(inner);
      inner.push_back(parse_type());
      if (!check_kind(TokenKind::Identifier)) fail("loop variable");
      inner.push_back(leaf());
      inner.push_back(expect(":", "':'"));
      inner.push_back(parse_expression());
      inner.push_back(expect(")", "')'"));
      inner.push_back(parse_statement());
      return node("ForEachControl", std::move(inner));
    });
    if (foreach_rest) {
      children.push_back(*foreach_rest);
      return node("ForEachStatement", std::move(children));
    }
    if (check(";")) {
      children.push_back(leaf());
    } else if (auto decl = attempt([&] { return parse_local_var_decl(); })) {
      children.push_back(*decl);
    } else {
      children.push_back(parse_expression_list());
      children.push_back(expect(";", "';'"));
    }
    if (!check(";")) children.push_back(parse_expression());
    children.push_back(expect(";", "';'"));
    if (!check(")")) children.push_back(parse_expression_list());
    children.push_back(expect(")", "')'"));
    children.push_back(parse_statement());
    return node("ForStatement", std::move(children));
  }

  std::size_t parse_expression_list() {
    std::vector<std::size_t> children{parse_expression()};
    while (check(",")) {
      children.push_back(leaf());
      children.push_back(parse_expression());
    }
    return node("ExpressionList", std::move(children));
  }

  std::size_t parse_return() {
    std::vector<std::size_t> children{expect("return", "'return'")};
    if (!check(";")) children.push_back(parse_expression());
    children.push_back(expect(";", "';'"));
    return node("ReturnStatement", std::move(children));
  }

  std::size_t parse_throw() {
    std::vector<std::size_t> children{expect("throw", "'throw'"),
                                      parse_expression(), expect(";", "';'")};
    return node("ThrowStatement", std::move(children));
  }

  std::size_t parse_break_continue() {
    bool is_break = check("break");
    std::vector<std::size_t> children{leaf()};
    if (check_kind(TokenKind::Identifier)) children.push_back(leaf());
    children.push_back(expect(";", "';'"));
    return node(is_break ? "BreakStatement" : "ContinueStatement",
                std::move(children));
  }

  std::size_t parse_try() {
    std::vector<std::size_t> children{expect("try", "'try'")};
    if (check("(")) {
      std::vector<std::size_t> res;
      consume_balanced(res, "(", ")");
      children.push_back(node("ResourceSpecification", std::move(res)));
    }
    children.push_back(parse_block());
    while (check("catch")) {
      std::vector<std::size_t> clause{leaf(), expect("(", "'('")};
      parse_modifiers(clause);
      clause.push_back(parse_type());
      while (check("|")) {
        clause.push_back(leaf());
        clause.push_back(parse_type());
      }
      if (!check_kind(TokenKind::Identifier)) fail("exception name");
      clause.push_back(leaf());
      clause.push_back(expect(")", "')'"));
      clause.push_back(parse_block());
      children.push_back(node("CatchClause", std::move(clause)));
    }
    if (check("finally")) {
      std::vector<std::size_t> fin{leaf(), parse_block()};
      children.push_back(node("FinallyClause", std::move(fin)));
    }
    return node("TryStatement", std::move(children));
  }

  std::size_t parse_switch() {
    std::vector<std::size_t> children{
        expect("switch", "'switch'"), expect("(", "'('"), parse_expression(),
        expect(")", "')'"), expect("{", "'{'")};
    while (!check("}")) {
      if (at_end()) fail("switch case or '}'");
      std::vector<std::size_t> group;
      if (check("case")) {
        group.push_back(leaf());
        group.push_back(parse_expression());
        group.push_back(expect(":", "':'"));
      } else if (check("default")) {
        group.push_back(leaf());
        group.push_back(expect(":", "':'"));
      } else {
        fail("'case' or 'default'");
      }
      while (!check("case") && !check("default") && !check("}")) {
        if (at_end()) fail("statement or '}'");
        group.push_back(parse_block_item());
      }
      children.push_back(node("SwitchCase", std::move(group)));
    }
    children.push_back(leaf());
    return node("SwitchStatement", std::move(children));
  }

  std::size_t parse_synchronized() {
    std::vector<std::size_t> children{
        expect("synchronized", "'synchronized'"), expect("(", "'('"),
        parse_expression(), expect(")", "')'"), parse_block()};
    return node("SynchronizedStatement", std::move(children));
  }

  std::size_t parse_assert() {
    std::vector<std::size_t> children{expect("assert", "'assert'"),
                                      parse_expression()};
    if (check(":")) {
      children.push_back(leaf());
      children.push_back(parse_expression());
    }
    children.push_back(expect(";", "';'"));
    return node("AssertStatement", std::move(children));
  }

  std::size_t parse_local_var_decl() {
    std::vector<std::size_t> children;
    parse_modifiers(children);
    children.push_back(parse_type());
    children.push_back(parse_var_declarator());
    while (check(",")) {
      children.push_back(leaf());
      children.push_back(parse_var_declarator());
    }
    children.push_back(expect(";", "';'"));
    return node("LocalVariableDeclaration", std::move(children));
  }

  std::size_t parse_var_declarator() {
    if (!check_kind(TokenKind::Identifier)) fail("variable name");
    std::vector<std::size_t> children{leaf()};
    while (check("[") && check("]", 1)) {
      children.push_back(leaf());
      children.push_back(leaf());
    }
    if (check("=")) {
      children.push_back(leaf());
      children.push_back(parse_variable_init());
    }
    return node("VariableDeclarator", std::move(children));
  }

  std::size_t parse_variable_init() {
    if (check("{")) return parse_array_initializer();
    return parse_expression();
  }

  std::size_t parse_array_initializer() {
    std::vector<std::size_t> children{expect("{", "'{'")};
    if (!check("}")) {
      children.push_back(parse_variable_init());
      while (check(",")) {
        children.push_back(leaf());
        if (check("}")) break;  // trailing comma
        children.push_back(parse_variable_init());
      }
    }
    children.push_back(expect("}", "'}'"));
    return node("ArrayInitializer", std::move(children));
  }

  // --- expressions ---

  std::size_t parse_expression() { return parse_assignment(); }

  std::size_t parse_assignment() {
    std::size_t left = parse_conditional();
    if (!at_end() && is_assign_op(cur().text)) {
      std::vector<std::size_t> children{left, leaf(), parse_assignment()};
      return node("Assignment", std::move(children));
    }
    return left;
  }

  std::size_t parse_conditional() {
    std::size_t cond = parse_binary(0);
    if (check("?")) {
      std::vector<std::size_t> children{cond, leaf(), parse_expression(),
                                        expect(":", "':'"),
                                        parse_conditional()};
      return node("Conditional", std::move(children));
    }
    return cond;
  }

  // Precedence levels, loosest first.
  int binary_level(std::string_view op) const {
    if (op == "||") return 0;
    if (op == "&&") return 1;
    if (op == "|") return 2;
    if (op == "^") return 3;
    if (op == "&") return 4;
    if (op == "==" || op == "!=") return 5;
    if (op == "<" || op == ">" || op == "<=" || op == ">=" ||
        op == "instanceof")
      return 6;
    if (op == "<<" || op == ">>" || op == ">>>") return 7;
    if (op == "+" || op == "-") return 8;
    if (op == "*" || op == "/" || op == "%") return 9;
    return -1;
  }

  std::size_t parse_binary(int level) {
    if (level > 9) return parse_unary();
    std::size_t left = parse_binary(level + 1);
    while (!at_end() && binary_level(cur().text) == level) {
      if (cur().text == "instanceof") {
        std::vector<std::size_t> children{left, leaf(), parse_type()};
        left = node("InstanceofExpression", std::move(children));
        continue;
      }
      std::vector<std::size_t> children{left, leaf(), parse_binary(level + 1)};
      left = node("BinaryExpression", std::move(children));
    }
    return left;
  }

  std::size_t parse_unary() {
    if (check("+") || check("-") || check("!") || check("~") || check("++") ||
        check("--")) {
      std::vector<std::size_t> children{leaf(), parse_unary()};
      return node("UnaryExpression", std::move(children));
    }
    if (check("(")) {
      // Cast: '(' Type ')' followed by something a cast can apply to.
      auto cast = attempt([&]() -> std::size_t {
        std::vector<std::size_t> children{leaf(), parse_type(),
                                          expect(")", "')'")};
        if (at_end()) fail("cast operand");
        const Token& next = cur();
        bool operand_ok = next.kind == TokenKind::Identifier ||
                          next.kind == TokenKind::Literal ||
                          next.text == "(" || next.text == "!" ||
                          next.text == "~" || next.text == "new" ||
                          next.text == "this" || next.text == "super";
        if (!operand_ok) fail("cast operand");
        children.push_back(parse_unary());
        return node("CastExpression", std::move(children));
      });
      if (cast) return *cast;
    }
    return parse_postfix();
  }

  std::size_t parse_postfix() {
    std::size_t expr = parse_primary();
    while (!at_end()) {
      if (check(".")) {
        if (check("new", 1)) {  // qualified new; treat opaquely via primary
          std::vector<std::size_t> children{expr, leaf(), parse_primary()};
          expr = node("FieldAccess", std::move(children));
          continue;
        }
        if (!(check_kind(TokenKind::Identifier, 1) || check("this", 1) ||
              check("class", 1) || check("super", 1))) {
          fail("member name");
        }
        std::size_t dot = leaf();
        std::size_t name = leaf();
        if (check("(")) {
          std::vector<std::size_t> children{expr, dot, name,
                                            parse_argument_list()};
          expr = node("MethodCall", std::move(children));
        } else {
          std::vector<std::size_t> children{expr, dot, name};
          expr = node("FieldAccess", std::move(children));
        }
        continue;
      }
      if (check("(")) {
        std::vector<std::size_t> children{expr, parse_argument_list()};
        expr = node("MethodCall", std::move(children));
        continue;
      }
      if (check("[")) {
        std::vector<std::size_t> children{expr, leaf(), parse_expression(),
                                          expect("]", "']'")};
        expr = node("ArrayAccess", std::move(children));
        continue;
      }
      if (check("::")) {
        std::size_t op = leaf();
        std::size_t name;
        if (check("new")) {
          name = leaf();
        } else if (check_kind(TokenKind::Identifier)) {
          name = leaf();
        } else {
          fail("method reference name");
        }
        std::vector<std::size_t> children{expr, op, name};
        expr = node("MethodReference", std::move(children));
        continue;
      }
      if (check("++") || check("--")) {
        std::vector<std::size_t> children{expr, leaf()};
        expr = node("PostfixExpression", std::move(children));
        continue;
      }
      break;
    }
    return expr;
  }

  std::size_t parse_argument_list() {
    std::vector<std::size_t> children{expect("(", "'('")};
    if (!check(")")) {
      children.push_back(parse_expression());
      while (check(",")) {
        children.push_back(leaf());
        children.push_back(parse_expression());
      }
    }
    children.push_back(expect(")", "')'"));
    return node("ArgumentList", std::move(children));
  }

  std::size_t parse_primary() {
    if (at_end()) fail("expression");
    if (check_kind(TokenKind::Literal)) {
      std::vector<std::size_t> children{leaf()};
      return node("Literal", std::move(children));
    }
    if (check("this") || check("super")) {
      std::vector<std::size_t> children{leaf()};
      return node("Name", std::move(children));
    }
    if (check("new")) return parse_new();
    if (check("(")) {
      // Lambda: '(' params ')' '->' body
      auto lambda = attempt([&]() -> std::size_t {
        std::vector<std::size_t> children;
        consume_balanced(children, "(", ")");
        children.push_back(expect("->", "'->'"));
        children.push_back(parse_lambda_body());
        return node("Lambda", std::move(children));
      });
      if (lambda) return *lambda;
      std::vector<std::size_t> children{leaf(), parse_expression(),
                                        expect(")", "')'")};
      return node("Parenthesized", std::move(children));
    }
    if (check_kind(TokenKind::Identifier)) {
      if (check("->", 1)) {
        std::vector<std::size_t> children{leaf(), leaf(), parse_lambda_body()};
        return node("Lambda", std::move(children));
      }
      std::vector<std::size_t> children{leaf()};
      return node("Name", std::move(children));
    }
    if (!at_end() && is_primitive_type(cur().text)) {
      // e.g. int.class, double[].class
      std::vector<std::size_t> children{leaf()};
      while (check("[") && check("]", 1)) {
        children.push_back(leaf());
        children.push_back(leaf());
      }
      return node("Name", std::move(children));
    }
    fail("expression");
  }

  std::size_t parse_lambda_body() {
    if (check("{")) return parse_block();
    return parse_expression();
  }

  std::size_t parse_new() {
    std::vector<std::size_t> children{expect("new", "'new'")};
    children.push_back(parse_type());
    if (check("(")) {
      children.push_back(parse_argument_list());
      if (check("{")) children.push_back(parse_class_body());  // anonymous
    } else if (check("[")) {
      while (check("[")) {
        children.push_back(leaf());
        if (!check("]")) children.push_back(parse_expression());
        children.push_back(expect("]", "']'"));
      }
      if (check("{")) children.push_back(parse_array_initializer());
    } else if (check("{")) {
      children.push_back(parse_array_initializer());
    } else {
      fail("constructor arguments");
    }
    return node("NewExpression", std::move(children));
  }
};

}  // namespace

ParseResult parse(const std::vector<Token>& tokens) {
  std::vector<Token> significant;
  std::vector<std::size_t> source_index;
  significant.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].kind == TokenKind::Comment) continue;
    significant.push_back(tokens[i]);
    source_index.push_back(i);
  }
  Parser parser(std::move(significant), std::move(source_index));
  return parser.run();
}

}  // namespace repairbench::javatok
