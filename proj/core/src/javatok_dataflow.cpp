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
#include <unordered_map>
#include <vector>

#include "repairbench/javatok.hpp"

namespace repairbench::javatok {
namespace {

// Scope-stack walk over the syntax tree. Variable identity (var_slot) is
// assigned in order of first appearance, which makes edge sets invariant
// under consistent renaming.
class FlowWalker {
 public:
  explicit FlowWalker(const SyntaxTree& tree) : tree_(tree) {}

  std::vector<DataFlowEdge> run() {
    push_scope();
    visit(tree_.root);
    pop_scope();
    return std::move(edges_);
  }

 private:
  struct Var {
    std::size_t slot;
    std::optional<std::size_t> last_def;
  };

  const SyntaxTree& tree_;
  std::vector<std::unordered_map<std::string, std::size_t>> scopes_;
  std::vector<Var> vars_;
  std::size_t next_slot_ = 0;
  std::vector<DataFlowEdge> edges_;

  void push_scope() { scopes_.emplace_back(); }
  void pop_scope() { scopes_.pop_back(); }

  const SyntaxTree::Node& n(std::size_t id) const { return tree_.at(id); }
  const std::string& label(std::size_t id) const { return n(id).label; }

  const Token* leaf_token(std::size_t id) const {
    const auto& node = n(id);
    return node.is_leaf() ? &tree_.tokens[node.token] : nullptr;
  }

  Var* lookup(const std::string& name) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return &vars_[found->second];
    }
    return nullptr;
  }

  void declare(const std::string& name, std::size_t def_leaf,
               bool method_scope = false) {
    Var var{next_slot_++, def_leaf};
    vars_.push_back(var);
    auto& scope = method_scope ? scopes_.front() : scopes_.back();
    scope[name] = vars_.size() - 1;  // shadowing replaces within the scope
  }

  void redefine(Var& var, std::size_t def_leaf) { var.last_def = def_leaf; }

  void use(std::size_t name_leaf) {
    const Token* tok = leaf_token(name_leaf);
    if (!tok || tok->kind != TokenKind::Identifier) return;
    if (Var* var = lookup(tok->text); var && var->last_def) {
      edges_.push_back(DataFlowEdge{*var->last_def, n(name_leaf).token,
                                    var->slot});
    }
  }

  // Assignment target handling: a plain name is a def; array and field
  // targets read their subexpressions.
  void define_target(std::size_t target, bool also_use) {
    const std::string& l = label(target);
    if (l == "Name" && n(target).children.size() == 1) {
      std::size_t name_leaf = n(target).children[0];
      const Token* tok = leaf_token(name_leaf);
      if (!tok || tok->kind != TokenKind::Identifier) return;
      if (also_use) use(name_leaf);
      if (Var* var = lookup(tok->text)) {
        redefine(*var, n(name_leaf).token);
      } else {
        declare(tok->text, n(name_leaf).token, /*method_scope=*/true);
      }
      return;
    }
    if (l == "ArrayAccess" || l == "FieldAccess" || l == "Parenthesized") {
      visit(target);
      return;
    }
    visit(target);
  }

  std::size_t find_identifier_leaf(std::size_t id) const {
    const auto& node = n(id);
    if (node.is_leaf()) {
      return tree_.tokens[node.token].kind == TokenKind::Identifier
                 ? id
                 : SyntaxTree::kNoToken;
    }
    for (std::size_t child : node.children) {
      std::size_t found = find_identifier_leaf(child);
      if (found != SyntaxTree::kNoToken) return found;
    }
    return SyntaxTree::kNoToken;
  }

  void visit_children(std::size_t id) {
    for (std::size_t child : n(id).children) visit(child);
  }

  void visit(std::size_t id) {
    const std::string& l = label(id);

    if (n(id).is_leaf()) return;  // bare leaves carry no flow on their own

    if (l == "Block" || l == "ClassBody" || l == "SwitchCase") {
      push_scope();
      visit_children(id);
      pop_scope();
      return;
    }
    if (l == "MethodDeclaration" || l == "ForStatement" ||
        l == "ForEachStatement" || l == "ForEachControl" ||
        l == "CatchClause" || l == "TryStatement" || l == "Lambda") {
      push_scope();
      if (l == "ForEachControl" || l == "CatchClause") {
        visit_foreach_or_catch(id);
      } else {
        visit_children(id);
      }
      pop_scope();
      return;
    }
    if (l == "Parameter") {
      // last identifier leaf is the name; earlier ones belong to the type
      std::size_t name_leaf = SyntaxTree::kNoToken;
      for (std::size_t child : n(id).children) {
        const Token* tok = leaf_token(child);
        if (tok && tok->kind == TokenKind::Identifier) name_leaf = child;
      }
      if (name_leaf != SyntaxTree::kNoToken) {
        const Token* tok = leaf_token(name_leaf);
        declare(tok->text, n(name_leaf).token);
      }
      return;
    }
    if (l == "LocalVariableDeclaration" || l == "FieldDeclaration") {
      for (std::size_t child : n(id).children) {
        if (label(child) == "VariableDeclarator") {
          visit_declarator(child);
        }
        // types, modifiers and separators contribute nothing
      }
      return;
    }
    if (l == "Assignment") {
      const auto& children = n(id).children;  // [target, op, value]
      if (children.size() == 3) {
        visit(children[2]);
        const Token* op = leaf_token(children[1]);
        bool compound = op && op->text != "=";
        define_target(children[0], compound);
        return;
      }
      visit_children(id);
      return;
    }
    if (l == "UnaryExpression" || l == "PostfixExpression") {
      const auto& children = n(id).children;
      // ++/-- both read and write a plain-name operand
      const Token* first = leaf_token(children[0]);
      const Token* last = leaf_token(children.back());
      bool is_incdec = (first && (first->text == "++" || first->text == "--")) ||
                       (last && (last->text == "++" || last->text == "--"));
      if (is_incdec) {
        std::size_t operand =
            l == "UnaryExpression" ? children[1] : children[0];
        define_target(operand, /*also_use=*/true);
        return;
      }
      visit_children(id);
      return;
    }
    if (l == "Name") {
      if (n(id).children.size() == 1) use(n(id).children[0]);
      return;
    }
    if (l == "MethodCall") {
      const auto& children = n(id).children;
      // [receiver, '.', name, args] or [callee, args]; the invoked name is
      // not a variable read.
      if (children.size() == 4) {
        visit(children[0]);
        visit(children.back());
      } else if (children.size() == 2) {
        visit(children.back());  // bare call: skip the callee name
      } else {
        visit_children(id);
      }
      return;
    }
    if (l == "FieldAccess") {
      visit(n(id).children[0]);  // member name after the dot is not a read
      return;
    }
    if (l == "Type" || l == "TypeArguments" || l == "Annotation" ||
        l == "ThrowsClause" || l == "Modifiers" || l == "MethodReference") {
      return;
    }
    if (l == "NewExpression") {
      for (std::size_t child : n(id).children) {
        if (label(child) != "Type") visit(child);
      }
      return;
    }
    if (l == "LabeledStatement") {
      visit(n(id).children.back());  // the label identifier is not a variable
      return;
    }
    visit_children(id);
  }

  void visit_foreach_or_catch(std::size_t id) {
    const auto& children = n(id).children;
    // Name leaf directly before ':' (for-each) or ')' (catch) is the binding.
    std::size_t bind_leaf = SyntaxTree::kNoToken;
    for (std::size_t i = 0; i < children.size(); ++i) {
      const Token* tok = leaf_token(children[i]);
      if (tok && (tok->text == ":" || tok->text == ")") && i > 0) {
        const Token* prev = leaf_token(children[i - 1]);
        if (prev && prev->kind == TokenKind::Identifier) {
          bind_leaf = children[i - 1];
          break;
        }
      }
    }
    // evaluate everything after the binding marker first (iterable), then
    // declare, then the body sees the variable
    bool declared = false;
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (bind_leaf != SyntaxTree::kNoToken && children[i] == bind_leaf) {
        continue;  // handled after the iterable below
      }
      const Token* tok = leaf_token(children[i]);
      bool is_body = !n(children[i]).is_leaf() && i + 1 == children.size();
      if (is_body && !declared && bind_leaf != SyntaxTree::kNoToken) {
        const Token* name = leaf_token(bind_leaf);
        declare(name->text, n(bind_leaf).token);
        declared = true;
      }
      (void)tok;
      visit(children[i]);
    }
    if (!declared && bind_leaf != SyntaxTree::kNoToken) {
      const Token* name = leaf_token(bind_leaf);
      declare(name->text, n(bind_leaf).token);
    }
  }

  void visit_declarator(std::size_t id) {
    const auto& children = n(id).children;
    // [name, ('['']')*, ('=', init)?]
    std::size_t name_leaf = children[0];
    for (std::size_t i = 1; i < children.size(); ++i) {
      const Token* tok = leaf_token(children[i]);
      if (tok && (tok->text == "[" || tok->text == "]" || tok->text == "="))
        continue;
      visit(children[i]);  // initializer reads happen before the def
    }
    const Token* name = leaf_token(name_leaf);
    if (name && name->kind == TokenKind::Identifier) {
      declare(name->text, n(name_leaf).token);
    }
  }
};

}  // namespace

std::vector<DataFlowEdge> dataflow(const SyntaxTree& tree) {
  if (tree.nodes.empty()) return {};
  return FlowWalker(tree).run();
}

}  // namespace repairbench::javatok
