// Copyright 2026 The lode-atlas Authors
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

#pragma once

// A small expression language for polynomial identities stored as data:
// rationals, names, + - * /, integer powers and parentheses. Division is only
// allowed by a constant.

#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lode_atlas/mpoly.hpp"

namespace lode_atlas::expr {

struct Node {
  enum Kind { Num, Var, Add, Sub, Mul, Div, Pow, Neg } kind = Num;
  Rat value;
  std::string name;
  long exponent = 0;
  std::vector<std::shared_ptr<const Node>> kids;
};
using NodePtr = std::shared_ptr<const Node>;

class Parser {
 public:
  explicit Parser(std::string_view src) : s_(src) {}

  NodePtr parse() {
    NodePtr n = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  static NodePtr make(Node::Kind k, NodePtr a, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->kids.push_back(std::move(a));
    if (b) n->kids.push_back(std::move(b));
    return n;
  }

  NodePtr sum() {
    NodePtr n = product();
    for (;;) {
      if (eat('+'))
        n = make(Node::Add, n, product());
      else if (eat('-'))
        n = make(Node::Sub, n, product());
      else
        return n;
    }
  }
  NodePtr product() {
    NodePtr n = unary();
    for (;;) {
      if (eat('*')) {
        n = make(Node::Mul, n, unary());
      } else if (eat('/')) {
        n = make(Node::Div, n, unary());
      } else {
        // Juxtaposition of a name or a parenthesis is multiplication.
        skip();
        if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '('))
          n = make(Node::Mul, n, unary());
        else
          return n;
      }
    }
  }
  NodePtr unary() {
    if (eat('-')) return make(Node::Neg, unary());
    if (eat('+')) return unary();
    return power();
  }
  NodePtr power() {
    NodePtr b = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an integer exponent");
      auto n = std::make_shared<Node>();
      n->kind = Node::Pow;
      n->exponent = std::stol(std::string(s_.substr(start, pos_ - start)));
      n->kids.push_back(b);
      return n;
    }
    return b;
  }
  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = sum();
      if (!eat(')')) fail("expected ')'");
      return n;
    }
    auto n = std::make_shared<Node>();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      n->kind = Node::Num;
      n->value = Rat(Int(std::string(s_.substr(start, pos_ - start))));
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      n->kind = Node::Var;
      n->name = std::string(s_.substr(start, pos_ - start));
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline NodePtr parse(std::string_view src) { return Parser(src).parse(); }

inline void collect_names(const NodePtr& n, std::set<std::string>& out) {
  if (n->kind == Node::Var) out.insert(n->name);
  for (const auto& k : n->kids) collect_names(k, out);
}

// Evaluates an expression over polynomials P (basic_mpoly). Powers of names
// are memoized, which matters for syzygies with many high powers.
template <class P>
class Evaluator {
 public:
  using Lookup = std::function<const P&(const std::string&)>;
  Evaluator(int nvars, Lookup lookup) : nvars_(nvars), lookup_(std::move(lookup)) {}

  P operator()(const NodePtr& n) { return eval(n); }

 private:
  using K = typename P::coeff_type;

  P eval(const NodePtr& n) {
    switch (n->kind) {
      case Node::Num: return P(nvars_, K(n->value));
      case Node::Var: return lookup_(n->name);
      case Node::Add: return eval(n->kids[0]) + eval(n->kids[1]);
      case Node::Sub: return eval(n->kids[0]) - eval(n->kids[1]);
      case Node::Neg: return -eval(n->kids[0]);
      case Node::Mul: {
        // Fold constants before multiplying large polynomials.
        P a = eval(n->kids[0]);
        P b = eval(n->kids[1]);
        return a * b;
      }
      case Node::Div: {
        P d = eval(n->kids[1]);
        if (d.size() != 1 || mono::total(d.terms()[0].first) != 0)
          throw ParseError("division by a non-constant");
        return eval(n->kids[0]).scaled(K(1) / d.terms()[0].second);
      }
      case Node::Pow: {
        const NodePtr& b = n->kids[0];
        if (b->kind == Node::Var) return power_of(b->name, n->exponent);
        return eval(b).pow(static_cast<int>(n->exponent));
      }
    }
    throw ParseError("bad node");
  }

  const P& power_of(const std::string& name, long e) {
    auto& cache = powers_[name];
    if (cache.empty()) {
      cache.push_back(P(nvars_, K(1)));
      cache.push_back(lookup_(name));
    }
    while (static_cast<long>(cache.size()) <= e) cache.push_back(cache.back() * cache[1]);
    return cache[e];
  }

  int nvars_;
  Lookup lookup_;
  std::map<std::string, std::vector<P>> powers_;
};

// Parses a polynomial in the given variable names (X1, X2, X3 by default).
template <class P = QMPoly>
P parse_polynomial(std::string_view src, const std::vector<std::string>& vars = {"X1", "X2", "X3"}) {
  const int n = static_cast<int>(vars.size());
  std::map<std::string, P> table;
  for (int i = 0; i < n; ++i) table.emplace(vars[i], P::variable(n, i));
  Evaluator<P> ev(n, [&](const std::string& name) -> const P& {
    auto it = table.find(name);
    if (it == table.end()) throw ParseError("unknown variable '" + name + "'");
    return it->second;
  });
  return ev(parse(src));
}

}  // namespace lode_atlas::expr
