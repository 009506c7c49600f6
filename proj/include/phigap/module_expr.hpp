#pragma once

// Module expressions:
//   expr := term ("+" term)* | "0"
//   term := atom ("^" INT)?
//   atom := "S(" vid ")" | "P(" vid ")" | "P(" vid ")/[" vid ("," vid)* "]"
// Vertex ids may contain balanced parentheses, e.g. S((1,2)).

#include "phigap/algebra.hpp"
#include "phigap/errors.hpp"
#include "phigap/quiver.hpp"

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace phigap {

namespace detail {

class ModuleExprParser {
public:
  ModuleExprParser(const Quiver& q, std::string_view text) : q_(q), text_(text) {}

  ModuleClass parse() {
    skip_ws();
    if (peek() == '0') {
      ++pos_;
      skip_ws();
      if (pos_ != text_.size()) fail("trailing input");
      return ModuleClass::zero();
    }
    ModuleClass m = term();
    skip_ws();
    while (pos_ < text_.size() && peek() == '+') {
      ++pos_;
      m += term();
      skip_ws();
    }
    if (pos_ != text_.size()) fail("expected '+' or end of expression");
    return m;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw parse_error("module expression: " + what, 1, pos_ + 1);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  /// Reads a vertex id up to (not including) a top-level terminator.
  VertexId vertex(std::string_view terminators) {
    skip_ws();
    const std::size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (depth == 0 && terminators.find(c) != std::string_view::npos) break;
      if (c == '(') ++depth;
      if (c == ')') --depth;
      ++pos_;
    }
    std::string id(text_.substr(start, pos_ - start));
    while (!id.empty() && std::isspace(static_cast<unsigned char>(id.back()))) id.pop_back();
    if (id.empty()) fail("empty vertex id");
    if (auto v = q_.find(id)) return *v;
    throw input_error("module expression: unknown vertex '" + id + "'");
  }

  ModuleClass term() {
    skip_ws();
    const char kind = peek();
    if (kind != 'S' && kind != 'P') fail("expected S(...) or P(...)");
    ++pos_;
    expect('(');
    const VertexId v = vertex(")");
    expect(')');
    Atom atom = kind == 'S' ? Atom::simple(v) : Atom::projective(v);
    skip_ws();
    if (kind == 'P' && peek() == '/') {
      ++pos_;
      expect('[');
      std::vector<VertexId> removed{vertex(",]")};
      skip_ws();
      while (peek() == ',') {
        ++pos_;
        removed.push_back(vertex(",]"));
        skip_ws();
      }
      expect(']');
      atom = Atom::local_quotient(v, std::move(removed));
    }
    skip_ws();
    std::size_t multiplicity = 1;
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      const std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (start == pos_) fail("expected exponent");
      multiplicity = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (multiplicity == 0) fail("exponent must be positive");
    }
    return ModuleClass(std::move(atom), multiplicity);
  }

  const Quiver& q_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace detail

/// Parses and normalizes a module expression against q.
inline ModuleClass parse_module(const Quiver& q, std::string_view text) {
  return normalize(q, detail::ModuleExprParser(q, text).parse());
}

inline std::string format_atom(const Quiver& q, const Atom& a) {
  const std::string& v = q.vertex_name(a.vertex);
  switch (a.kind) {
  case AtomKind::simple:
    return "S(" + v + ")";
  case AtomKind::projective:
    return "P(" + v + ")";
  case AtomKind::local_quotient: {
    std::string s = "P(" + v + ")/[";
    for (std::size_t i = 0; i < a.removed.size(); ++i) {
      if (i) s += ",";
      s += q.vertex_name(a.removed[i]);
    }
    return s + "]";
  }
  }
  return {};
}

inline std::string format_module(const Quiver& q, const ModuleClass& m) {
  if (m.is_zero()) return "0";
  std::string s;
  for (const auto& [a, k] : m.summands()) {
    if (!s.empty()) s += " + ";
    s += format_atom(q, a);
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s;
}

} // namespace phigap
