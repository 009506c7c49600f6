#pragma once

// Text formats for quivers.
//
//   quiver <id> { vertices: <id>+ ; arrows: ( [<id> :] <id> -> <id> ; )* }
//
// '#' starts a line comment. Identifiers are runs of non-blank characters
// other than ; : { } # and stop before "->", so names like (k+1,j) and 3''
// are fine. The JSON form is {name, vertices:[...], arrows:[{label?,source,target}]}.

#include "phigap/errors.hpp"
#include "phigap/quiver.hpp"

#include <json.hpp>

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace phigap {

namespace detail {

class QuiverLexer {
public:
  enum class Kind { identifier, lbrace, rbrace, semicolon, colon, arrow, end };
  struct Token {
    Kind kind;
    std::string text;
    std::size_t line;
    std::size_t column;
  };

  explicit QuiverLexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_blank();
    const std::size_t line = line_, column = column_;
    if (pos_ >= text_.size()) return {Kind::end, "", line, column};
    const char c = text_[pos_];
    auto single = [&](Kind k) {
      advance();
      return Token{k, std::string(1, c), line, column};
    };
    switch (c) {
    case '{': return single(Kind::lbrace);
    case '}': return single(Kind::rbrace);
    case ';': return single(Kind::semicolon);
    case ':': return single(Kind::colon);
    default: break;
    }
    if (starts_arrow()) {
      advance();
      advance();
      return {Kind::arrow, "->", line, column};
    }
    std::string ident;
    while (pos_ < text_.size() && is_ident_char(text_[pos_]) && !starts_arrow()) {
      ident += text_[pos_];
      advance();
    }
    if (ident.empty())
      throw parse_error(std::string("unexpected character '") + c + "'", line, column);
    return {Kind::identifier, std::move(ident), line, column};
  }

private:
  static bool is_ident_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != ';' && c != ':' &&
           c != '{' && c != '}' && c != '#';
  }

  bool starts_arrow() const {
    return pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class QuiverParser {
  using Kind = QuiverLexer::Kind;
  using Token = QuiverLexer::Token;

public:
  explicit QuiverParser(std::string_view text) : lexer_(text) { shift(); }

  Quiver parse() {
    expect_keyword("quiver");
    const std::string name = expect(Kind::identifier, "quiver name").text;
    expect(Kind::lbrace, "'{'");
    expect_keyword("vertices");
    expect(Kind::colon, "':'");
    std::vector<std::string> vertices;
    std::vector<Token> vertex_tokens;
    while (current_.kind == Kind::identifier) {
      vertex_tokens.push_back(current_);
      vertices.push_back(current_.text);
      shift();
    }
    if (vertices.empty())
      throw parse_error("expected at least one vertex", current_.line, current_.column);
    expect(Kind::semicolon, "';'");
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (vertices[i] == vertices[j])
          throw parse_error("duplicate vertex '" + vertices[i] + "'",
                            vertex_tokens[i].line, vertex_tokens[i].column);
    Quiver skeleton(name, vertices, {});

    expect_keyword("arrows");
    expect(Kind::colon, "':'");
    std::vector<Arrow> arrows;
    while (current_.kind == Kind::identifier) {
      Token first = current_;
      shift();
      std::optional<std::string> label;
      Token source = first;
      if (current_.kind == Kind::colon) {
        shift();
        label = first.text;
        source = expect(Kind::identifier, "arrow source");
      }
      expect(Kind::arrow, "'->'");
      Token target = expect(Kind::identifier, "arrow target");
      expect(Kind::semicolon, "';'");
      arrows.push_back({label, resolve(skeleton, source), resolve(skeleton, target)});
    }
    expect(Kind::rbrace, "'}'");
    if (current_.kind != Kind::end)
      throw parse_error("trailing input after '}'", current_.line, current_.column);
    return Quiver(name, std::move(vertices), std::move(arrows));
  }

private:
  static VertexId resolve(const Quiver& skeleton, const Token& t) {
    if (auto v = skeleton.find(t.text)) return *v;
    throw parse_error("undeclared vertex '" + t.text + "'", t.line, t.column);
  }

  void shift() { current_ = lexer_.next(); }

  Token expect(Kind kind, const char* what) {
    if (current_.kind != kind) {
      const std::string got =
          current_.kind == Kind::end ? "end of input" : "'" + current_.text + "'";
      throw parse_error(std::string("expected ") + what + ", got " + got,
                        current_.line, current_.column);
    }
    Token t = current_;
    shift();
    return t;
  }

  void expect_keyword(const char* keyword) {
    if (current_.kind != Kind::identifier || current_.text != keyword) {
      throw parse_error(std::string("expected '") + keyword + "'", current_.line,
                        current_.column);
    }
    shift();
  }

  QuiverLexer lexer_;
  Token current_{};
};

} // namespace detail

inline Quiver quiver_from_json(const nlohmann::json& j) {
  try {
    std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
    Quiver skeleton(j.value("name", std::string("Q")), vertices, {});
    std::vector<Arrow> arrows;
    for (const auto& a : j.at("arrows")) {
      Arrow arrow;
      if (a.contains("label") && !a.at("label").is_null())
        arrow.label = a.at("label").get<std::string>();
      arrow.source = skeleton.require(a.at("source").get<std::string>());
      arrow.target = skeleton.require(a.at("target").get<std::string>());
      arrows.push_back(std::move(arrow));
    }
    return Quiver(skeleton.name(), std::move(vertices), std::move(arrows));
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("malformed quiver JSON: ") + e.what());
  }
}

inline nlohmann::json to_json(const Quiver& q) {
  nlohmann::json arrows = nlohmann::json::array();
  for (const auto& a : q.arrows()) {
    nlohmann::json entry;
    if (a.label) entry["label"] = *a.label;
    entry["source"] = q.vertex_name(a.source);
    entry["target"] = q.vertex_name(a.target);
    arrows.push_back(std::move(entry));
  }
  return {{"name", q.name()}, {"vertices", q.vertices()}, {"arrows", std::move(arrows)}};
}

/// Parses the DSL, or JSON when the first non-blank character is '{'.
inline Quiver parse_quiver(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw input_error(std::string("malformed quiver JSON: ") + e.what());
    }
    return quiver_from_json(j);
  }
  return detail::QuiverParser(text).parse();
}

inline std::string serialize_quiver(const Quiver& q) {
  std::string out = "quiver " + q.name() + " {\n  vertices:";
  for (const auto& v : q.vertices()) out += " " + v;
  out += ";\n  arrows:\n";
  for (const auto& a : q.arrows()) {
    out += "    ";
    if (a.label) out += *a.label + ": ";
    out += q.vertex_name(a.source) + " -> " + q.vertex_name(a.target) + ";\n";
  }
  out += "}\n";
  return out;
}

} // namespace phigap
