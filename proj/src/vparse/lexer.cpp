// Copyright 2026 The regmap-gen Authors
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

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "regmap/vparse.hpp"

namespace regmap::vparse {
namespace {

constexpr auto kKeywords = std::to_array<std::string_view>({
    "always",      "and",        "assign",       "automatic",
    "begin",       "buf",        "bufif0",       "bufif1",
    "case",        "casex",      "casez",        "cmos",
    "deassign",    "default",    "defparam",     "disable",
    "edge",        "else",       "end",          "endcase",
    "endfunction", "endgenerate", "endmodule",   "endprimitive",
    "endspecify",  "endtable",   "endtask",      "event",
    "for",         "force",      "forever",      "fork",
    "function",    "generate",   "genvar",       "highz0",
    "highz1",      "if",         "ifnone",       "initial",
    "inout",       "input",      "integer",      "join",
    "large",       "localparam", "macromodule",  "medium",
    "module",      "nand",       "negedge",      "nmos",
    "nor",         "not",        "notif0",       "notif1",
    "or",          "output",     "parameter",    "pmos",
    "posedge",     "primitive",  "pull0",        "pull1",
    "pulldown",    "pullup",     "real",         "realtime",
    "reg",         "release",    "repeat",       "signed",
    "specify",     "specparam",  "strong0",      "strong1",
    "supply0",     "supply1",    "table",        "task",
    "time",        "tran",       "tri",          "tri0",
    "tri1",        "triand",     "trior",        "trireg",
    "unsigned",    "wait",       "wand",         "weak0",
    "weak1",       "while",      "wire",         "wor",
    "xnor",        "xor",
});

// Directives whose whole line is consumed.
constexpr auto kLineDirectives = std::to_array<std::string_view>({
    "define",         "undef",          "include",     "timescale",
    "default_nettype", "line",          "pragma",      "begin_keywords",
    "end_keywords",   "unconnected_drive", "nounconnected_drive",
    "resetall",
});

// Directives followed by one macro name.
constexpr auto kNameDirectives = std::to_array<std::string_view>({
    "ifdef", "ifndef", "elsif"});

constexpr auto kBareDirectives = std::to_array<std::string_view>({
    "else", "endif", "celldefine", "endcelldefine"});

// Longest first so maximal munch works by linear scan.
constexpr auto kOperators = std::to_array<std::string_view>({
    "<<<=", ">>>=", "===", "!==", "<<<", ">>>", "<<", ">>",
    "<=",   ">=",   "==",  "!=",  "&&",  "||",  "**", "~&",
    "~|",   "~^",   "^~",  "+:",  "-:",  "->",  "::", "=>",
});

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& arr,
              std::string_view s) {
  return std::find(arr.begin(), arr.end(), s) != arr.end();
}

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_base_char(char c) {
  switch (c) {
    case 'b': case 'B': case 'o': case 'O':
    case 'd': case 'D': case 'h': case 'H':
      return true;
    default:
      return false;
  }
}

bool is_based_digit(char c) {
  return std::isxdigit(static_cast<unsigned char>(c)) || c == '_' ||
         c == 'x' || c == 'X' || c == 'z' || c == 'Z' || c == '?';
}

class Lexer {
 public:
  Lexer(std::string_view text, std::string_view path)
      : text_(text), path_(path) {}

  std::vector<Token> run() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n' || c == ' ' || c == '\t' || c == '\r' || c == '\f' ||
          c == '\v') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        skip_to_eol();
      } else if (c == '/' && peek(1) == '*') {
        skip_block_comment();
      } else if (c == '"') {
        lex_string();
      } else if (c == '`') {
        lex_directive();
      } else if (is_ident_start(c) || c == '$') {
        lex_identifier();
      } else if (c == '\\') {
        lex_escaped_identifier();
      } else if (is_digit(c)) {
        lex_number();
      } else if (c == '\'' && is_base_char(peek(1))) {
        lex_number();
      } else if (c == '\'' && (peek(1) == 's' || peek(1) == 'S') &&
                 is_base_char(peek(2))) {
        lex_number();
      } else {
        lex_punct();
      }
    }
    return std::move(tokens_);
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void emit(TokenKind kind, std::size_t begin, int line, int col) {
    tokens_.push_back(
        Token{kind, std::string(text_.substr(begin, pos_ - begin)), line, col});
  }

  [[noreturn]] void fail(int line, int col, std::string message) const {
    throw Error(ErrorKind::kLexical, SourceLoc{std::string(path_), line, col},
                std::move(message));
  }

  void skip_to_eol() {
    while (pos_ < text_.size() && text_[pos_] != '\n') advance();
  }

  void skip_block_comment() {
    int line = line_, col = col_;
    advance(2);
    while (pos_ < text_.size()) {
      if (text_[pos_] == '*' && peek(1) == '/') {
        advance(2);
        return;
      }
      advance();
    }
    fail(line, col, "unterminated block comment");
  }

  void lex_string() {
    int line = line_, col = col_;
    std::size_t begin = pos_;
    advance();
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\\' && pos_ + 1 < text_.size()) {
        advance(2);
      } else if (c == '"') {
        advance();
        emit(TokenKind::kString, begin, line, col);
        return;
      } else if (c == '\n') {
        break;
      } else {
        advance();
      }
    }
    fail(line, col, "unterminated string literal");
  }

  void lex_identifier() {
    int line = line_, col = col_;
    std::size_t begin = pos_;
    advance();
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) advance();
    std::string_view word = text_.substr(begin, pos_ - begin);
    emit(is_keyword(word) ? TokenKind::kKeyword : TokenKind::kIdentifier,
         begin, line, col);
  }

  void lex_escaped_identifier() {
    int line = line_, col = col_;
    std::size_t begin = pos_;
    advance();
    while (pos_ < text_.size() &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      advance();
    }
    emit(TokenKind::kIdentifier, begin, line, col);
  }

  void lex_number() {
    int line = line_, col = col_;
    std::size_t begin = pos_;
    while (pos_ < text_.size() && (is_digit(text_[pos_]) || text_[pos_] == '_'))
      advance();
    if (peek(0) == '.' && is_digit(peek(1))) {
      advance();
      while (pos_ < text_.size() && (is_digit(text_[pos_]) || text_[pos_] == '_'))
        advance();
    }
    if ((peek(0) == 'e' || peek(0) == 'E') &&
        (is_digit(peek(1)) ||
         ((peek(1) == '+' || peek(1) == '-') && is_digit(peek(2))))) {
      advance(2);
      while (pos_ < text_.size() && is_digit(text_[pos_])) advance();
    }
    if (peek(0) == '\'') {
      std::size_t skip = (peek(1) == 's' || peek(1) == 'S') ? 2 : 1;
      if (is_base_char(peek(skip))) {
        advance(skip + 1);
        while (pos_ < text_.size() && is_based_digit(text_[pos_])) advance();
      }
    }
    emit(TokenKind::kNumber, begin, line, col);
  }

  void lex_directive() {
    int line = line_, col = col_;
    std::size_t begin = pos_;
    advance();
    std::size_t name_begin = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) advance();
    std::string_view name = text_.substr(name_begin, pos_ - name_begin);
    if (name.empty()) {
      emit(TokenKind::kPunct, begin, line, col);
      return;
    }
    if (name == "define") {
      // Body runs to the first newline not escaped by a backslash.
      while (pos_ < text_.size() && text_[pos_] != '\n') {
        if (text_[pos_] == '\\' && peek(1) == '\n') {
          advance(2);
        } else if (text_[pos_] == '\\' && peek(1) == '\r' && peek(2) == '\n') {
          advance(3);
        } else {
          advance();
        }
      }
      return;
    }
    if (contains(kLineDirectives, name)) {
      skip_to_eol();
      return;
    }
    if (contains(kNameDirectives, name)) {
      while (pos_ < text_.size() &&
             (text_[pos_] == ' ' || text_[pos_] == '\t')) {
        advance();
      }
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) advance();
      return;
    }
    if (contains(kBareDirectives, name)) return;
    emit(TokenKind::kMacroUse, begin, line, col);
  }

  void lex_punct() {
    int line = line_, col = col_;
    std::size_t begin = pos_;
    char c = text_[pos_];
    if (c == '(' && peek(1) == '*') {
      // `@(*)` and `@(* )` are sensitivity lists, not attributes.
      std::size_t look = 2;
      while (peek(look) == ' ' || peek(look) == '\t') ++look;
      if (peek(look) != ')') {
        advance(2);
        in_attribute_ = true;
        emit(TokenKind::kAttrOpen, begin, line, col);
        return;
      }
    }
    if (c == '*' && peek(1) == ')' && in_attribute_) {
      advance(2);
      in_attribute_ = false;
      emit(TokenKind::kAttrClose, begin, line, col);
      return;
    }
    std::string_view rest = text_.substr(pos_);
    for (std::string_view op : kOperators) {
      if (rest.starts_with(op)) {
        advance(op.size());
        emit(TokenKind::kPunct, begin, line, col);
        return;
      }
    }
    advance();
    emit(TokenKind::kPunct, begin, line, col);
  }

  std::string_view text_;
  std::string_view path_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  bool in_attribute_ = false;
  std::vector<Token> tokens_;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::kIdentifier: return "identifier";
    case TokenKind::kNumber: return "number";
    case TokenKind::kString: return "string";
    case TokenKind::kPunct: return "punctuation";
    case TokenKind::kAttrOpen: return "attribute-open";
    case TokenKind::kAttrClose: return "attribute-close";
    case TokenKind::kMacroUse: return "macro-use";
    case TokenKind::kKeyword: return "keyword";
  }
  return "?";
}

std::string normalize_newlines(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r') {
      out.push_back('\n');
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

bool is_keyword(std::string_view word) { return contains(kKeywords, word); }

std::vector<Token> tokenize(std::string_view text, std::string_view path) {
  return Lexer(text, path).run();
}

}  // namespace regmap::vparse
