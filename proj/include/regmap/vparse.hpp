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

#ifndef REGMAP_VPARSE_HPP_
#define REGMAP_VPARSE_HPP_

// Scanner for the slice of Verilog-2001 that carries register metadata:
// ANSI module headers with attributed ports, attributed instantiations and
// `AUTOMATIC_* macro use sites. Module bodies are otherwise skipped.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "regmap/diagnostics.hpp"

namespace regmap::vparse {

enum class TokenKind {
  kIdentifier,
  kNumber,
  kString,
  kPunct,
  kAttrOpen,   // (*
  kAttrClose,  // *)
  kMacroUse,   // `NAME, text includes the backtick
  kKeyword,
};

struct Token {
  TokenKind kind;
  std::string text;
  int line = 0;
  int col = 0;

  bool is(TokenKind k, std::string_view t) const {
    return kind == k && text == t;
  }
  bool is_punct(std::string_view t) const { return is(TokenKind::kPunct, t); }
  bool is_keyword(std::string_view t) const {
    return is(TokenKind::kKeyword, t);
  }
};

std::string_view to_string(TokenKind kind);

// Converts CRLF and lone CR line endings to LF.
std::string normalize_newlines(std::string_view text);

bool is_keyword(std::string_view word);

// Splits `text` into tokens. Comments and compiler directives other than
// plain macro uses produce no tokens. Throws Error(kLexical) on an
// unterminated string or block comment.
std::vector<Token> tokenize(std::string_view text,
                            std::string_view path = "<input>");

// Ordered attribute list from one or more adjacent (* ... *) groups.
class AttributeSet {
 public:
  struct Entry {
    std::string key;
    std::optional<std::string> value;
  };

  // Returns false when `key` is already present.
  bool add(std::string key, std::optional<std::string> value);

  bool contains(std::string_view key) const;
  // nullptr when the key is absent; otherwise the entry (whose value may
  // itself be absent for a bare key).
  const Entry* find(std::string_view key) const;

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  friend bool operator==(const AttributeSet&, const AttributeSet&) = default;

 private:
  std::vector<Entry> entries_;
};

inline bool operator==(const AttributeSet::Entry& a,
                       const AttributeSet::Entry& b) {
  return a.key == b.key && a.value == b.value;
}

// Keys the tool understands; anything else draws a warning.
bool is_known_attribute(std::string_view key);

// Parses a run of attribute groups starting at tokens[pos], which must be
// an attribute-open token. On return pos is past the last `*)`.
AttributeSet parse_attributes(std::span<const Token> tokens, std::size_t& pos,
                              std::string_view path = "<input>");

enum class Direction { kInput, kOutput, kInout };

std::string_view to_string(Direction dir);

struct PortDecl {
  std::string name;
  Direction direction = Direction::kInput;
  std::optional<int> msb;
  std::optional<int> lsb;
  bool is_signed = false;
  AttributeSet attrs;
  int line = 0;
  int col = 0;

  int width() const;
  bool structurally_equal(const PortDecl& other) const;
};

struct InstanceDecl {
  std::string module_name;
  std::string instance_name;
  AttributeSet attrs;
  bool has_automatic_macro = false;
  std::optional<std::string> gvar;
  std::optional<int> gcnt;
  int line = 0;
  int col = 0;

  bool structurally_equal(const InstanceDecl& other) const;
};

// An instantiation without attributes. Only recorded so later phases can
// spot registers that would be unreachable.
struct PlainInstance {
  std::string module_name;
  std::string instance_name;
  int line = 0;
  int col = 0;
};

struct ModuleDecl {
  std::string name;
  std::vector<PortDecl> ports;
  std::vector<InstanceDecl> instances;
  std::vector<PlainInstance> plain_instances;
  std::vector<std::string> automatic_macros;  // names without the backtick
  int line = 0;
  int col = 0;

  const PortDecl* find_port(std::string_view port) const;
  bool structurally_equal(const ModuleDecl& other) const;
};

struct SourceUnit {
  std::string path;
  std::vector<ModuleDecl> modules;

  const ModuleDecl* find_module(std::string_view name) const;
  // Compares modules, ports and attributed instances; ignores positions.
  bool structurally_equal(const SourceUnit& other) const;
};

// Parses one file. Unknown attribute keys are reported to `warnings`.
SourceUnit parse_source(std::string_view text, std::string path,
                        Diagnostics* warnings = nullptr);

// Renders module headers and attributed instantiations back to Verilog in
// a canonical layout. Re-parsing the result yields a structurally equal unit.
std::string print_normalized(const SourceUnit& unit);

}  // namespace regmap::vparse

#endif  // REGMAP_VPARSE_HPP_
