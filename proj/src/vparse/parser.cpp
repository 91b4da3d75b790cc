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
#include <charconv>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "regmap/vparse.hpp"

namespace regmap::vparse {
namespace {

constexpr auto kKnownAttributes = std::to_array<std::string_view>(
    {"external", "signal_type", "cd", "description", "lb_automatic", "gvar",
     "gcnt", "aw"});

// Net kinds allowed between a direction and the port range.
constexpr auto kNetTypes = std::to_array<std::string_view>(
    {"wire", "reg", "tri", "tri0", "tri1", "triand", "trior", "trireg",
     "wand", "wor", "supply0", "supply1", "integer"});

std::string unescape_string(std::string_view quoted) {
  std::string_view body = quoted.substr(1, quoted.size() - 2);
  std::string out;
  out.reserve(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] != '\\' || i + 1 == body.size()) {
      out.push_back(body[i]);
      continue;
    }
    char c = body[++i];
    switch (c) {
      case 'n': out.push_back('\n'); break;
      case 't': out.push_back('\t'); break;
      default: out.push_back(c); break;
    }
  }
  return out;
}

std::optional<int> parse_decimal(std::string_view text) {
  std::string digits;
  for (char c : text) {
    if (c == '_') continue;
    if (c < '0' || c > '9') return std::nullopt;
    digits.push_back(c);
  }
  if (digits.empty()) return std::nullopt;
  int value = 0;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size())
    return std::nullopt;
  return value;
}

// Block keywords that must nest properly inside a module body.
std::optional<std::string_view> closer_for(std::string_view opener) {
  if (opener == "begin") return "end";
  if (opener == "case" || opener == "casex" || opener == "casez")
    return "endcase";
  if (opener == "fork") return "join";
  if (opener == "function") return "endfunction";
  if (opener == "task") return "endtask";
  if (opener == "generate") return "endgenerate";
  if (opener == "specify") return "endspecify";
  if (opener == "table") return "endtable";
  return std::nullopt;
}

bool is_block_closer(std::string_view word) {
  return word == "end" || word == "endcase" || word == "join" ||
         word == "endfunction" || word == "endtask" ||
         word == "endgenerate" || word == "endspecify" || word == "endtable";
}

std::optional<char> bracket_closer(std::string_view punct) {
  if (punct == "(") return ')';
  if (punct == "[") return ']';
  if (punct == "{") return '}';
  return std::nullopt;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string path, Diagnostics* warnings)
      : tokens_(std::move(tokens)), path_(std::move(path)),
        warnings_(warnings) {}

  SourceUnit run() {
    SourceUnit unit;
    unit.path = path_;
    while (!at_end()) {
      const Token& tok = cur();
      if (tok.is_keyword("module") || tok.is_keyword("macromodule")) {
        ModuleDecl mod = parse_module();
        if (unit.find_module(mod.name) != nullptr) {
          throw Error(ErrorKind::kParse, loc(mod.line, mod.col),
                      "duplicate module '" + mod.name + "' in file");
        }
        unit.modules.push_back(std::move(mod));
      } else if (tok.is_keyword("endmodule")) {
        fail(tok, "'endmodule' without matching 'module'");
      } else if (tok.kind == TokenKind::kAttrOpen) {
        // Attributes outside modules are for other tools.
        parse_attributes(tokens_, pos_, path_);
      } else {
        ++pos_;
      }
    }
    return unit;
  }

 private:
  bool at_end() const { return pos_ >= tokens_.size(); }

  const Token& cur() const { return tokens_[pos_]; }

  const Token* peek(std::size_t ahead = 0) const {
    return pos_ + ahead < tokens_.size() ? &tokens_[pos_ + ahead] : nullptr;
  }

  SourceLoc loc(int line, int col) const { return SourceLoc{path_, line, col}; }

  SourceLoc loc_of(const Token& tok) const { return loc(tok.line, tok.col); }

  // Location for "unexpected end of file" style errors.
  SourceLoc end_loc() const {
    if (tokens_.empty()) return loc(1, 1);
    const Token& last = tokens_.back();
    return loc(last.line, last.col);
  }

  [[noreturn]] void fail(const Token& tok, std::string message) const {
    throw Error(ErrorKind::kParse, loc_of(tok), std::move(message));
  }

  [[noreturn]] void fail_eof(std::string message) const {
    throw Error(ErrorKind::kParse, end_loc(), std::move(message));
  }

  const Token& expect_punct(std::string_view text, std::string_view context) {
    if (at_end()) {
      fail_eof("expected '" + std::string(text) + "' " + std::string(context) +
               ", found end of file");
    }
    if (!cur().is_punct(text)) {
      fail(cur(), "expected '" + std::string(text) + "' " +
                      std::string(context) + ", found '" + cur().text + "'");
    }
    return tokens_[pos_++];
  }

  AttributeSet parse_attribute_run() {
    return parse_attributes(tokens_, pos_, path_);
  }

  void check_known_keys(const AttributeSet& attrs, const Token& at) {
    for (const auto& entry : attrs.entries()) {
      if (!is_known_attribute(entry.key)) {
        warn(warnings_, ErrorKind::kParse, loc_of(at),
             "unknown attribute '" + entry.key + "' ignored");
      }
    }
  }

  // Skips a balanced (), [] or {} group starting at the current opener.
  // Calls on_token for every token strictly inside the group.
  template <typename Fn>
  void skip_group(Fn&& on_token) {
    const Token& open = cur();
    std::vector<std::pair<char, const Token*>> stack;
    stack.emplace_back(*bracket_closer(open.text), &open);
    ++pos_;
    while (!at_end()) {
      const Token& tok = cur();
      if (tok.kind == TokenKind::kPunct) {
        if (auto closer = bracket_closer(tok.text)) {
          stack.emplace_back(*closer, &tok);
        } else if (tok.text.size() == 1 &&
                   (tok.text[0] == ')' || tok.text[0] == ']' ||
                    tok.text[0] == '}')) {
          if (tok.text[0] != stack.back().first) {
            fail(tok, "mismatched '" + tok.text + "' (opened at " +
                          loc_of(*stack.back().second).str() + ")");
          }
          stack.pop_back();
          if (stack.empty()) {
            ++pos_;
            return;
          }
        }
      }
      on_token(tok);
      ++pos_;
    }
    throw Error(ErrorKind::kParse, loc_of(open),
                "unbalanced '" + open.text + "'");
  }

  void skip_group() {
    skip_group([](const Token&) {});
  }

  ModuleDecl parse_module() {
    const Token& kw = cur();
    ++pos_;
    ModuleDecl mod;
    mod.line = kw.line;
    mod.col = kw.col;
    if (at_end() || cur().kind != TokenKind::kIdentifier) {
      if (at_end()) fail_eof("expected module name");
      fail(cur(), "expected module name after '" + kw.text + "'");
    }
    mod.name = cur().text;
    ++pos_;
    if (!at_end() && cur().is_punct("#")) {
      ++pos_;
      if (at_end()) fail_eof("expected '(' after '#'");
      if (!cur().is_punct("(")) {
        fail(cur(), "expected '(' after '#' in module header");
      }
      skip_group();
    }
    if (!at_end() && cur().is_punct("(")) {
      parse_port_list(mod);
    }
    expect_punct(";", "after module header");
    parse_body(mod, kw);
    return mod;
  }

  void parse_port_list(ModuleDecl& mod) {
    ++pos_;  // (
    std::optional<PortDecl> previous;
    bool after_comma = false;
    while (true) {
      if (at_end()) fail_eof("unterminated port list of module '" + mod.name + "'");
      const Token& start = cur();
      AttributeSet attrs;
      if (start.kind == TokenKind::kAttrOpen) {
        attrs = parse_attribute_run();
        if (at_end()) fail_eof("expected port declaration after attribute");
      }
      const Token& tok = cur();
      if (tok.is_punct(")") && attrs.empty() &&
          (after_comma || mod.ports.empty())) {
        // Empty list, or the trailing comma the tool tolerates.
        ++pos_;
        return;
      }
      PortDecl port;
      if (tok.is_keyword("input") || tok.is_keyword("output") ||
          tok.is_keyword("inout")) {
        port = parse_port_head();
      } else if (tok.kind == TokenKind::kIdentifier && previous) {
        port = *previous;
        port.attrs = AttributeSet{};
      } else if (tok.kind == TokenKind::kIdentifier) {
        fail(tok, "non-ANSI port list in module '" + mod.name +
                      "' is not supported; declare direction and width in "
                      "the header");
      } else if (!attrs.empty()) {
        fail(tok, "malformed port declaration following attribute");
      } else {
        fail(tok, "malformed port declaration near '" + tok.text + "'");
      }
      if (at_end()) fail_eof("expected port name");
      const Token& name = cur();
      if (name.kind != TokenKind::kIdentifier) {
        fail(name, attrs.empty()
                       ? "expected port name, found '" + name.text + "'"
                       : "malformed port declaration following attribute: "
                         "expected port name, found '" + name.text + "'");
      }
      ++pos_;
      port.name = name.text;
      port.line = name.line;
      port.col = name.col;
      port.attrs = std::move(attrs);
      if (mod.find_port(port.name) != nullptr) {
        fail(name, "duplicate port '" + port.name + "' in module '" +
                       mod.name + "'");
      }
      check_known_keys(port.attrs, start);
      previous = port;
      mod.ports.push_back(std::move(port));
      if (at_end()) fail_eof("unterminated port list");
      if (cur().is_punct(",")) {
        ++pos_;
        after_comma = true;
        continue;
      }
      if (cur().is_punct(")")) {
        ++pos_;
        return;
      }
      if (cur().is_punct("[")) {
        fail(cur(), "unpacked dimensions on port '" + mod.ports.back().name +
                        "' are not supported");
      }
      fail(cur(), "expected ',' or ')' after port '" + mod.ports.back().name +
                      "', found '" + cur().text + "'");
    }
  }

  PortDecl parse_port_head() {
    PortDecl port;
    const Token& dir = cur();
    port.direction = dir.text == "input"    ? Direction::kInput
                     : dir.text == "output" ? Direction::kOutput
                                            : Direction::kInout;
    ++pos_;
    if (!at_end() && cur().kind == TokenKind::kKeyword &&
        std::find(kNetTypes.begin(), kNetTypes.end(), cur().text) !=
            kNetTypes.end()) {
      if (cur().text == "integer") {
        port.msb = 31;
        port.lsb = 0;
        port.is_signed = true;
      }
      ++pos_;
    }
    if (!at_end() && cur().is_keyword("signed")) {
      port.is_signed = true;
      ++pos_;
    }
    if (!at_end() && cur().is_punct("[")) {
      ++pos_;
      port.msb = parse_range_bound();
      expect_punct(":", "in port range");
      port.lsb = parse_range_bound();
      expect_punct("]", "closing port range");
    }
    return port;
  }

  int parse_range_bound() {
    if (at_end()) fail_eof("expected range bound");
    const Token& tok = cur();
    std::optional<int> value;
    if (tok.kind == TokenKind::kNumber) value = parse_decimal(tok.text);
    if (!value) {
      fail(tok, "port range bound '" + tok.text +
                    "' is not an integer literal (expressions and macros "
                    "are not evaluated)");
    }
    ++pos_;
    return *value;
  }

  void note_macro(ModuleDecl& mod, const Token& tok) {
    if (tok.kind == TokenKind::kMacroUse &&
        tok.text.starts_with("`AUTOMATIC_")) {
      mod.automatic_macros.push_back(tok.text.substr(1));
    }
  }

  // Tries to read `module_name [#(...)] instance_name [range] (` at pos.
  // On success pos is left on the opening parenthesis of the connections.
  bool match_instantiation_head(std::string& module_name,
                                std::string& instance_name,
                                const Token*& name_tok) {
    std::size_t save = pos_;
    if (at_end() || cur().kind != TokenKind::kIdentifier) return false;
    module_name = cur().text;
    ++pos_;
    if (!at_end() && cur().is_punct("#")) {
      ++pos_;
      if (at_end()) {
        pos_ = save;
        return false;
      }
      if (cur().is_punct("(")) {
        skip_group();
      } else {
        ++pos_;
      }
    }
    if (at_end() || cur().kind != TokenKind::kIdentifier) {
      pos_ = save;
      return false;
    }
    name_tok = &cur();
    instance_name = cur().text;
    ++pos_;
    if (!at_end() && cur().is_punct("[")) skip_group();
    if (at_end() || !cur().is_punct("(")) {
      pos_ = save;
      return false;
    }
    return true;
  }

  void parse_attributed_instance(ModuleDecl& mod, AttributeSet attrs,
                                 const Token& attr_tok) {
    std::string module_name, instance_name;
    const Token* name_tok = nullptr;
    std::size_t head = pos_;
    if (!match_instantiation_head(module_name, instance_name, name_tok)) {
      // Attribute on something other than an instantiation: ignored.
      pos_ = head;
      return;
    }
    InstanceDecl inst;
    inst.module_name = module_name;
    inst.instance_name = instance_name;
    inst.line = tokens_[head].line;
    inst.col = tokens_[head].col;
    const std::string exact = "`AUTOMATIC_" + instance_name;
    skip_group([&](const Token& tok) {
      note_macro(mod, tok);
      if (tok.kind == TokenKind::kMacroUse &&
          (tok.text == exact || tok.text.starts_with(exact + "_"))) {
        inst.has_automatic_macro = true;
      }
    });
    if (at_end()) {
      fail_eof("attributed instantiation '" + instance_name +
               "' has no closing ';'");
    }
    if (cur().is_punct(",")) {
      fail(cur(), "attributed instantiation '" + instance_name +
                      "' declares several instances; split them");
    }
    if (!cur().is_punct(";")) {
      fail(cur(), "attributed instantiation '" + instance_name +
                      "' has no closing ';'");
    }
    ++pos_;

    check_known_keys(attrs, attr_tok);
    const auto* gvar = attrs.find("gvar");
    const auto* gcnt = attrs.find("gcnt");
    if ((gvar == nullptr) != (gcnt == nullptr)) {
      fail(attr_tok, "instance '" + instance_name +
                         "': gvar and gcnt must be given together");
    }
    if (gvar != nullptr) {
      if (!gvar->value || gvar->value->empty()) {
        fail(attr_tok, "instance '" + instance_name + "': gvar needs a name");
      }
      auto count = gcnt->value ? parse_decimal(*gcnt->value) : std::nullopt;
      if (!count || *count < 1) {
        fail(attr_tok, "instance '" + instance_name +
                           "': gcnt must be a positive integer");
      }
      inst.gvar = *gvar->value;
      inst.gcnt = *count;
    }
    inst.attrs = std::move(attrs);
    for (const auto& other : mod.instances) {
      if (other.instance_name == inst.instance_name) {
        fail(*name_tok, "duplicate instance name '" + instance_name + "'");
      }
    }
    mod.instances.push_back(std::move(inst));
  }

  void parse_body(ModuleDecl& mod, const Token& module_kw) {
    std::vector<const Token*> blocks;
    std::vector<std::pair<char, const Token*>> brackets;
    while (true) {
      if (at_end()) {
        throw Error(ErrorKind::kParse, loc_of(module_kw),
                    "module '" + mod.name + "' has no matching 'endmodule'");
      }
      const Token& tok = cur();
      switch (tok.kind) {
        case TokenKind::kKeyword: {
          if (tok.text == "endmodule") {
            if (!blocks.empty()) {
              fail(tok, "'endmodule' while '" + blocks.back()->text +
                            "' at " + loc_of(*blocks.back()).str() +
                            " is still open");
            }
            if (!brackets.empty()) {
              fail(tok, "'endmodule' while '" + brackets.back().second->text +
                            "' at " + loc_of(*brackets.back().second).str() +
                            " is still open");
            }
            ++pos_;
            return;
          }
          if (tok.text == "module" || tok.text == "macromodule") {
            throw Error(ErrorKind::kParse, loc_of(module_kw),
                        "module '" + mod.name +
                            "' has no matching 'endmodule' before the next "
                            "module at " + loc_of(tok).str());
          }
          if (closer_for(tok.text)) {
            blocks.push_back(&tok);
          } else if (is_block_closer(tok.text)) {
            if (blocks.empty() || *closer_for(blocks.back()->text) != tok.text) {
              fail(tok, "unbalanced '" + tok.text + "'");
            }
            blocks.pop_back();
          }
          ++pos_;
          break;
        }
        case TokenKind::kIdentifier: {
          // join_any / join_none close a fork like join does.
          if ((tok.text == "join_any" || tok.text == "join_none") &&
              !blocks.empty() && blocks.back()->text == "fork") {
            blocks.pop_back();
            ++pos_;
            break;
          }
          if (brackets.empty()) {
            std::string module_name, instance_name;
            const Token* name_tok = nullptr;
            std::size_t head = pos_;
            if (match_instantiation_head(module_name, instance_name,
                                         name_tok)) {
              // Connections are then scanned as ordinary tokens.
              mod.plain_instances.push_back(PlainInstance{
                  module_name, instance_name, tokens_[head].line,
                  tokens_[head].col});
              break;
            }
          }
          ++pos_;
          break;
        }
        case TokenKind::kAttrOpen: {
          const Token& attr_tok = tok;
          AttributeSet attrs = parse_attribute_run();
          if (brackets.empty()) {
            parse_attributed_instance(mod, std::move(attrs), attr_tok);
          }
          break;
        }
        case TokenKind::kMacroUse:
          note_macro(mod, tok);
          ++pos_;
          break;
        case TokenKind::kPunct: {
          if (auto closer = bracket_closer(tok.text)) {
            brackets.emplace_back(*closer, &tok);
          } else if (tok.text == ")" || tok.text == "]" || tok.text == "}") {
            if (brackets.empty() || brackets.back().first != tok.text[0]) {
              fail(tok, "unbalanced '" + tok.text + "'");
            }
            brackets.pop_back();
          }
          ++pos_;
          break;
        }
        default:
          ++pos_;
          break;
      }
    }
  }

  std::vector<Token> tokens_;
  std::string path_;
  Diagnostics* warnings_;
  std::size_t pos_ = 0;
};

}  // namespace

bool AttributeSet::add(std::string key, std::optional<std::string> value) {
  if (contains(key)) return false;
  entries_.push_back(Entry{std::move(key), std::move(value)});
  return true;
}

bool AttributeSet::contains(std::string_view key) const {
  return find(key) != nullptr;
}

const AttributeSet::Entry* AttributeSet::find(std::string_view key) const {
  for (const auto& entry : entries_) {
    if (entry.key == key) return &entry;
  }
  return nullptr;
}

bool is_known_attribute(std::string_view key) {
  return std::find(kKnownAttributes.begin(), kKnownAttributes.end(), key) !=
         kKnownAttributes.end();
}

AttributeSet parse_attributes(std::span<const Token> tokens, std::size_t& pos,
                              std::string_view path) {
  auto loc = [&](const Token& tok) {
    return SourceLoc{std::string(path), tok.line, tok.col};
  };
  AttributeSet attrs;
  while (pos < tokens.size() && tokens[pos].kind == TokenKind::kAttrOpen) {
    const Token& open = tokens[pos++];
    bool expect_key = true;
    while (true) {
      if (pos >= tokens.size()) {
        throw Error(ErrorKind::kParse, loc(open),
                    "attribute list is missing '*)'");
      }
      const Token& tok = tokens[pos];
      if (tok.kind == TokenKind::kAttrClose) {
        ++pos;
        break;
      }
      if (!expect_key) {
        if (!tok.is_punct(",")) {
          throw Error(ErrorKind::kParse, loc(tok),
                      "expected ',' or '*)' in attribute list, found '" +
                          tok.text + "'");
        }
        ++pos;
        expect_key = true;
        continue;
      }
      if (tok.kind != TokenKind::kIdentifier &&
          tok.kind != TokenKind::kKeyword) {
        throw Error(ErrorKind::kParse, loc(tok),
                    "expected attribute name, found '" + tok.text + "'");
      }
      std::string key = tok.text;
      ++pos;
      std::optional<std::string> value;
      if (pos < tokens.size() && tokens[pos].is_punct("=")) {
        ++pos;
        if (pos >= tokens.size()) {
          throw Error(ErrorKind::kParse, loc(open),
                      "attribute list is missing '*)'");
        }
        const Token& val = tokens[pos];
        if (val.kind == TokenKind::kString) {
          value = unescape_string(val.text);
        } else if (val.kind == TokenKind::kNumber &&
                   parse_decimal(val.text).has_value()) {
          value = val.text;
        } else {
          throw Error(ErrorKind::kParse, loc(val),
                      "attribute '" + key +
                          "' value must be a string or decimal literal, "
                          "found '" + val.text + "'");
        }
        ++pos;
      }
      if (!attrs.add(key, std::move(value))) {
        throw Error(ErrorKind::kParse, loc(tok),
                    "duplicate attribute '" + key + "'");
      }
      expect_key = false;
    }
  }
  return attrs;
}

std::string_view to_string(Direction dir) {
  switch (dir) {
    case Direction::kInput: return "input";
    case Direction::kOutput: return "output";
    case Direction::kInout: return "inout";
  }
  return "?";
}

int PortDecl::width() const {
  if (!msb || !lsb) return 1;
  return std::abs(*msb - *lsb) + 1;
}

bool PortDecl::structurally_equal(const PortDecl& other) const {
  return name == other.name && direction == other.direction &&
         width() == other.width() && is_signed == other.is_signed &&
         attrs == other.attrs;
}

bool InstanceDecl::structurally_equal(const InstanceDecl& other) const {
  return module_name == other.module_name &&
         instance_name == other.instance_name && attrs == other.attrs &&
         has_automatic_macro == other.has_automatic_macro &&
         gvar == other.gvar && gcnt == other.gcnt;
}

const PortDecl* ModuleDecl::find_port(std::string_view port) const {
  for (const auto& p : ports) {
    if (p.name == port) return &p;
  }
  return nullptr;
}

bool ModuleDecl::structurally_equal(const ModuleDecl& other) const {
  return name == other.name &&
         std::equal(ports.begin(), ports.end(), other.ports.begin(),
                    other.ports.end(),
                    [](const PortDecl& a, const PortDecl& b) {
                      return a.structurally_equal(b);
                    }) &&
         std::equal(instances.begin(), instances.end(),
                    other.instances.begin(), other.instances.end(),
                    [](const InstanceDecl& a, const InstanceDecl& b) {
                      return a.structurally_equal(b);
                    });
}

const ModuleDecl* SourceUnit::find_module(std::string_view name) const {
  for (const auto& m : modules) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

bool SourceUnit::structurally_equal(const SourceUnit& other) const {
  return std::equal(modules.begin(), modules.end(), other.modules.begin(),
                    other.modules.end(),
                    [](const ModuleDecl& a, const ModuleDecl& b) {
                      return a.structurally_equal(b);
                    });
}

SourceUnit parse_source(std::string_view text, std::string path,
                        Diagnostics* warnings) {
  std::string normalized = normalize_newlines(text);
  return Parser(tokenize(normalized, path), std::move(path), warnings).run();
}

}  // namespace regmap::vparse
