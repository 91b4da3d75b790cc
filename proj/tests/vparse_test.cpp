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

#include "regmap/vparse.hpp"

#include <random>
#include <string>
#include <vector>

#include "filler.hpp"
#include "gtest/gtest.h"
#include "regmap/diagnostics.hpp"
#include "test_util.hpp"

namespace regmap::vparse {
namespace {

using ::regmap::testing::fixture_dir;
using ::regmap::testing::read_file;

std::vector<std::pair<TokenKind, std::string>> kinds_and_text(
    const std::vector<Token>& tokens) {
  std::vector<std::pair<TokenKind, std::string>> out;
  for (const auto& t : tokens) out.emplace_back(t.kind, t.text);
  return out;
}

// Byte offset of 1-based (line, col) in `text`.
std::size_t offset_of(std::string_view text, int line, int col) {
  std::size_t pos = 0;
  for (int l = 1; l < line; ++l) pos = text.find('\n', pos) + 1;
  return pos + static_cast<std::size_t>(col - 1);
}

void expect_reslices(std::string_view text) {
  for (const Token& tok : tokenize(text)) {
    ASSERT_GE(tok.line, 1);
    ASSERT_GE(tok.col, 1);
    EXPECT_EQ(text.substr(offset_of(text, tok.line, tok.col), tok.text.size()),
              tok.text)
        << "token at " << tok.line << ":" << tok.col;
  }
}

TEST(TokenizeTest, AttributeGroup) {
  auto tokens = tokenize("(* external *)");
  EXPECT_EQ(kinds_and_text(tokens),
            (std::vector<std::pair<TokenKind, std::string>>{
                {TokenKind::kAttrOpen, "(*"},
                {TokenKind::kIdentifier, "external"},
                {TokenKind::kAttrClose, "*)"}}));
}

TEST(TokenizeTest, EmptyInput) { EXPECT_TRUE(tokenize("").empty()); }

TEST(TokenizeTest, PortLineDropsComment) {
  auto tokens = tokenize("input [31:0] iva, // c");
  EXPECT_EQ(kinds_and_text(tokens),
            (std::vector<std::pair<TokenKind, std::string>>{
                {TokenKind::kKeyword, "input"},
                {TokenKind::kPunct, "["},
                {TokenKind::kNumber, "31"},
                {TokenKind::kPunct, ":"},
                {TokenKind::kNumber, "0"},
                {TokenKind::kPunct, "]"},
                {TokenKind::kIdentifier, "iva"},
                {TokenKind::kPunct, ","}}));
}

TEST(TokenizeTest, StarParenIsPunctuation) {
  for (const char* text : {"always @(*) x = 1;", "always @( * ) x = 1;",
                           "foo u (*);"}) {
    for (const Token& t : tokenize(text)) {
      EXPECT_NE(t.kind, TokenKind::kAttrOpen) << text;
      EXPECT_NE(t.kind, TokenKind::kAttrClose) << text;
    }
  }
}

TEST(TokenizeTest, MacroUseKeepsBacktick) {
  auto tokens = tokenize(".clk(clk) `AUTOMATIC_prng );");
  ASSERT_EQ(tokens.size(), 8u);
  EXPECT_EQ(tokens[5].kind, TokenKind::kMacroUse);
  EXPECT_EQ(tokens[5].text, "`AUTOMATIC_prng");
}

TEST(TokenizeTest, DirectivesProduceNoTokens) {
  auto tokens = tokenize(
      "`include \"a.vh\"\n`define X 1 + \\\n 2\n`ifdef FOO\nwire a;\n`endif\n"
      "`timescale 1ns/1ps\n");
  EXPECT_EQ(kinds_and_text(tokens),
            (std::vector<std::pair<TokenKind, std::string>>{
                {TokenKind::kKeyword, "wire"},
                {TokenKind::kIdentifier, "a"},
                {TokenKind::kPunct, ";"}}));
}

TEST(TokenizeTest, CommentsAdvancePosition) {
  auto tokens = tokenize("/* a\n b */ x // y\n  z");
  ASSERT_EQ(tokens.size(), 2u);
  EXPECT_EQ(tokens[0].line, 2);
  EXPECT_EQ(tokens[0].col, 7);
  EXPECT_EQ(tokens[1].line, 3);
  EXPECT_EQ(tokens[1].col, 3);
}

TEST(TokenizeTest, Numbers) {
  auto tokens = tokenize("8'hFF 4'b10x1 'd3 32'sd5 12");
  ASSERT_EQ(tokens.size(), 5u);
  for (const auto& t : tokens) EXPECT_EQ(t.kind, TokenKind::kNumber);
  EXPECT_EQ(tokens[1].text, "4'b10x1");
}

TEST(TokenizeTest, UnterminatedStringReportsPosition) {
  try {
    tokenize("wire a;\n  x = \"abc\n", "f.v");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kLexical);
    EXPECT_EQ(e.diagnostic().loc.file, "f.v");
    EXPECT_EQ(e.diagnostic().loc.line, 2);
    EXPECT_EQ(e.diagnostic().loc.col, 7);
  }
}

TEST(TokenizeTest, UnterminatedBlockComment) {
  try {
    tokenize("a /* b\n c");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kLexical);
    EXPECT_EQ(e.diagnostic().loc.line, 1);
    EXPECT_EQ(e.diagnostic().loc.col, 3);
  }
}

TEST(TokenizeTest, CrlfNormalized) {
  EXPECT_EQ(normalize_newlines("a\r\nb\rc\n"), "a\nb\nc\n");
}

TEST(TokenizeTest, TokensResliceFixtures) {
  expect_reslices(read_file(fixture_dir() / "prng" / "prng.v"));
  expect_reslices(read_file(fixture_dir() / "prng" / "station.v"));
}

TEST(TokenizeTest, TokensResliceRandomFiller) {
  std::mt19937 rng(1234);
  const std::string base = read_file(fixture_dir() / "prng" / "prng.v");
  for (int i = 0; i < 50; ++i) {
    expect_reslices(::regmap::testing::inject_filler(base, 10, rng));
  }
}

AttributeSet attrs_of(std::string_view text) {
  auto tokens = tokenize(text);
  std::size_t pos = 0;
  AttributeSet set = parse_attributes(tokens, pos);
  EXPECT_EQ(pos, tokens.size());
  return set;
}

TEST(ParseAttributesTest, BareKey) {
  AttributeSet set = attrs_of("(* external *)");
  ASSERT_EQ(set.size(), 1u);
  EXPECT_EQ(set.entries()[0].key, "external");
  EXPECT_FALSE(set.entries()[0].value.has_value());
}

TEST(ParseAttributesTest, KeyAndValueInOrder) {
  AttributeSet set = attrs_of("(* external, signal_type=\"plus-we\" *)");
  ASSERT_EQ(set.size(), 2u);
  EXPECT_EQ(set.entries()[0].key, "external");
  EXPECT_FALSE(set.entries()[0].value.has_value());
  EXPECT_EQ(set.entries()[1].key, "signal_type");
  EXPECT_EQ(set.entries()[1].value, "plus-we");
}

TEST(ParseAttributesTest, EmptyGroup) { EXPECT_TRUE(attrs_of("(* *)").empty()); }

TEST(ParseAttributesTest, AdjacentGroupsMerge) {
  AttributeSet set = attrs_of("(* external *) (* description=\"a \\\"b\\\"\" *)");
  ASSERT_EQ(set.size(), 2u);
  EXPECT_EQ(set.find("description")->value, "a \"b\"");
}

TEST(ParseAttributesTest, DecimalValue) {
  EXPECT_EQ(attrs_of("(* gcnt=4 *)").find("gcnt")->value, "4");
}

TEST(ParseAttributesTest, Errors) {
  for (const char* text : {"(* external", "(* a, a *)", "(* a=b *)",
                           "(* a=\"x\", a=\"y\" *)", "(* a= *)", "(* , *)"}) {
    auto tokens = tokenize(text);
    std::size_t pos = 0;
    EXPECT_THROW(parse_attributes(tokens, pos), Error) << text;
  }
}

TEST(ParseSourceTest, PrngListing) {
  SourceUnit unit = parse_source(read_file(fixture_dir() / "prng" / "prng.v"),
                                 "prng.v");
  ASSERT_EQ(unit.modules.size(), 1u);
  const ModuleDecl& m = unit.modules[0];
  EXPECT_EQ(m.name, "prng");
  struct Want {
    const char* name;
    Direction dir;
    int width;
    std::vector<std::string> keys;
  };
  const std::vector<Want> want = {
      {"clk", Direction::kInput, 1, {}},
      {"rnda", Direction::kOutput, 32, {}},
      {"rndb", Direction::kOutput, 32, {}},
      {"run", Direction::kInput, 1, {"external"}},
      {"iva", Direction::kInput, 32, {"external", "signal_type"}},
      {"iva_we", Direction::kInput, 1, {}},
  };
  ASSERT_EQ(m.ports.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    const PortDecl& p = m.ports[i];
    EXPECT_EQ(p.name, want[i].name);
    EXPECT_EQ(p.direction, want[i].dir);
    EXPECT_EQ(p.width(), want[i].width) << p.name;
    std::vector<std::string> keys;
    for (const auto& e : p.attrs.entries()) keys.push_back(e.key);
    EXPECT_EQ(keys, want[i].keys) << p.name;
  }
  EXPECT_EQ(m.ports[4].attrs.find("signal_type")->value, "plus-we");
  EXPECT_TRUE(m.instances.empty());
}

TEST(ParseSourceTest, DegenerateModule) {
  SourceUnit unit = parse_source("module m(); endmodule", "m.v");
  ASSERT_EQ(unit.modules.size(), 1u);
  EXPECT_EQ(unit.modules[0].name, "m");
  EXPECT_TRUE(unit.modules[0].ports.empty());
  EXPECT_TRUE(unit.modules[0].instances.empty());
}

TEST(ParseSourceTest, ModuleWithoutPortList) {
  SourceUnit unit = parse_source("module m; wire a; endmodule", "m.v");
  ASSERT_EQ(unit.modules.size(), 1u);
  EXPECT_TRUE(unit.modules[0].ports.empty());
}

TEST(ParseSourceTest, AttributedInstance) {
  SourceUnit unit = parse_source(
      read_file(fixture_dir() / "prng" / "station.v"), "station.v");
  ASSERT_EQ(unit.modules.size(), 1u);
  const ModuleDecl& m = unit.modules[0];
  ASSERT_EQ(m.instances.size(), 1u);
  const InstanceDecl& inst = m.instances[0];
  EXPECT_EQ(inst.module_name, "prng");
  EXPECT_EQ(inst.instance_name, "prng");
  ASSERT_EQ(inst.attrs.size(), 1u);
  EXPECT_TRUE(inst.attrs.contains("lb_automatic"));
  EXPECT_TRUE(inst.has_automatic_macro);
  EXPECT_FALSE(inst.gvar.has_value());
  EXPECT_FALSE(inst.gcnt.has_value());
  EXPECT_EQ(inst.line, 14);
}

TEST(ParseSourceTest, ReplicatedInstance) {
  SourceUnit unit = parse_source(
      "module t(input clk);\n"
      "(* lb_automatic, gvar=\"i\", gcnt=4 *)\n"
      "chan #(.W(8)) ch [3:0] (.clk(clk) `AUTOMATIC_ch);\n"
      "endmodule\n",
      "t.v");
  const InstanceDecl& inst = unit.modules[0].instances.at(0);
  EXPECT_EQ(inst.gvar, "i");
  EXPECT_EQ(inst.gcnt, 4);
}

TEST(ParseSourceTest, MacrolessInstance) {
  SourceUnit unit = parse_source(
      "module t(input clk);\n(* lb_automatic *) a u (.clk(clk));\nendmodule\n",
      "t.v");
  EXPECT_FALSE(unit.modules[0].instances.at(0).has_automatic_macro);
}

TEST(ParseSourceTest, PortDetails) {
  SourceUnit unit = parse_source(
      "module m(input wire signed [7:0] a, b, output reg [0:3] c,\n"
      "  inout d, input integer e);\nendmodule\n",
      "m.v");
  const auto& ports = unit.modules[0].ports;
  ASSERT_EQ(ports.size(), 5u);
  EXPECT_TRUE(ports[0].is_signed);
  EXPECT_EQ(ports[1].name, "b");
  EXPECT_TRUE(ports[1].is_signed);
  EXPECT_EQ(ports[1].width(), 8);
  EXPECT_EQ(ports[2].width(), 4);
  EXPECT_EQ(ports[3].direction, Direction::kInout);
  EXPECT_EQ(ports[4].width(), 32);
  EXPECT_TRUE(ports[4].is_signed);
}

TEST(ParseSourceTest, ParameterPortList) {
  SourceUnit unit = parse_source(
      "module m #(parameter W = 8, parameter [3:0] D = (2+2))(\n"
      "  (* external *) input [7:0] a\n);\nendmodule\n",
      "m.v");
  ASSERT_EQ(unit.modules[0].ports.size(), 1u);
  EXPECT_TRUE(unit.modules[0].ports[0].attrs.contains("external"));
}

TEST(ParseSourceTest, AttributeBindsToNextPortOnly) {
  SourceUnit unit = parse_source(
      "module m(\n (* external *) input a,\n input b,\n"
      " (* external *) input c\n);\nendmodule\n",
      "m.v");
  const auto& ports = unit.modules[0].ports;
  EXPECT_TRUE(ports[0].attrs.contains("external"));
  EXPECT_TRUE(ports[1].attrs.empty());
  EXPECT_TRUE(ports[2].attrs.contains("external"));
}

TEST(ParseSourceTest, AttributeDoesNotCrossStatement) {
  SourceUnit unit = parse_source(
      "module m(input clk);\n(* keep *) wire w;\nfoo u (.a(w));\n"
      "(* full_case *) always @(*) x = 1;\nbar v (.a(w));\nendmodule\n",
      "m.v");
  EXPECT_TRUE(unit.modules[0].instances.empty());
  EXPECT_EQ(unit.modules[0].plain_instances.size(), 2u);
}

TEST(ParseSourceTest, UnknownAttributeWarns) {
  Diagnostics warnings;
  parse_source("module m((* externl *) input a);\nendmodule\n", "m.v",
               &warnings);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_EQ(warnings[0].severity, Severity::kWarning);
  EXPECT_NE(warnings[0].message.find("externl"), std::string::npos);
}

TEST(ParseSourceTest, SeveralModulesInOneFile) {
  SourceUnit unit = parse_source(
      "module a(input x);\nendmodule\nmodule b(output y);\nendmodule\n", "a.v");
  ASSERT_EQ(unit.modules.size(), 2u);
  EXPECT_NE(unit.find_module("b"), nullptr);
  EXPECT_EQ(unit.find_module("c"), nullptr);
}

struct BadSource {
  const char* name;
  const char* text;
  int line;
};

class ParseErrorTest : public ::testing::TestWithParam<BadSource> {};

TEST_P(ParseErrorTest, ReportsPositionInsideFile) {
  const BadSource& bad = GetParam();
  try {
    parse_source(bad.text, "bad.v");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    const SourceLoc& loc = e.diagnostic().loc;
    EXPECT_EQ(loc.file, "bad.v");
    EXPECT_EQ(loc.line, bad.line) << e.what();
    EXPECT_GE(loc.col, 1);
    // The position lies within the file.
    int lines = 1;
    for (const char* c = bad.text; *c; ++c) lines += *c == '\n';
    EXPECT_LE(loc.line, lines);
  }
}

INSTANTIATE_TEST_SUITE_P(
    Errors, ParseErrorTest,
    ::testing::Values(
        BadSource{"MissingEndmodule", "module m(input a);\nwire b;\n", 1},
        BadSource{"NestedModule",
                  "module m(input a);\nmodule n(); endmodule\nendmodule\n", 1},
        BadSource{"NonAnsi", "module m(a, b);\ninput a;\nendmodule\n", 1},
        BadSource{"MalformedAttributedPort",
                  "module m(\n(* external *) input [a:0] x\n);\nendmodule\n",
                  2},
        BadSource{"AttributeBeforeCloseParen",
                  "module m(input a,\n(* external *)\n);\nendmodule\n", 3},
        BadSource{"DuplicatePort",
                  "module m(input a,\n input a);\nendmodule\n", 2},
        BadSource{"InstanceWithoutSemicolon",
                  "module m(input a);\n(* lb_automatic *) x u (.a(a))\n"
                  "endmodule\n",
                  3},
        BadSource{"GvarWithoutGcnt",
                  "module m(input a);\n(* lb_automatic, gvar=\"i\" *)\n"
                  "x u (.a(a));\nendmodule\n",
                  2},
        BadSource{"UnbalancedBegin",
                  "module m(input a);\nalways @(a) begin\nendmodule\n", 3},
        BadSource{"StrayEnd", "module m(input a);\nend\nendmodule\n", 2},
        BadSource{"DuplicateModule",
                  "module m();\nendmodule\nmodule m();\nendmodule\n", 3},
        BadSource{"UnpackedPort",
                  "module m(input [7:0] a [0:3]);\nendmodule\n", 1}),
    [](const ::testing::TestParamInfo<BadSource>& info) {
      return std::string(info.param.name);
    });

TEST(ParseSourceTest, TrailingCommaTolerated) {
  SourceUnit unit = parse_source("module m(input a, input b,);\nendmodule\n",
                                 "m.v");
  EXPECT_EQ(unit.modules[0].ports.size(), 2u);
}

TEST(ParseSourceTest, CrlfSourceParses) {
  SourceUnit unit = parse_source(
      "module m(\r\n  (* external *)\r\n  input [3:0] a\r\n);\r\nendmodule\r\n",
      "m.v");
  ASSERT_EQ(unit.modules[0].ports.size(), 1u);
  EXPECT_EQ(unit.modules[0].ports[0].line, 3);
}

TEST(PrintNormalizedTest, IdempotentOnFixtures) {
  for (const char* name : {"prng.v", "station.v"}) {
    SourceUnit first =
        parse_source(read_file(fixture_dir() / "prng" / name), name);
    SourceUnit second = parse_source(print_normalized(first), name);
    EXPECT_TRUE(first.structurally_equal(second)) << print_normalized(first);
    EXPECT_EQ(print_normalized(first), print_normalized(second));
  }
}

// Random module header with attributed ports and instances.
std::string random_module(std::mt19937& rng, int id) {
  auto pick = [&](int k) {
    return std::uniform_int_distribution<int>(0, k - 1)(rng);
  };
  std::string text = "module m" + std::to_string(id) + "(\n";
  const int ports = pick(6);
  for (int p = 0; p < ports; ++p) {
    if (pick(2)) {
      text += "  (* external";
      if (pick(2)) text += ", signal_type=\"plus-we\"";
      if (pick(3) == 0) text += ", description=\"d|" + std::to_string(p) + "\"";
      if (pick(4) == 0) text += ", cd=\"dsp\"";
      text += " *)\n";
    }
    static const char* kDirs[] = {"input", "output", "inout"};
    text += std::string("  ") + kDirs[pick(3)];
    if (pick(2)) text += " wire";
    if (pick(3) == 0) text += " signed";
    if (pick(2)) {
      text += " [" + std::to_string(pick(32)) + ":" + std::to_string(pick(4)) +
              "]";
    }
    text += " p" + std::to_string(p);
    text += p + 1 < ports ? ",\n" : (pick(2) ? ",\n" : "\n");
  }
  text += ");\n";
  const int insts = pick(4);
  for (int i = 0; i < insts; ++i) {
    text += "(* lb_automatic";
    if (pick(3) == 0) text += ", gvar=\"g\", gcnt=" + std::to_string(1 + pick(4));
    text += " *)\nsub" + std::to_string(pick(3)) + " u" + std::to_string(i) +
            " (.clk(clk)" + (pick(2) ? " `AUTOMATIC_u" + std::to_string(i) : "") +
            ");\n";
  }
  return text + "endmodule\n";
}

TEST(PrintNormalizedTest, IdempotentOnRandomHeaders) {
  std::mt19937 rng(42);
  for (int i = 0; i < 200; ++i) {
    std::string text;
    for (int m = 0; m < 3; ++m) text += random_module(rng, m);
    SourceUnit first = parse_source(text, "r.v");
    std::string printed = print_normalized(first);
    SourceUnit second = parse_source(printed, "r.v");
    ASSERT_TRUE(first.structurally_equal(second))
        << "input:\n" << text << "printed:\n" << printed;
  }
}

TEST(SkippingSafetyTest, FillerNeverChangesPortsOrInstances) {
  std::mt19937 rng(7);
  for (const char* name : {"prng.v", "station.v"}) {
    const std::string base = read_file(fixture_dir() / "prng" / name);
    const SourceUnit reference = parse_source(base, name);
    for (int round = 0; round < 100; ++round) {
      const std::string text =
          ::regmap::testing::inject_filler(base, 1 + round % 20, rng);
      SourceUnit unit = parse_source(text, name);
      ASSERT_TRUE(reference.structurally_equal(unit)) << text;
    }
  }
}

}  // namespace
}  // namespace regmap::vparse
