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

#ifndef REGMAP_TESTS_FILLER_HPP_
#define REGMAP_TESTS_FILLER_HPP_

#include <cstddef>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace regmap::testing {

// One random module-body statement that carries no attributes and
// instantiates no known module. Balanced by construction. `id` keeps
// generated names distinct.
inline std::string random_statement(std::mt19937& rng, int id) {
  const std::string n = std::to_string(id);
  auto pick = [&](int k) {
    return std::uniform_int_distribution<int>(0, k - 1)(rng);
  };
  switch (pick(14)) {
    case 0:
      return "assign fill_w" + n + " = fill_a & ~fill_b;";
    case 1:
      return "always @(posedge clk) begin\n  if (fill_en" + n +
             ") fill_q <= fill_d;\n  else begin fill_q <= 0; end\nend";
    case 2:
      return "always @(*) begin\n  case (fill_sel" + n +
             ")\n    2'd0: fill_y = fill_a;\n    2'b1x: begin fill_y = "
             "fill_b; end\n    default: fill_y = 8'hff;\n  endcase\nend";
    case 3:
      return "function [7:0] fill_f" + n +
             ";\n  input [7:0] v;\n  begin\n    fill_f" + n +
             " = v + 8'd1;\n  end\nendfunction";
    case 4:
      return "wire [3:0] fill_c" + n + " = {2'b01, 2'b10};";
    case 5:
      return "reg [31:0] fill_mem" + n + " [0:15];";
    case 6:
      return "initial $display(\"endmodule (* external *) %d\", " + n + ");";
    case 7:
      return "// (* lb_automatic *) fake fake" + n + " (`AUTOMATIC_fake);";
    case 8:
      return "/* (* external *) input [3:0] ghost" + n + "; endmodule */";
    case 9:
      return "generate for (gi" + n + " = 0; gi" + n + " < 4; gi" + n +
             " = gi" + n + " + 1) begin : g_fill" + n +
             "\n  assign fill_x[gi" + n + "] = fill_z[gi" + n +
             "];\nend endgenerate";
    case 10:
      return "localparam FILL_P" + n + " = (3 + 4) * 2;";
    case 11:
      return "task fill_t" + n + ";\n  begin\n    fork #1; #2; join\n  end\n"
             "endtask";
    case 12:
      return "fill_fifo #(.W(8), .D(16)) u_fill" + n +
             " (.clk(clk), .d({fill_a, fill_b}), .q());";
    default:
      return "always @(negedge clk) fill_r" + n +
             " <= fill_r" + n + " ? {fill_a[3:0], 4'h0} : fill_b;";
  }
}

// Inserts `count` random statements at blank lines that follow the first
// `);` line (the end of the port list) in `source`.
inline std::string inject_filler(std::string_view source, int count,
                                 std::mt19937& rng) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= source.size()) {
    std::size_t nl = source.find('\n', start);
    if (nl == std::string_view::npos) nl = source.size();
    lines.emplace_back(source.substr(start, nl - start));
    start = nl + 1;
  }
  std::vector<std::size_t> slots;
  bool in_body = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!in_body && lines[i].starts_with(");")) {
      in_body = true;
      continue;
    }
    if (in_body && lines[i].empty()) slots.push_back(i);
    if (lines[i].starts_with("endmodule")) break;
  }
  if (slots.empty()) return std::string(source);
  std::vector<std::vector<std::string>> extra(lines.size());
  for (int k = 0; k < count; ++k) {
    std::size_t slot = slots[std::uniform_int_distribution<std::size_t>(
        0, slots.size() - 1)(rng)];
    extra[slot].push_back(random_statement(rng, k));
  }
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (const auto& stmt : extra[i]) out += "\n" + stmt + "\n";
    out += lines[i];
    if (i + 1 < lines.size()) out += "\n";
  }
  return out;
}

}  // namespace regmap::testing

#endif  // REGMAP_TESTS_FILLER_HPP_
