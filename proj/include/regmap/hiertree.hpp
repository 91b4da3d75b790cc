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

#ifndef REGMAP_HIERTREE_HPP_
#define REGMAP_HIERTREE_HPP_

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "regmap/diagnostics.hpp"
#include "regmap/vparse.hpp"

namespace regmap::hiertree {

struct ModuleRef {
  std::shared_ptr<const vparse::SourceUnit> unit;
  const vparse::ModuleDecl* decl = nullptr;
  std::filesystem::path file;
};

// Modules reachable from the top file through lb_automatic instantiations.
struct ModuleGraph {
  std::string top;
  std::filesystem::path top_file;
  std::map<std::string, ModuleRef> modules;
  // (parent, child) module pairs in discovery order, deduplicated.
  std::vector<std::pair<std::string, std::string>> edges;
  // Every file read, in order. Each file appears once.
  std::vector<std::filesystem::path> parsed_files;

  const ModuleRef* find(std::string_view name) const;
  const ModuleRef& at(std::string_view name) const;
};

// Locates `<module>.v` for every lb_automatic instantiation, beginning with
// the directory of the referencing file and then `search_dirs` in order.
// The top module is the one named after the top file's stem, or the file's
// first module when no module carries that name.
ModuleGraph resolve_modules(const std::filesystem::path& top_path,
                            std::span<const std::filesystem::path> search_dirs,
                            Diagnostics* warnings = nullptr);

struct InstanceNode {
  std::string module_name;
  std::string instance_name;
  // Underscore-joined instance path; empty for the top node.
  std::string prefix;
  // Instance names from the top, replicas suffixed "[k]". Empty for top.
  std::vector<std::string> path;
  std::optional<std::string> gvar;
  std::optional<int> gcnt;
  std::optional<int> replica;
  bool has_automatic_macro = false;
  std::string site_file;  // file holding the instantiation
  int line = 0;
  int col = 0;
  std::vector<InstanceNode> children;

  bool is_top() const { return path.empty(); }
  // "top.a.b[1]"-style hierarchical path for diagnostics.
  std::string path_string(std::string_view top) const;
};

// Expands the graph into a tree following lb_automatic instantiations in
// source order. Throws Error(kResolve) when two distinct instance paths
// produce the same prefix.
InstanceNode build_instance_tree(const ModuleGraph& graph,
                                 std::string_view top);

// Pre-order walk.
template <typename Fn>
void for_each_node(const InstanceNode& node, Fn&& fn) {
  fn(node);
  for (const auto& child : node.children) for_each_node(child, fn);
}

}  // namespace regmap::hiertree

#endif  // REGMAP_HIERTREE_HPP_
