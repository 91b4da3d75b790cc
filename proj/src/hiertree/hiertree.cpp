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

#include "regmap/hiertree.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace regmap::hiertree {
namespace fs = std::filesystem;
namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kResolve, SourceLoc{path.string()},
                "cannot read file");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path canonical_or_self(const fs::path& path) {
  std::error_code ec;
  fs::path canon = fs::weakly_canonical(path, ec);
  return ec ? path : canon;
}

std::string join_prefix(const std::string& prefix, const std::string& name) {
  return prefix.empty() ? name : prefix + "_" + name;
}

bool is_automatic(const vparse::InstanceDecl& inst) {
  return inst.attrs.contains("lb_automatic");
}

class Resolver {
 public:
  Resolver(std::span<const fs::path> search_dirs, Diagnostics* warnings)
      : search_dirs_(search_dirs.begin(), search_dirs.end()),
        warnings_(warnings) {}

  ModuleGraph run(const fs::path& top_path) {
    ModuleGraph graph;
    graph.top_file = top_path;
    auto unit = load(top_path, graph);
    if (unit->modules.empty()) {
      throw Error(ErrorKind::kResolve, SourceLoc{top_path.string()},
                  "top file defines no module");
    }
    const vparse::ModuleDecl* top = unit->find_module(top_path.stem().string());
    if (top == nullptr) top = &unit->modules.front();
    graph.top = top->name;
    graph.modules[top->name] = ModuleRef{unit, top, top_path};

    std::vector<std::string> worklist{top->name};
    for (std::size_t next = 0; next < worklist.size(); ++next) {
      const ModuleRef& parent = graph.modules.at(worklist[next]);
      for (const auto& inst : parent.decl->instances) {
        if (!is_automatic(inst)) continue;
        bool is_new = resolve_instance(graph, parent, inst);
        if (is_new) worklist.push_back(inst.module_name);
        std::pair<std::string, std::string> edge{parent.decl->name,
                                                 inst.module_name};
        if (std::find(graph.edges.begin(), graph.edges.end(), edge) ==
            graph.edges.end()) {
          graph.edges.push_back(std::move(edge));
        }
      }
    }
    check_acyclic(graph);
    return graph;
  }

 private:
  std::shared_ptr<const vparse::SourceUnit> load(const fs::path& path,
                                                 ModuleGraph& graph) {
    fs::path key = canonical_or_self(path);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    auto unit = std::make_shared<const vparse::SourceUnit>(
        vparse::parse_source(read_file(path), path.string(), warnings_));
    graph.parsed_files.push_back(path);
    cache_.emplace(key, unit);
    return unit;
  }

  const std::string& contents(const fs::path& path) {
    fs::path key = canonical_or_self(path);
    auto it = contents_.find(key);
    if (it == contents_.end()) {
      it = contents_.emplace(key, read_file(path)).first;
    }
    return it->second;
  }

  // Returns true when the module was added to the graph.
  bool resolve_instance(ModuleGraph& graph, const ModuleRef& parent,
                        const vparse::InstanceDecl& inst) {
    SourceLoc where{parent.file.string(), inst.line, inst.col};
    const std::string file_name = inst.module_name + ".v";

    std::vector<fs::path> dirs;
    dirs.push_back(parent.file.parent_path());
    dirs.insert(dirs.end(), search_dirs_.begin(), search_dirs_.end());

    std::vector<fs::path> hits;
    std::set<fs::path> seen;
    for (const auto& dir : dirs) {
      fs::path candidate = dir / file_name;
      std::error_code ec;
      if (!fs::is_regular_file(candidate, ec)) continue;
      if (seen.insert(canonical_or_self(candidate)).second) {
        hits.push_back(candidate);
      }
    }
    if (hits.empty()) {
      std::string searched;
      for (const auto& dir : dirs) {
        if (!searched.empty()) searched += ", ";
        searched += dir.empty() ? "." : dir.string();
      }
      throw Error(ErrorKind::kResolve, where,
                  "cannot find module '" + inst.module_name +
                      "' for instance '" + inst.instance_name +
                      "' (looked for " + file_name + " in " + searched + ")");
    }
    for (std::size_t i = 1; i < hits.size(); ++i) {
      if (contents(hits[i]) != contents(hits[0])) {
        throw Error(ErrorKind::kResolve, where,
                    "module '" + inst.module_name + "' is ambiguous: " +
                        hits[0].string() + " and " + hits[i].string() +
                        " differ");
      }
    }

    if (const ModuleRef* known = graph.find(inst.module_name)) {
      if (canonical_or_self(known->file) != canonical_or_self(hits[0]) &&
          contents(known->file) != contents(hits[0])) {
        throw Error(ErrorKind::kResolve, where,
                    "module '" + inst.module_name + "' is ambiguous: " +
                        known->file.string() + " and " + hits[0].string() +
                        " differ");
      }
      return false;
    }

    auto unit = load(hits[0], graph);
    const vparse::ModuleDecl* decl = unit->find_module(inst.module_name);
    if (decl == nullptr) {
      throw Error(ErrorKind::kResolve, where,
                  hits[0].string() + " does not define module '" +
                      inst.module_name + "'");
    }
    graph.modules[inst.module_name] = ModuleRef{unit, decl, hits[0]};
    return true;
  }

  static void check_acyclic(const ModuleGraph& graph) {
    std::map<std::string, int> state;  // 0 unvisited, 1 on stack, 2 done
    std::vector<std::string> stack;
    std::function<void(const std::string&)> visit =
        [&](const std::string& name) {
          state[name] = 1;
          stack.push_back(name);
          for (const auto& [from, to] : graph.edges) {
            if (from != name) continue;
            if (state[to] == 1) {
              std::string cycle;
              auto start = std::find(stack.begin(), stack.end(), to);
              for (auto it = start; it != stack.end(); ++it) cycle += *it + " -> ";
              cycle += to;
              const ModuleRef& ref = graph.at(name);
              throw Error(ErrorKind::kResolve,
                          SourceLoc{ref.file.string(), ref.decl->line,
                                    ref.decl->col},
                          "recursive instantiation: " + cycle);
            }
            if (state[to] == 0) visit(to);
          }
          stack.pop_back();
          state[name] = 2;
        };
    visit(graph.top);
  }

  std::vector<fs::path> search_dirs_;
  Diagnostics* warnings_;
  std::map<fs::path, std::shared_ptr<const vparse::SourceUnit>> cache_;
  std::map<fs::path, std::string> contents_;
};

class TreeBuilder {
 public:
  TreeBuilder(const ModuleGraph& graph, std::string_view top)
      : graph_(graph), top_(top) {}

  InstanceNode run() {
    const ModuleRef* top = graph_.find(top_);
    if (top == nullptr) {
      throw Error(ErrorKind::kResolve,
                  "top module '" + top_ + "' is not in the module graph");
    }
    InstanceNode root;
    root.module_name = top_;
    root.site_file = top->file.string();
    root.line = top->decl->line;
    root.col = top->decl->col;
    std::vector<std::string> active{top_};
    expand(root, active);
    return root;
  }

 private:
  void expand(InstanceNode& node, std::vector<std::string>& active) {
    const ModuleRef& ref = graph_.at(node.module_name);
    for (const auto& inst : ref.decl->instances) {
      if (!is_automatic(inst)) continue;
      if (std::find(active.begin(), active.end(), inst.module_name) !=
          active.end()) {
        throw Error(ErrorKind::kResolve,
                    SourceLoc{ref.file.string(), inst.line, inst.col},
                    "recursive instantiation of '" + inst.module_name + "'");
      }
      int copies = inst.gcnt.value_or(1);
      for (int k = 0; k < copies; ++k) {
        InstanceNode child;
        child.module_name = inst.module_name;
        child.instance_name = inst.instance_name;
        child.gvar = inst.gvar;
        child.gcnt = inst.gcnt;
        child.has_automatic_macro = inst.has_automatic_macro;
        child.site_file = ref.file.string();
        child.line = inst.line;
        child.col = inst.col;
        child.path = node.path;
        if (inst.gcnt) {
          child.replica = k;
          child.prefix = join_prefix(node.prefix, inst.instance_name + "_" +
                                                      std::to_string(k));
          child.path.push_back(inst.instance_name + "[" + std::to_string(k) +
                               "]");
        } else {
          child.prefix = join_prefix(node.prefix, inst.instance_name);
          child.path.push_back(inst.instance_name);
        }
        claim_prefix(child, ref, inst);
        active.push_back(inst.module_name);
        expand(child, active);
        active.pop_back();
        node.children.push_back(std::move(child));
      }
    }
  }

  void claim_prefix(const InstanceNode& node, const ModuleRef& ref,
                    const vparse::InstanceDecl& inst) {
    std::string path = node.path_string(top_);
    auto [it, inserted] = prefixes_.emplace(node.prefix, path);
    if (!inserted) {
      throw Error(ErrorKind::kResolve,
                  SourceLoc{ref.file.string(), inst.line, inst.col},
                  "instance paths " + it->second + " and " + path +
                      " both map to prefix '" + node.prefix + "'");
    }
  }

  const ModuleGraph& graph_;
  std::string top_;
  std::map<std::string, std::string> prefixes_;
};

}  // namespace

const ModuleRef* ModuleGraph::find(std::string_view name) const {
  auto it = modules.find(std::string(name));
  return it == modules.end() ? nullptr : &it->second;
}

const ModuleRef& ModuleGraph::at(std::string_view name) const {
  const ModuleRef* ref = find(name);
  if (ref == nullptr) {
    throw Error(ErrorKind::kResolve,
                "module '" + std::string(name) + "' is not in the graph");
  }
  return *ref;
}

ModuleGraph resolve_modules(const fs::path& top_path,
                            std::span<const fs::path> search_dirs,
                            Diagnostics* warnings) {
  return Resolver(search_dirs, warnings).run(top_path);
}

std::string InstanceNode::path_string(std::string_view top) const {
  std::string out(top);
  for (const auto& part : path) out += "." + part;
  return out;
}

InstanceNode build_instance_tree(const ModuleGraph& graph,
                                 std::string_view top) {
  return TreeBuilder(graph, top).run();
}

}  // namespace regmap::hiertree
