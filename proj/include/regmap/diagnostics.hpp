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

#ifndef REGMAP_DIAGNOSTICS_HPP_
#define REGMAP_DIAGNOSTICS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace regmap {

// A position in a source file. line and col are 1-based; 0 means unknown.
struct SourceLoc {
  std::string file;
  int line = 0;
  int col = 0;

  std::string str() const;
};

enum class Severity { kNote, kWarning, kError };

// Which pipeline phase raised a diagnostic. Used by the C API to pick a
// status code and by the CLI to pick an exit code.
enum class ErrorKind {
  kLexical,
  kParse,
  kResolve,
  kCollect,
  kAllocate,
  kVerify,
  kIo,
  kUsage,
};

struct Diagnostic {
  Severity severity = Severity::kError;
  ErrorKind kind = ErrorKind::kParse;
  SourceLoc loc;
  std::string message;

  // "file:line:col: error: message", omitting unknown location parts.
  std::string str() const;
};

using Diagnostics = std::vector<Diagnostic>;

class Error : public std::runtime_error {
 public:
  explicit Error(Diagnostic diag);
  Error(ErrorKind kind, SourceLoc loc, std::string message);
  Error(ErrorKind kind, std::string message);

  const Diagnostic& diagnostic() const { return diag_; }
  ErrorKind kind() const { return diag_.kind; }

 private:
  Diagnostic diag_;
};

// Appends a warning to `sink` when it is non-null.
void warn(Diagnostics* sink, ErrorKind kind, SourceLoc loc,
          std::string message);

}  // namespace regmap

#endif  // REGMAP_DIAGNOSTICS_HPP_
