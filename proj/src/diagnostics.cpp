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

#include "regmap/diagnostics.hpp"

#include <utility>

namespace regmap {

std::string SourceLoc::str() const {
  std::string out = file;
  if (line > 0) {
    out += ":" + std::to_string(line);
    if (col > 0) out += ":" + std::to_string(col);
  }
  return out;
}

std::string Diagnostic::str() const {
  std::string out;
  std::string where = loc.str();
  if (!where.empty()) out = where + ": ";
  switch (severity) {
    case Severity::kNote:
      out += "note: ";
      break;
    case Severity::kWarning:
      out += "warning: ";
      break;
    case Severity::kError:
      out += "error: ";
      break;
  }
  return out + message;
}

Error::Error(Diagnostic diag)
    : std::runtime_error(diag.str()), diag_(std::move(diag)) {}

Error::Error(ErrorKind kind, SourceLoc loc, std::string message)
    : Error(Diagnostic{Severity::kError, kind, std::move(loc),
                       std::move(message)}) {}

Error::Error(ErrorKind kind, std::string message)
    : Error(kind, SourceLoc{}, std::move(message)) {}

void warn(Diagnostics* sink, ErrorKind kind, SourceLoc loc,
          std::string message) {
  if (sink == nullptr) return;
  sink->push_back(
      Diagnostic{Severity::kWarning, kind, std::move(loc), std::move(message)});
}

}  // namespace regmap
