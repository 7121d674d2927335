#pragma once

#include <string>
#include <vector>

namespace sstt {

// 1-based source positions; a default-constructed span means "no location".
struct SourceSpan {
  std::string file;
  int startLine = 0;
  int startCol = 0;
  int endLine = 0;
  int endCol = 0;

  bool valid() const { return startLine > 0; }

  bool encloses(const SourceSpan& other) const {
    if (!valid() || !other.valid()) return false;
    bool startOk = startLine < other.startLine ||
                   (startLine == other.startLine && startCol <= other.startCol);
    bool endOk = endLine > other.endLine ||
                 (endLine == other.endLine && endCol >= other.endCol);
    return startOk && endOk;
  }
};

// Stable diagnostic codes; these are part of the JSON output contract.
enum class DiagCode {
  Mismatch,        // E-MISMATCH
  Boundary,        // E-BOUNDARY
  Tope,            // E-TOPE
  Unbound,         // E-UNBOUND
  Universe,        // E-UNIVERSE
  ClauseConflict,  // E-CLAUSE-CONFLICT
  Fuel,            // E-FUEL
  Parse,           // E-PARSE
};

const char* diagCodeName(DiagCode code);

struct Diagnostic {
  SourceSpan span;
  DiagCode code = DiagCode::Parse;
  std::string message;
  std::vector<std::string> trace;  // innermost frame last
};

}  // namespace sstt
