#pragma once

#include <string>
#include <vector>

#include "sstt/span.hpp"
#include "sstt/term.hpp"

namespace sstt {

struct CodeSegment {
  std::string text;
  int startLine = 1;  // line of the first character in the original file
};

// For Markdown input, returns the contents of fenced blocks opened by exactly
// three backticks followed by "rzk", preserving original line numbers. Plain
// sources come back as a single segment.
std::vector<CodeSegment> extractLiterateBlocks(const std::string& text,
                                               bool isMarkdown,
                                               const std::string& file,
                                               std::vector<Diagnostic>& diags);

struct ParseResult {
  RawModule module;
  std::vector<Diagnostic> diagnostics;
};

ParseResult parseModule(const std::vector<CodeSegment>& segments,
                        const std::string& file);

// Convenience wrapper : extract (by extension) + parse.
ParseResult parseFileText(const std::string& text, const std::string& file);

// Parses a single standalone term (used by tests and the compute command).
TermPtr parseTermString(const std::string& text, std::vector<Diagnostic>& diags);

}  // namespace sstt
