#pragma once

#include <string>
#include <vector>

#include "sstt/span.hpp"

namespace sstt {

enum class Tok : uint8_t {
  Directive,  // #lang, #def, ...
  Ident,
  Sort1,      // 1
  Sort2,      // 2
  Vertex0,    // 0_2
  Vertex1,    // 1_2
  Star,       // the point of cube 1
  LParen, RParen, LBracket, RBracket, LBrace, RBrace,
  Comma, Colon, ColonEq, Semicolon, Bar,
  Arrow, MapsTo, Backslash,
  EqSign,     // propositional =
  TopeEq,     // judgmental/cube equality
  TopeLeq,
  Wedge, Vee, TopTope, BotTope,
  Times,
  SigmaHead,  // Σ
  KwU, KwCube, KwTope, KwUnitT, KwUnitElem,
  KwRefl, KwReflAnn,  // refl and refl_{
  KwIdJ, KwRecOr, KwRecBot, KwFirst, KwSecond,
  EndOfInput,
  Error,
};

struct Token {
  Tok kind;
  std::string text;
  int line = 0;
  int col = 0;
};

// Tokenizes one extracted code segment. `startLine` positions diagnostics in
// the original (possibly literate) file.
std::vector<Token> tokenize(const std::string& text, int startLine,
                            const std::string& file,
                            std::vector<Diagnostic>& diags);

}  // namespace sstt
