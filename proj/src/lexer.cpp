#include "lexer.hpp"

#include <cstring>

namespace sstt {

namespace {

bool startsWith(const std::string& s, size_t pos, const char* pat) {
  return s.compare(pos, std::strlen(pat), pat) == 0;
}

// Characters that always terminate an identifier.
bool isDelim(char c) {
  switch (c) {
    case '(': case ')': case '[': case ']': case '{': case '}':
    case ',': case ':': case ';': case '\\': case '=': case '<':
    case '|': case '*': case '/': case ' ': case '\t': case '\r':
    case '\n':
      return true;
    default:
      return false;
  }
}

// Multibyte sequences that terminate an identifier (reserved operators).
const char* kReservedUtf8[] = {
    "\xe2\x86\x92",  // →
    "\xe2\x86\xa6",  // ↦
    "\xe2\x89\xa1",  // ≡
    "\xe2\x89\xa4",  // ≤
    "\xe2\x88\xa7",  // ∧
    "\xe2\x88\xa8",  // ∨
    "\xe2\x8a\xa4",  // ⊤
    "\xe2\x8a\xa5",  // ⊥
    "\xc3\x97",      // ×
    "\xce\xa3",      // Σ
    "\xe2\x8b\x86",  // ⋆
};

bool isReservedUtf8(const std::string& s, size_t pos) {
  for (const char* pat : kReservedUtf8)
    if (startsWith(s, pos, pat)) return true;
  return false;
}

}  // namespace

std::vector<Token> tokenize(const std::string& text, int startLine,
                            const std::string& file,
                            std::vector<Diagnostic>& diags) {
  std::vector<Token> out;
  size_t pos = 0;
  int line = startLine;
  int col = 1;

  auto advance = [&](size_t n) {
    for (size_t i = 0; i < n; ++i) {
      if (text[pos] == '\n') {
        ++line;
        col = 1;
      } else if ((text[pos] & 0xc0) != 0x80) {
        ++col;  // count code points, not bytes
      }
      ++pos;
    }
  };
  auto push = [&](Tok k, std::string t, int l, int c) {
    out.push_back({k, std::move(t), l, c});
  };
  auto sym = [&](Tok k, const char* t) {
    push(k, t, line, col);
    advance(std::strlen(t));
  };

  while (pos < text.size()) {
    char c = text[pos];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (startsWith(text, pos, "--")) {  // line comment
      while (pos < text.size() && text[pos] != '\n') advance(1);
      continue;
    }
    int tl = line, tc = col;
    if (c == '#') {
      size_t end = pos;
      while (end < text.size() && (isalpha(static_cast<unsigned char>(text[end])) || text[end] == '#'))
        ++end;
      std::string word = text.substr(pos, end - pos);
      push(Tok::Directive, word, tl, tc);
      advance(end - pos);
      continue;
    }
    switch (c) {
      case '(': sym(Tok::LParen, "("); continue;
      case ')': sym(Tok::RParen, ")"); continue;
      case '[': sym(Tok::LBracket, "["); continue;
      case ']': sym(Tok::RBracket, "]"); continue;
      case '{': sym(Tok::LBrace, "{"); continue;
      case '}': sym(Tok::RBrace, "}"); continue;
      case ',': sym(Tok::Comma, ","); continue;
      case ';': sym(Tok::Semicolon, ";"); continue;
      case '|':
        if (startsWith(text, pos, "|->")) { sym(Tok::MapsTo, "|->"); continue; }
        sym(Tok::Bar, "|");
        continue;
      case ':':
        if (startsWith(text, pos, ":=")) { sym(Tok::ColonEq, ":="); continue; }
        sym(Tok::Colon, ":");
        continue;
      case '\\':
        if (startsWith(text, pos, "\\/")) { sym(Tok::Vee, "\\/"); continue; }
        sym(Tok::Backslash, "\\");
        continue;
      case '/':
        if (startsWith(text, pos, "/\\")) { sym(Tok::Wedge, "/\\"); continue; }
        break;
      case '=':
        if (startsWith(text, pos, "===")) { sym(Tok::TopeEq, "==="); continue; }
        sym(Tok::EqSign, "=");
        continue;
      case '<':
        if (startsWith(text, pos, "<=")) { sym(Tok::TopeLeq, "<="); continue; }
        break;
      case '*': sym(Tok::Times, "*"); continue;
      case '-':
        if (startsWith(text, pos, "->")) { sym(Tok::Arrow, "->"); continue; }
        break;
      default: break;
    }
    if (startsWith(text, pos, "\xe2\x86\x92")) { sym(Tok::Arrow, "\xe2\x86\x92"); continue; }
    if (startsWith(text, pos, "\xe2\x86\xa6")) { sym(Tok::MapsTo, "\xe2\x86\xa6"); continue; }
    if (startsWith(text, pos, "\xe2\x89\xa1")) { sym(Tok::TopeEq, "\xe2\x89\xa1"); continue; }
    if (startsWith(text, pos, "\xe2\x89\xa4")) { sym(Tok::TopeLeq, "\xe2\x89\xa4"); continue; }
    if (startsWith(text, pos, "\xe2\x88\xa7")) { sym(Tok::Wedge, "\xe2\x88\xa7"); continue; }
    if (startsWith(text, pos, "\xe2\x88\xa8")) { sym(Tok::Vee, "\xe2\x88\xa8"); continue; }
    if (startsWith(text, pos, "\xe2\x8a\xa4")) { sym(Tok::TopTope, "\xe2\x8a\xa4"); continue; }
    if (startsWith(text, pos, "\xe2\x8a\xa5")) { sym(Tok::BotTope, "\xe2\x8a\xa5"); continue; }
    if (startsWith(text, pos, "\xc3\x97")) { sym(Tok::Times, "\xc3\x97"); continue; }
    if (startsWith(text, pos, "\xce\xa3")) { sym(Tok::SigmaHead, "\xce\xa3"); continue; }
    if (startsWith(text, pos, "\xe2\x8b\x86")) { sym(Tok::Star, "\xe2\x8b\x86"); continue; }
    if (startsWith(text, pos, "0_2") || startsWith(text, pos, "0\xe2\x82\x82")) {
      push(Tok::Vertex0, "0\xe2\x82\x82", tl, tc);
      advance(text[pos + 1] == '_' ? 3 : 4);
      continue;
    }
    if (startsWith(text, pos, "1_2") || startsWith(text, pos, "1\xe2\x82\x82")) {
      push(Tok::Vertex1, "1\xe2\x82\x82", tl, tc);
      advance(text[pos + 1] == '_' ? 3 : 4);
      continue;
    }

    // Identifier / keyword / bare cube sort. Identifiers may contain hyphens,
    // primes, digits and arbitrary non-reserved unicode.
    size_t end = pos;
    while (end < text.size()) {
      char e = text[end];
      if (isDelim(e) || e == '#') break;
      if (e == '-' && end + 1 < text.size() &&
          (text[end + 1] == '>' || text[end + 1] == '-'))
        break;
      if (isReservedUtf8(text, end)) break;
      ++end;
    }
    if (end == pos) {
      Diagnostic d;
      d.code = DiagCode::Parse;
      d.span = {file, tl, tc, tl, tc};
      d.message = std::string("unexpected character '") + c + "'";
      diags.push_back(std::move(d));
      advance(1);
      continue;
    }
    std::string word = text.substr(pos, end - pos);
    advance(end - pos);
    Tok kind = Tok::Ident;
    if (word == "1") kind = Tok::Sort1;
    else if (word == "2") kind = Tok::Sort2;
    else if (word == "U") kind = Tok::KwU;
    else if (word == "CUBE") kind = Tok::KwCube;
    else if (word == "TOPE") kind = Tok::KwTope;
    else if (word == "TOP") kind = Tok::TopTope;
    else if (word == "BOT") kind = Tok::BotTope;
    else if (word == "Unit") kind = Tok::KwUnitT;
    else if (word == "unit") kind = Tok::KwUnitElem;
    else if (word == "refl") kind = Tok::KwRefl;
    else if (word == "refl_" && pos < text.size() && text[pos] == '{') {
      kind = Tok::KwReflAnn;
      push(kind, word, tl, tc);
      advance(1);  // consume '{'
      continue;
    }
    else if (word == "idJ") kind = Tok::KwIdJ;
    else if (word == "recOR") kind = Tok::KwRecOr;
    else if (word == "recBOT") kind = Tok::KwRecBot;
    else if (word == "first") kind = Tok::KwFirst;
    else if (word == "second") kind = Tok::KwSecond;
    push(kind, std::move(word), tl, tc);
  }
  push(Tok::EndOfInput, "", line, col);
  return out;
}

}  // namespace sstt
