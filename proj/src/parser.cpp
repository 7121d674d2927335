#include "sstt/parse.hpp"

#include <cstring>

#include "lexer.hpp"

namespace sstt {

std::vector<CodeSegment> extractLiterateBlocks(const std::string& text,
                                               bool isMarkdown,
                                               const std::string& file,
                                               std::vector<Diagnostic>& diags) {
  if (!isMarkdown) return {{text, 1}};
  std::vector<CodeSegment> out;
  std::vector<std::string> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  auto trimmed = [](std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
      s.pop_back();
    return s;
  };
  bool inside = false;
  int openerLine = 0;
  std::string current;
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string line = trimmed(lines[i]);
    if (!inside) {
      if (line == "```rzk") {
        inside = true;
        openerLine = static_cast<int>(i) + 1;
        current.clear();
      }
    } else {
      if (line == "```") {
        inside = false;
        out.push_back({current, openerLine + 1});
      } else {
        current += lines[i];
        current += '\n';
      }
    }
  }
  if (inside) {
    Diagnostic d;
    d.code = DiagCode::Parse;
    d.span = {file, openerLine, 1, openerLine, 7};
    d.message = "unterminated ```rzk fence";
    diags.push_back(std::move(d));
  }
  return out;
}

namespace {

struct ScopeVar {
  std::string name;
  std::vector<int> path;  // 1 = first component, 2 = second component
};

struct Parser {
  std::vector<Token> toks;
  size_t i = 0;
  std::string file;
  std::vector<Diagnostic>& diags;
  std::vector<std::vector<ScopeVar>> scope;  // one entry per binder

  explicit Parser(std::vector<Token> t, std::string f, std::vector<Diagnostic>& d)
      : toks(std::move(t)), file(std::move(f)), diags(d) {}

  const Token& cur() const { return toks[i]; }
  const Token& peek(size_t n = 1) const {
    return toks[std::min(i + n, toks.size() - 1)];
  }
  bool at(Tok k) const { return cur().kind == k; }
  Token take() { return toks[i++]; }
  bool eat(Tok k) {
    if (at(k)) {
      ++i;
      return true;
    }
    return false;
  }

  SourceSpan here() const {
    return {file, cur().line, cur().col, cur().line, cur().col};
  }
  SourceSpan spanFrom(const SourceSpan& s) const {
    SourceSpan out = s;
    const Token& prev = toks[i == 0 ? 0 : i - 1];
    out.endLine = prev.line;
    out.endCol = prev.col + static_cast<int>(prev.text.size());
    return out;
  }

  struct ParseError {};

  [[noreturn]] void fail(const std::string& msg) {
    Diagnostic d;
    d.code = DiagCode::Parse;
    d.span = here();
    d.message = msg;
    diags.push_back(std::move(d));
    throw ParseError{};
  }

  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return take();
  }

  void syncToDirective() {
    while (!at(Tok::EndOfInput) && !at(Tok::Directive)) ++i;
  }

  TermPtr withSpan(TermPtr t, const SourceSpan& s) {
    if (t->span.valid()) return t;
    Term n = *t;
    n.span = s;
    return mkTerm(std::move(n));
  }

  // --- scope -------------------------------------------------------------

  TermPtr resolve(const std::string& name, const SourceSpan& sp) {
    for (size_t d = 0; d < scope.size(); ++d) {
      const auto& binder = scope[scope.size() - 1 - d];
      for (const auto& v : binder) {
        if (v.name != name) continue;
        TermPtr t = tBVar(static_cast<int>(d), name);
        for (auto it = v.path.rbegin(); it != v.path.rend(); ++it)
          t = *it == 1 ? tFirst(std::move(t)) : tSecond(std::move(t));
        return withSpan(std::move(t), sp);
      }
    }
    TermPtr g = tGlobal(name);
    return withSpan(std::move(g), sp);
  }

  // --- patterns ----------------------------------------------------------

  // A binder pattern: name, wildcard, or a tuple of names (one level deep).
  std::vector<ScopeVar> pattern() {
    std::vector<ScopeVar> vars;
    if (at(Tok::Ident)) {
      std::string n = take().text;
      if (n != "_") vars.push_back({n, {}});
      return vars;
    }
    if (eat(Tok::LParen)) {
      std::string a = expect(Tok::Ident, "a pattern variable").text;
      expect(Tok::Comma, "','");
      std::string b = expect(Tok::Ident, "a pattern variable").text;
      expect(Tok::RParen, "')'");
      if (a != "_") vars.push_back({a, {1}});
      if (b != "_") vars.push_back({b, {2}});
      return vars;
    }
    fail("expected a binder pattern");
  }

  std::string patternHint(const std::vector<ScopeVar>& vars) {
    if (vars.empty()) return "_";
    if (vars.size() == 1 && vars[0].path.empty()) return vars[0].name;
    std::string joined;
    for (const auto& v : vars) {
      if (!joined.empty()) joined += ",";
      joined += v.name;
    }
    return "(" + joined + ")";
  }

  // --- terms -------------------------------------------------------------

  TermPtr term() { return lambda(); }

  TermPtr lambda() {
    if (!at(Tok::Backslash)) return arrow();
    SourceSpan sp = here();
    take();
    // one or more patterns, optionally annotated: \ x (y : A) (t, s) -> body
    struct Binder {
      std::vector<ScopeVar> vars;
      TermPtr ann;  // optional
      std::string hint;
    };
    std::vector<Binder> binders;
    while (!at(Tok::Arrow)) {
      if (at(Tok::LParen) && peek().kind == Tok::Ident &&
          peek(2).kind == Tok::Colon) {
        take();  // (
        std::string n = take().text;
        take();  // :
        TermPtr ann = term();
        expect(Tok::RParen, "')'");
        Binder b;
        if (n != "_") b.vars.push_back({n, {}});
        b.ann = ann;
        b.hint = n;
        binders.push_back(std::move(b));
      } else {
        Binder b;
        b.vars = pattern();
        b.hint = patternHint(b.vars);
        binders.push_back(std::move(b));
      }
      if (at(Tok::EndOfInput)) fail("unterminated lambda");
    }
    expect(Tok::Arrow, "'->' after lambda binders");
    for (auto& b : binders) scope.push_back(b.vars);
    TermPtr body = term();
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
      scope.pop_back();
      Term lam{};
      lam.kind = TK::Lam;
      lam.dom = Dom::None;
      lam.name = it->hint;
      if (it->ann) {
        lam.dom = Dom::Type;  // refined by the elaborator
        lam.domType = it->ann;
      }
      lam.a = std::move(body);
      body = mkTerm(std::move(lam));
    }
    return withSpan(std::move(body), spanFrom(sp));
  }

  // Lookahead: '(' IDENT+ ':' or '(' '(' ident ',' ident ')' ':' begins a
  // dependent binder group when the closing paren is followed by '->'.
  bool binderAhead() {
    if (!at(Tok::LParen)) return false;
    size_t j = i + 1;
    if (toks[j].kind == Tok::LParen) {
      // tuple pattern
      if (toks[j + 1].kind != Tok::Ident || toks[j + 2].kind != Tok::Comma ||
          toks[j + 3].kind != Tok::Ident || toks[j + 4].kind != Tok::RParen)
        return false;
      return toks[j + 5].kind == Tok::Colon;
    }
    if (toks[j].kind != Tok::Ident && toks[j].kind != Tok::Sort1 &&
        toks[j].kind != Tok::Sort2)
      return false;
    while (toks[j].kind == Tok::Ident) ++j;
    return toks[j].kind == Tok::Colon;
  }

  TermPtr arrow() {
    SourceSpan sp = here();
    if (at(Tok::SigmaHead)) {
      take();
      expect(Tok::LParen, "'(' after \xce\xa3");
      std::string n = expect(Tok::Ident, "a binder name").text;
      expect(Tok::Colon, "':'");
      TermPtr dom = term();
      expect(Tok::RParen, "')'");
      expect(Tok::Comma, "','");
      scope.push_back(n == "_" ? std::vector<ScopeVar>{}
                               : std::vector<ScopeVar>{{n, {}}});
      TermPtr codom = term();
      scope.pop_back();
      return withSpan(tSigma(n, std::move(dom), std::move(codom)), spanFrom(sp));
    }
    if (binderAhead()) {
      take();  // (
      std::vector<std::vector<ScopeVar>> groups;
      std::vector<std::string> hints;
      if (at(Tok::LParen)) {
        auto vars = pattern();
        hints.push_back(patternHint(vars));
        groups.push_back(std::move(vars));
      } else {
        while (at(Tok::Ident)) {
          std::string n = take().text;
          hints.push_back(n);
          groups.push_back(n == "_" ? std::vector<ScopeVar>{}
                                    : std::vector<ScopeVar>{{n, {}}});
        }
      }
      expect(Tok::Colon, "':'");
      TermPtr dom = term();
      TermPtr topeTerm;  // explicit shape domain: ( t : I | phi )
      if (eat(Tok::Bar)) {
        scope.push_back(groups.back());
        topeTerm = term();
        scope.pop_back();
      }
      expect(Tok::RParen, "')'");
      expect(Tok::Arrow, "'->' after binder");
      for (auto& g : groups) scope.push_back(g);
      TermPtr codom = arrow();
      for (size_t k = groups.size(); k-- > 0;) {
        scope.pop_back();
        Term pi{};
        pi.kind = TK::Pi;
        pi.dom = Dom::Type;  // refined by the elaborator
        pi.name = hints[k];
        pi.domType = termShift(dom, static_cast<int>(k), 0);
        if (topeTerm && k + 1 == groups.size()) {
          Term marker{};
          marker.kind = TK::ShapeDomT;
          marker.a = pi.domType;
          marker.b = termShift(topeTerm, static_cast<int>(k), 1);
          pi.domType = mkTerm(std::move(marker));
        }
        pi.a = std::move(codom);
        codom = mkTerm(std::move(pi));
      }
      return withSpan(std::move(codom), spanFrom(sp));
    }
    TermPtr t = disj();
    if (eat(Tok::Arrow)) {
      TermPtr rhs = arrow();
      Term pi{};
      pi.kind = TK::Pi;
      pi.dom = Dom::Type;
      pi.name = "_";
      pi.domType = std::move(t);
      pi.a = termShift(rhs, 1, 0);
      return withSpan(mkTerm(std::move(pi)), spanFrom(sp));
    }
    return t;
  }

  TermPtr disj() {
    SourceSpan sp = here();
    TermPtr t = conj();
    while (at(Tok::Vee)) {
      take();
      Term n{};
      n.kind = TK::TopeOrT;
      n.a = std::move(t);
      n.b = conj();
      t = withSpan(mkTerm(std::move(n)), spanFrom(sp));
    }
    return t;
  }

  TermPtr conj() {
    SourceSpan sp = here();
    TermPtr t = cmp();
    while (at(Tok::Wedge)) {
      take();
      Term n{};
      n.kind = TK::TopeAndT;
      n.a = std::move(t);
      n.b = cmp();
      t = withSpan(mkTerm(std::move(n)), spanFrom(sp));
    }
    return t;
  }

  TermPtr cmp() {
    SourceSpan sp = here();
    TermPtr t = times();
    if (at(Tok::EqSign)) {
      take();
      TermPtr ambient;
      if (at(Tok::Ident) && cur().text == "_" && peek().kind == Tok::LBrace) {
        take();
        take();
        ambient = term();
        expect(Tok::RBrace, "'}'");
      }
      TermPtr rhs = times();
      return withSpan(tIdT(std::move(ambient), std::move(t), std::move(rhs)),
                      spanFrom(sp));
    }
    if (at(Tok::TopeEq)) {
      take();
      Term n{};
      n.kind = TK::TopeEqT;
      n.a = std::move(t);
      n.b = times();
      return withSpan(mkTerm(std::move(n)), spanFrom(sp));
    }
    if (at(Tok::TopeLeq)) {
      take();
      Term n{};
      n.kind = TK::TopeLeqT;
      n.a = std::move(t);
      n.b = times();
      return withSpan(mkTerm(std::move(n)), spanFrom(sp));
    }
    return t;
  }

  TermPtr times() {
    SourceSpan sp = here();
    TermPtr t = app();
    if (at(Tok::Times)) {
      take();
      TermPtr rhs = times();  // right-associative
      Term n{};
      n.kind = TK::ProductT;
      n.a = std::move(t);
      n.b = std::move(rhs);
      return withSpan(mkTerm(std::move(n)), spanFrom(sp));
    }
    return t;
  }

  bool atomAhead() const {
    switch (cur().kind) {
      case Tok::Ident:
      case Tok::LParen:
      case Tok::Sort1:
      case Tok::Sort2:
      case Tok::Vertex0:
      case Tok::Vertex1:
      case Tok::Star:
      case Tok::KwU:
      case Tok::KwCube:
      case Tok::KwTope:
      case Tok::KwUnitT:
      case Tok::KwUnitElem:
      case Tok::KwRefl:
      case Tok::KwReflAnn:
      case Tok::KwIdJ:
      case Tok::KwRecOr:
      case Tok::KwRecBot:
      case Tok::KwFirst:
      case Tok::KwSecond:
      case Tok::TopTope:
      case Tok::BotTope:
        return true;
      default:
        return false;
    }
  }

  TermPtr app() {
    SourceSpan sp = here();
    TermPtr t = atom();
    while (true) {
      if (atomAhead()) {
        TermPtr arg = atom();
        t = withSpan(tApp(std::move(t), std::move(arg)), spanFrom(sp));
        continue;
      }
      if (at(Tok::LBracket)) {
        take();
        std::vector<Clause> clauses;
        if (!at(Tok::RBracket)) {
          do {
            TermPtr tope = term();
            expect(Tok::MapsTo, "'\xe2\x86\xa6' in a restriction clause");
            TermPtr val = term();
            clauses.emplace_back(std::move(tope), std::move(val));
          } while (eat(Tok::Comma));
        }
        expect(Tok::RBracket, "']'");
        if (clauses.empty()) fail("a restriction needs at least one clause");
        t = withSpan(tRestrict(std::move(t), std::move(clauses)), spanFrom(sp));
        continue;
      }
      break;
    }
    return t;
  }

  TermPtr atom() {
    SourceSpan sp = here();
    switch (cur().kind) {
      case Tok::Ident: {
        Token tok = take();
        if (tok.text == "_") fail("'_' cannot be used as a term");
        return resolve(tok.text, {file, tok.line, tok.col, tok.line,
                                  tok.col + static_cast<int>(tok.text.size())});
      }
      case Tok::Sort1: take(); return withSpan(tSortT(sortUnit()), sp);
      case Tok::Sort2: take(); return withSpan(tSortT(sortInterval()), sp);
      case Tok::Vertex0: take(); return withSpan(tCubeT(cubeV0()), sp);
      case Tok::Vertex1: take(); return withSpan(tCubeT(cubeV1()), sp);
      case Tok::Star: take(); return withSpan(tCubeT(cubeStar()), sp);
      case Tok::KwU: take(); return withSpan(tUniverse(0), sp);
      case Tok::KwCube: take(); return withSpan(tCubeUni(), sp);
      case Tok::KwTope: take(); return withSpan(tTopeUni(), sp);
      case Tok::KwUnitT: take(); return withSpan(tUnitT(), sp);
      case Tok::KwUnitElem: take(); return withSpan(tUnitElem(), sp);
      case Tok::TopTope: take(); return withSpan(tTopeT(topeTop()), sp);
      case Tok::BotTope: take(); return withSpan(tTopeT(topeBottom()), sp);
      case Tok::KwRecBot: take(); return withSpan(tRecBot(), sp);
      case Tok::KwRefl: take(); return withSpan(tRefl(), sp);
      case Tok::KwReflAnn: {
        take();
        TermPtr point = term();
        TermPtr ambient;
        if (eat(Tok::Colon)) ambient = term();
        expect(Tok::RBrace, "'}'");
        return withSpan(tRefl(std::move(ambient), std::move(point)), sp);
      }
      case Tok::KwIdJ: {
        take();
        expect(Tok::LParen, "'(' after idJ");
        std::vector<TermPtr> args;
        do {
          args.push_back(term());
        } while (eat(Tok::Comma));
        expect(Tok::RParen, "')'");
        if (args.size() != 6)
          fail("idJ takes exactly six arguments");
        return withSpan(tIdJ(std::move(args)), spanFrom(sp));
      }
      case Tok::KwRecOr: {
        take();
        expect(Tok::LParen, "'(' after recOR");
        std::vector<Clause> clauses;
        do {
          TermPtr tope = term();
          expect(Tok::MapsTo, "'\xe2\x86\xa6' in a recOR clause");
          TermPtr val = term();
          clauses.emplace_back(std::move(tope), std::move(val));
        } while (eat(Tok::Comma));
        expect(Tok::RParen, "')'");
        return withSpan(tRecOr(std::move(clauses)), spanFrom(sp));
      }
      case Tok::KwFirst: {
        take();
        return withSpan(tFirst(atom()), spanFrom(sp));
      }
      case Tok::KwSecond: {
        take();
        return withSpan(tSecond(atom()), spanFrom(sp));
      }
      case Tok::LParen: {
        take();
        TermPtr t = term();
        if (eat(Tok::Comma)) {
          std::vector<TermPtr> parts{t};
          do {
            parts.push_back(term());
          } while (eat(Tok::Comma));
          expect(Tok::RParen, "')'");
          TermPtr out = parts.back();
          for (size_t k = parts.size() - 1; k-- > 0;)
            out = tPair(parts[k], std::move(out));
          return withSpan(std::move(out), spanFrom(sp));
        }
        expect(Tok::RParen, "')'");
        return t;
      }
      default:
        fail("expected a term");
    }
  }

  // --- declarations --------------------------------------------------------

  std::vector<Param> params() {
    std::vector<Param> out;
    while (at(Tok::LParen)) {
      SourceSpan sp = here();
      take();
      std::vector<std::string> names;
      while (at(Tok::Ident)) names.push_back(take().text);
      if (names.empty()) fail("expected parameter names");
      expect(Tok::Colon, "':' in a parameter group");
      TermPtr type = term();
      TermPtr topeTerm;
      if (eat(Tok::Bar)) {
        scope.push_back(names.back() == "_"
                            ? std::vector<ScopeVar>{}
                            : std::vector<ScopeVar>{{names.back(), {}}});
        topeTerm = term();
        scope.pop_back();
      }
      expect(Tok::RParen, "')'");
      for (size_t k = 0; k < names.size(); ++k) {
        Param p;
        p.name = names[k];
        p.type = termShift(type, static_cast<int>(k), 0);
        if (topeTerm && k + 1 == names.size()) {
          Term marker{};
          marker.kind = TK::ShapeDomT;
          marker.a = p.type;
          marker.b = termShift(topeTerm, static_cast<int>(k), 1);
          p.type = mkTerm(std::move(marker));
        }
        p.span = spanFrom(sp);
        out.push_back(std::move(p));
        scope.push_back(names[k] == "_" ? std::vector<ScopeVar>{}
                                        : std::vector<ScopeVar>{{names[k], {}}});
      }
    }
    return out;
  }

  void popParams(size_t n) {
    for (size_t k = 0; k < n; ++k) scope.pop_back();
  }

  std::vector<Declaration> declarations(std::string* langOut) {
    std::vector<Declaration> out;
    bool sawLang = false;
    while (!at(Tok::EndOfInput)) {
      if (!at(Tok::Directive)) {
        Diagnostic d;
        d.code = DiagCode::Parse;
        d.span = here();
        d.message = "expected a directive";
        diags.push_back(std::move(d));
        syncToDirective();
        continue;
      }
      Token dir = take();
      SourceSpan dsp = {file, dir.line, dir.col, dir.line, dir.col};
      try {
        if (dir.text == "#lang") {
          std::string version = expect(Tok::Ident, "a language version").text;
          if (sawLang) {
            Diagnostic d;
            d.code = DiagCode::Parse;
            d.span = dsp;
            d.message = "duplicate #lang directive";
            diags.push_back(std::move(d));
          } else {
            sawLang = true;
            if (langOut) *langOut = version;
          }
        } else if (dir.text == "#def" || dir.text == "#define" ||
                   dir.text == "#postulate") {
          Declaration decl;
          decl.kind = dir.text == "#postulate" ? Declaration::Postulate
                                               : Declaration::Def;
          decl.name = expect(Tok::Ident, "a declaration name").text;
          decl.params = params();
          expect(Tok::Colon, "':' before the declared type");
          decl.statedType = term();
          if (decl.kind == Declaration::Def) {
            expect(Tok::ColonEq, "':=' before the body");
            decl.body = term();
          }
          popParams(decl.params.size());
          decl.span = spanFrom(dsp);
          out.push_back(std::move(decl));
        } else if (dir.text == "#assume" || dir.text == "#variable") {
          std::vector<std::string> names;
          while (at(Tok::Ident)) names.push_back(take().text);
          if (names.empty()) fail("expected assumption names");
          expect(Tok::Colon, "':' before the assumed type");
          TermPtr type = term();
          for (const auto& n : names) {
            Declaration decl;
            decl.kind = Declaration::Assume;
            decl.name = n;
            decl.statedType = type;
            decl.span = spanFrom(dsp);
            out.push_back(std::move(decl));
          }
        } else if (dir.text == "#check") {
          Declaration decl;
          decl.kind = Declaration::Check;
          decl.body = term();
          expect(Tok::Colon, "':' in #check");
          decl.statedType = term();
          decl.span = spanFrom(dsp);
          out.push_back(std::move(decl));
        } else if (dir.text == "#compute") {
          Declaration decl;
          decl.kind = Declaration::Compute;
          decl.body = term();
          decl.span = spanFrom(dsp);
          out.push_back(std::move(decl));
        } else if (dir.text == "#section") {
          Declaration decl;
          decl.kind = Declaration::SectionBegin;
          if (at(Tok::Ident)) decl.name = take().text;
          decl.span = dsp;
          out.push_back(std::move(decl));
        } else if (dir.text == "#end") {
          Declaration decl;
          decl.kind = Declaration::SectionEnd;
          if (at(Tok::Ident)) decl.name = take().text;
          decl.span = dsp;
          out.push_back(std::move(decl));
        } else {
          Diagnostic d;
          d.code = DiagCode::Parse;
          d.span = dsp;
          d.message = "unknown directive " + dir.text;
          diags.push_back(std::move(d));
          syncToDirective();
        }
      } catch (ParseError&) {
        scope.clear();
        syncToDirective();
      }
    }
    return out;
  }
};

}  // namespace

ParseResult parseModule(const std::vector<CodeSegment>& segments,
                        const std::string& file) {
  ParseResult res;
  bool sawLang = false;
  for (const auto& seg : segments) {
    std::vector<Token> toks = tokenize(seg.text, seg.startLine, file,
                                       res.diagnostics);
    Parser p(std::move(toks), file, res.diagnostics);
    std::string lang;
    std::vector<Declaration> decls = p.declarations(&lang);
    if (!lang.empty()) {
      if (!sawLang) {
        sawLang = true;
        res.module.languageVersion = lang;
      }
    }
    for (auto& d : decls) res.module.declarations.push_back(std::move(d));
  }
  if (!sawLang) {
    Diagnostic d;
    d.code = DiagCode::Parse;
    d.span = {file, 1, 1, 1, 1};
    d.message = "missing language header (#lang rzk-1)";
    res.diagnostics.push_back(std::move(d));
  }
  return res;
}

ParseResult parseFileText(const std::string& text, const std::string& file) {
  bool isMarkdown = file.size() >= 3 && file.compare(file.size() - 3, 3, ".md") == 0;
  ParseResult res;
  std::vector<CodeSegment> segs =
      extractLiterateBlocks(text, isMarkdown, file, res.diagnostics);
  ParseResult parsed = parseModule(segs, file);
  for (auto& d : parsed.diagnostics) res.diagnostics.push_back(std::move(d));
  res.module = std::move(parsed.module);
  return res;
}

TermPtr parseTermString(const std::string& text, std::vector<Diagnostic>& diags) {
  std::vector<Token> toks = tokenize(text, 1, "<term>", diags);
  Parser p(std::move(toks), "<term>", diags);
  try {
    TermPtr t = p.term();
    if (!p.at(Tok::EndOfInput)) p.fail("trailing input after term");
    return t;
  } catch (Parser::ParseError&) {
    return nullptr;
  }
}

}  // namespace sstt
