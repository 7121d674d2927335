#include "sstt/pretty.hpp"

namespace sstt {

namespace {

// Precedence tiers, loosest to tightest.
enum Prec {
  PArrow = 0,  // -> , Sigma, lambda body
  PDisj = 1,
  PConj = 2,
  PCmp = 3,  // = , judgmental eq, <=
  PTimes = 4,
  PApp = 5,
  PAtom = 6,
};

std::string paren(bool needed, std::string s) {
  return needed ? "(" + std::move(s) + ")" : std::move(s);
}

bool usesBound(const TermPtr& t, int depth);

bool usesBoundCube(const CubePtr& e, int depth) {
  switch (e->kind) {
    case CubeExpr::BVar: return e->index == depth;
    case CubeExpr::Tuple:
      return usesBoundCube(e->a, depth) || usesBoundCube(e->b, depth);
    case CubeExpr::Proj1:
    case CubeExpr::Proj2: return usesBoundCube(e->a, depth);
    default: return false;
  }
}

bool usesBoundTope(const TopePtr& t, int depth) {
  switch (t->kind) {
    case Tope::Conj:
    case Tope::Disj:
      return usesBoundTope(t->l, depth) || usesBoundTope(t->r, depth);
    case Tope::Eq:
    case Tope::Leq:
      return usesBoundCube(t->ca, depth) || usesBoundCube(t->cb, depth);
    default: return false;
  }
}

bool usesBound(const TermPtr& t, int depth) {
  if (!t) return false;
  switch (t->kind) {
    case TK::BVar: return t->level == depth;
    case TK::FVar:
    case TK::Global: return false;
    case TK::CubeT: return usesBoundCube(t->cube, depth);
    case TK::TopeT: return usesBoundTope(t->tope, depth);
    case TK::Pi:
    case TK::Lam:
      if (t->domType && usesBound(t->domType, depth)) return true;
      if (t->tope && usesBoundTope(t->tope, depth + 1)) return true;
      return usesBound(t->a, depth + 1);
    case TK::Sigma:
      return usesBound(t->domType, depth) || usesBound(t->a, depth + 1);
    case TK::ShapeDomT:
      return usesBound(t->a, depth) || usesBound(t->b, depth + 1);
    default: {
      if (t->domType && usesBound(t->domType, depth)) return true;
      if (usesBound(t->a, depth) || usesBound(t->b, depth)) return true;
      for (const auto& arg : t->args)
        if (usesBound(arg, depth)) return true;
      for (const auto& [tp, v] : t->clauses)
        if (usesBound(tp, depth) || usesBound(v, depth)) return true;
      return false;
    }
  }
}

std::string show(const TermPtr& t, NameEnv& env, int prec);

std::string showClauses(const std::vector<Clause>& clauses, NameEnv& env) {
  std::string out;
  for (size_t i = 0; i < clauses.size(); ++i) {
    if (i) out += " , ";
    out += show(clauses[i].first, env, PArrow);
    out += " \xe2\x86\xa6 ";
    out += show(clauses[i].second, env, PArrow);
  }
  return out;
}

// Recognizes the built-in shape literals so domains print as their names.
const char* builtinShapeName(const SortPtr& sort, const TopePtr& tope) {
  auto matches = [&](const Shape& sh) {
    return sortEqual(sort, sh.sort) && topeEqual(tope, sh.tope);
  };
  if (matches(shapeDelta1())) return "\xce\x94\xc2\xb9";
  if (matches(shapeDelta2())) return "\xce\x94\xc2\xb2";
  if (matches(shapeDelta3())) return "\xce\x94\xc2\xb3";
  if (matches(shapeBoundary1())) return "\xe2\x88\x82\xce\x94\xc2\xb9";
  if (matches(shapeHorn21())) return "\xce\x9b";
  return nullptr;
}

std::string showBinder(const Term& t, NameEnv& env, const std::string& name) {
  // Renders the parenthesized binder of a Pi/Lam (surface or elaborated).
  switch (t.dom) {
    case Dom::Type: {
      if (t.domType && t.domType->kind == TK::ShapeDomT) {
        std::string sort = show(t.domType->a, env, PArrow);
        NameEnv inner = env;
        inner.bound.push_back(name);
        return "( " + name + " : " + sort + " | " +
               show(t.domType->b, inner, PArrow) + ")";
      }
      return "( " + name + " : " + show(t.domType, env, PArrow) + ")";
    }
    case Dom::Cube:
      return "( " + name + " : " + showSort(t.sort) + ")";
    case Dom::Shape: {
      if (const char* builtin = builtinShapeName(t.sort, t.tope))
        return "( " + name + " : " + builtin + ")";
      NameEnv inner = env;
      inner.bound.push_back(name);
      return "( " + name + " : " + showSort(t.sort) + " | " +
             showTope(t.tope, inner) + ")";
    }
    case Dom::None: return name;
  }
  return name;
}

std::string show(const TermPtr& t, NameEnv& env, int prec) {
  switch (t->kind) {
    case TK::Universe: return t->level == 0 ? "U" : "U\xe2\x82\x81";
    case TK::CubeUni: return "CUBE";
    case TK::TopeUni: return "TOPE";
    case TK::SortT: {
      bool prod = t->sort->kind == CubeSort::Product;
      return paren(prod && prec > PTimes, showSort(t->sort));
    }
    case TK::CubeT: return showCube(t->cube, env);
    case TK::TopeT: return showTope(t->tope, env);
    case TK::Pi: {
      bool dep = usesBound(t->a, 0) ||
                 (t->tope && usesBoundTope(t->tope, 0)) || t->dom != Dom::Type ||
                 (t->domType && t->domType->kind == TK::ShapeDomT);
      std::string out;
      if (!dep) {
        std::string dom = show(t->domType, env, PDisj);
        env.bound.push_back("_");
        std::string codom = show(t->a, env, PArrow);
        env.bound.pop_back();
        out = dom + " \xe2\x86\x92 " + codom;
      } else {
        std::string name = env.fresh(t->name);
        std::string binder = showBinder(*t, env, name);
        env.bound.push_back(name);
        std::string codom = show(t->a, env, PArrow);
        env.bound.pop_back();
        out = binder + " \xe2\x86\x92 " + codom;
      }
      return paren(prec > PArrow, std::move(out));
    }
    case TK::Lam: {
      std::string name = env.fresh(t->name);
      std::string binder =
          t->dom == Dom::None ? name : showBinder(*t, env, name);
      env.bound.push_back(name);
      std::string body = show(t->a, env, PArrow);
      env.bound.pop_back();
      return paren(prec > PArrow, "\\ " + binder + " \xe2\x86\x92 " + body);
    }
    case TK::Sigma: {
      std::string name = env.fresh(t->name);
      std::string dom = show(t->domType, env, PArrow);
      env.bound.push_back(name);
      std::string codom = show(t->a, env, PArrow);
      env.bound.pop_back();
      return paren(prec > PArrow, "\xce\xa3 ( " + name + " : " + dom + ") , " + codom);
    }
    case TK::App: {
      std::string fn = show(t->a, env, PApp);
      std::string arg = show(t->b, env, PAtom);
      return paren(prec > PApp, fn + " " + arg);
    }
    case TK::PairT:
      return "(" + show(t->a, env, PArrow) + " , " + show(t->b, env, PArrow) + ")";
    case TK::First:
      return paren(prec > PApp, "first " + show(t->a, env, PAtom));
    case TK::Second:
      return paren(prec > PApp, "second " + show(t->a, env, PAtom));
    case TK::IdT: {
      std::string out = show(t->a, env, PTimes);
      out += t->domType ? " =_{" + show(t->domType, env, PArrow) + "} " : " = ";
      out += show(t->b, env, PTimes);
      return paren(prec > PCmp, std::move(out));
    }
    case TK::Refl: {
      if (!t->a) return "refl";
      std::string out = "refl_{" + show(t->a, env, PArrow);
      if (t->domType) out += " : " + show(t->domType, env, PArrow);
      return out + "}";
    }
    case TK::IdJ: {
      std::string out = "idJ (";
      for (size_t i = 0; i < t->args.size(); ++i) {
        if (i) out += " , ";
        out += show(t->args[i], env, PArrow);
      }
      return out + ")";
    }
    case TK::UnitT: return "Unit";
    case TK::UnitElem: return "unit";
    case TK::RecBot: return "recBOT";
    case TK::RecOr: return "recOR (" + showClauses(t->clauses, env) + ")";
    case TK::Restrict: {
      std::string carrier = show(t->a, env, PApp);
      return paren(prec > PApp,
                   carrier + " [ " + showClauses(t->clauses, env) + " ]");
    }
    case TK::BVar: return env.boundName(t->level, t->name);
    case TK::FVar: return env.freeName(t->level, t->name);
    case TK::Global: return t->name;
    case TK::ProductT:
      return paren(prec > PTimes, show(t->a, env, PTimes + 1) +
                                      " \xc3\x97 " + show(t->b, env, PTimes));
    case TK::TopeAndT:
      return paren(prec > PConj, show(t->a, env, PConj) + " \xe2\x88\xa7 " +
                                     show(t->b, env, PConj + 1));
    case TK::TopeOrT:
      return paren(prec > PDisj, show(t->a, env, PDisj) + " \xe2\x88\xa8 " +
                                     show(t->b, env, PDisj + 1));
    case TK::TopeEqT:
      return paren(prec > PCmp, show(t->a, env, PTimes) + " \xe2\x89\xa1 " +
                                    show(t->b, env, PTimes));
    case TK::TopeLeqT:
      return paren(prec > PCmp, show(t->a, env, PTimes) + " \xe2\x89\xa4 " +
                                    show(t->b, env, PTimes));
    case TK::ShapeDomT: {
      std::string sort = show(t->a, env, PArrow);
      env.bound.push_back("_");
      std::string tope = show(t->b, env, PArrow);
      env.bound.pop_back();
      return sort + " | " + tope;
    }
  }
  return "?";
}

}  // namespace

std::string showCube(const CubePtr& e, const NameEnv& env) {
  switch (e->kind) {
    case CubeExpr::Star: return "\xe2\x8b\x86";
    case CubeExpr::Vertex0: return "0\xe2\x82\x82";
    case CubeExpr::Vertex1: return "1\xe2\x82\x82";
    case CubeExpr::BVar: return env.boundName(e->index, e->hint);
    case CubeExpr::FVar: return env.freeName(e->index, e->hint);
    case CubeExpr::Tuple:
      return "(" + showCube(e->a, env) + " , " + showCube(e->b, env) + ")";
    case CubeExpr::Proj1: return "first " + showCube(e->a, env);
    case CubeExpr::Proj2: return "second " + showCube(e->a, env);
  }
  return "?";
}

namespace {
std::string showTopePrec(const TopePtr& t, const NameEnv& env, int prec) {
  switch (t->kind) {
    case Tope::Top: return "\xe2\x8a\xa4";
    case Tope::Bottom: return "\xe2\x8a\xa5";
    case Tope::Conj:
      return paren(prec > PConj, showTopePrec(t->l, env, PConj) +
                                     " \xe2\x88\xa7 " +
                                     showTopePrec(t->r, env, PConj + 1));
    case Tope::Disj:
      return paren(prec > PDisj, showTopePrec(t->l, env, PDisj) +
                                     " \xe2\x88\xa8 " +
                                     showTopePrec(t->r, env, PDisj + 1));
    case Tope::Eq:
      return showCube(t->ca, env) + " \xe2\x89\xa1 " + showCube(t->cb, env);
    case Tope::Leq:
      return showCube(t->ca, env) + " \xe2\x89\xa4 " + showCube(t->cb, env);
  }
  return "?";
}
}  // namespace

std::string showTope(const TopePtr& t, const NameEnv& env) {
  return showTopePrec(t, env, PArrow);
}

std::string showTerm(const TermPtr& t, const NameEnv& env) {
  NameEnv e = env;
  return show(t, e, PArrow);
}

std::string prettyPrint(const TermPtr& t) {
  NameEnv env;
  return show(t, env, PArrow);
}

std::string printDeclaration(const Declaration& d) {
  NameEnv env;
  std::string out;
  auto paramBlock = [&](const std::vector<Param>& ps) {
    std::string s;
    for (const auto& p : ps) {
      s += "\n  ( " + p.name + " : ";
      if (p.type->kind == TK::ShapeDomT) {
        s += show(p.type->a, env, PArrow);
        env.bound.push_back(p.name);
        s += " | " + show(p.type->b, env, PArrow);
        env.bound.pop_back();
      } else {
        s += show(p.type, env, PArrow);
      }
      s += ")";
      env.bound.push_back(p.name);
    }
    return s;
  };
  switch (d.kind) {
    case Declaration::Def:
      out = "#def " + d.name + paramBlock(d.params);
      out += "\n  : " + show(d.statedType, env, PArrow);
      out += "\n  := " + show(d.body, env, PArrow);
      break;
    case Declaration::Postulate:
      out = "#postulate " + d.name + paramBlock(d.params);
      out += "\n  : " + show(d.statedType, env, PArrow);
      break;
    case Declaration::Assume:
      out = "#assume " + d.name + " : " + show(d.statedType, env, PArrow);
      break;
    case Declaration::Check:
      out = "#check " + show(d.body, env, PArrow) + " : " +
            show(d.statedType, env, PArrow);
      break;
    case Declaration::Compute:
      out = "#compute " + show(d.body, env, PArrow);
      break;
    case Declaration::SectionBegin:
      out = "#section" + (d.name.empty() ? "" : " " + d.name);
      break;
    case Declaration::SectionEnd:
      out = "#end" + (d.name.empty() ? "" : " " + d.name);
      break;
  }
  env.bound.clear();
  return out;
}

std::string printModule(const RawModule& m) {
  std::string out = "#lang " + (m.languageVersion.empty() ? "rzk-1" : m.languageVersion);
  for (const auto& d : m.declarations) {
    out += "\n\n";
    out += printDeclaration(d);
  }
  out += "\n";
  return out;
}

}  // namespace sstt
