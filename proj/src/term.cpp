#include "sstt/term.hpp"

#include <algorithm>
#include <functional>

namespace sstt {

TermPtr mkTerm(Term t) { return std::make_shared<const Term>(std::move(t)); }

TermPtr tUniverse(int level) {
  Term t{};
  t.kind = TK::Universe;
  t.level = level;
  return mkTerm(std::move(t));
}
TermPtr tCubeUni() {
  Term t{};
  t.kind = TK::CubeUni;
  return mkTerm(std::move(t));
}
TermPtr tTopeUni() {
  Term t{};
  t.kind = TK::TopeUni;
  return mkTerm(std::move(t));
}
TermPtr tSortT(SortPtr s) {
  Term t{};
  t.kind = TK::SortT;
  t.sort = std::move(s);
  return mkTerm(std::move(t));
}
TermPtr tCubeT(CubePtr c) {
  Term t{};
  t.kind = TK::CubeT;
  t.cube = std::move(c);
  return mkTerm(std::move(t));
}
TermPtr tTopeT(TopePtr tp) {
  Term t{};
  t.kind = TK::TopeT;
  t.tope = std::move(tp);
  return mkTerm(std::move(t));
}
TermPtr tPiType(std::string hint, TermPtr domType, TermPtr codom) {
  Term t{};
  t.kind = TK::Pi;
  t.dom = Dom::Type;
  t.name = std::move(hint);
  t.domType = std::move(domType);
  t.a = std::move(codom);
  return mkTerm(std::move(t));
}
TermPtr tPiCube(std::string hint, SortPtr sort, TermPtr codom) {
  Term t{};
  t.kind = TK::Pi;
  t.dom = Dom::Cube;
  t.name = std::move(hint);
  t.sort = std::move(sort);
  t.a = std::move(codom);
  return mkTerm(std::move(t));
}
TermPtr tPiShape(std::string hint, SortPtr sort, TopePtr tope, TermPtr codom) {
  Term t{};
  t.kind = TK::Pi;
  t.dom = Dom::Shape;
  t.name = std::move(hint);
  t.sort = std::move(sort);
  t.tope = std::move(tope);
  t.a = std::move(codom);
  return mkTerm(std::move(t));
}
TermPtr tLam(std::string hint, TermPtr body) {
  Term t{};
  t.kind = TK::Lam;
  t.dom = Dom::None;
  t.name = std::move(hint);
  t.a = std::move(body);
  return mkTerm(std::move(t));
}
TermPtr tApp(TermPtr fn, TermPtr arg) {
  Term t{};
  t.kind = TK::App;
  t.a = std::move(fn);
  t.b = std::move(arg);
  return mkTerm(std::move(t));
}
TermPtr tSigma(std::string hint, TermPtr domType, TermPtr codom) {
  Term t{};
  t.kind = TK::Sigma;
  t.name = std::move(hint);
  t.domType = std::move(domType);
  t.a = std::move(codom);
  return mkTerm(std::move(t));
}
TermPtr tPair(TermPtr a, TermPtr b) {
  Term t{};
  t.kind = TK::PairT;
  t.a = std::move(a);
  t.b = std::move(b);
  return mkTerm(std::move(t));
}
TermPtr tFirst(TermPtr a) {
  Term t{};
  t.kind = TK::First;
  t.a = std::move(a);
  return mkTerm(std::move(t));
}
TermPtr tSecond(TermPtr a) {
  Term t{};
  t.kind = TK::Second;
  t.a = std::move(a);
  return mkTerm(std::move(t));
}
TermPtr tIdT(TermPtr ambient, TermPtr a, TermPtr b) {
  Term t{};
  t.kind = TK::IdT;
  t.domType = std::move(ambient);
  t.a = std::move(a);
  t.b = std::move(b);
  return mkTerm(std::move(t));
}
TermPtr tRefl(TermPtr ambient, TermPtr point) {
  Term t{};
  t.kind = TK::Refl;
  t.domType = std::move(ambient);
  t.a = std::move(point);
  return mkTerm(std::move(t));
}
TermPtr tIdJ(std::vector<TermPtr> args) {
  Term t{};
  t.kind = TK::IdJ;
  t.args = std::move(args);
  return mkTerm(std::move(t));
}
TermPtr tUnitT() {
  Term t{};
  t.kind = TK::UnitT;
  return mkTerm(std::move(t));
}
TermPtr tUnitElem() {
  Term t{};
  t.kind = TK::UnitElem;
  return mkTerm(std::move(t));
}
TermPtr tRecBot() {
  Term t{};
  t.kind = TK::RecBot;
  return mkTerm(std::move(t));
}
TermPtr tRecOr(std::vector<Clause> clauses) {
  Term t{};
  t.kind = TK::RecOr;
  t.clauses = std::move(clauses);
  return mkTerm(std::move(t));
}
TermPtr tRestrict(TermPtr carrier, std::vector<Clause> clauses) {
  Term t{};
  t.kind = TK::Restrict;
  t.a = std::move(carrier);
  t.clauses = std::move(clauses);
  return mkTerm(std::move(t));
}
TermPtr tBVar(int index, std::string hint) {
  Term t{};
  t.kind = TK::BVar;
  t.level = index;
  t.name = std::move(hint);
  return mkTerm(std::move(t));
}
TermPtr tFVar(int id, std::string hint) {
  Term t{};
  t.kind = TK::FVar;
  t.level = id;
  t.name = std::move(hint);
  return mkTerm(std::move(t));
}
TermPtr tGlobal(std::string name) {
  Term t{};
  t.kind = TK::Global;
  t.name = std::move(name);
  return mkTerm(std::move(t));
}

bool termEqual(const TermPtr& x, const TermPtr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->kind != y->kind) return false;
  auto optEq = [](const TermPtr& a, const TermPtr& b) {
    if (!a && !b) return true;
    if (!a || !b) return false;
    return termEqual(a, b);
  };
  switch (x->kind) {
    case TK::Universe: return x->level == y->level;
    case TK::CubeUni:
    case TK::TopeUni:
    case TK::UnitT:
    case TK::UnitElem:
    case TK::RecBot: return true;
    case TK::SortT: return sortEqual(x->sort, y->sort);
    case TK::CubeT: return cubeEqual(x->cube, y->cube);
    case TK::TopeT: return topeEqual(x->tope, y->tope);
    case TK::Pi:
    case TK::Lam: {
      if (x->dom != y->dom) return false;
      switch (x->dom) {
        case Dom::Type:
          if (!optEq(x->domType, y->domType)) return false;
          break;
        case Dom::Cube:
          if (!sortEqual(x->sort, y->sort)) return false;
          break;
        case Dom::Shape:
          if (!sortEqual(x->sort, y->sort) || !topeEqual(x->tope, y->tope))
            return false;
          break;
        case Dom::None: break;
      }
      return termEqual(x->a, y->a);
    }
    case TK::App:
    case TK::PairT: return termEqual(x->a, y->a) && termEqual(x->b, y->b);
    case TK::Sigma:
      return termEqual(x->domType, y->domType) && termEqual(x->a, y->a);
    case TK::First:
    case TK::Second: return termEqual(x->a, y->a);
    case TK::IdT:
      return optEq(x->domType, y->domType) && termEqual(x->a, y->a) &&
             termEqual(x->b, y->b);
    case TK::Refl: return optEq(x->domType, y->domType) && optEq(x->a, y->a);
    case TK::IdJ: {
      if (x->args.size() != y->args.size()) return false;
      for (size_t i = 0; i < x->args.size(); ++i)
        if (!termEqual(x->args[i], y->args[i])) return false;
      return true;
    }
    case TK::RecOr:
    case TK::Restrict: {
      if (x->kind == TK::Restrict && !termEqual(x->a, y->a)) return false;
      if (x->clauses.size() != y->clauses.size()) return false;
      for (size_t i = 0; i < x->clauses.size(); ++i) {
        if (!termEqual(x->clauses[i].first, y->clauses[i].first)) return false;
        if (!termEqual(x->clauses[i].second, y->clauses[i].second)) return false;
      }
      return true;
    }
    case TK::BVar:
    case TK::FVar: return x->level == y->level;
    case TK::Global: return x->name == y->name;
    case TK::ProductT:
    case TK::TopeAndT:
    case TK::TopeOrT:
    case TK::TopeEqT:
    case TK::TopeLeqT:
    case TK::ShapeDomT: return termEqual(x->a, y->a) && termEqual(x->b, y->b);
  }
  return false;
}

namespace {

// Generic structural rewrite. `onTermVar` handles BVar/FVar term nodes;
// `cubeMap` rewrites embedded cube expressions and topes at a given depth.
struct Rewriter {
  std::function<TermPtr(const TermPtr&, int)> onTermVar;
  std::function<CubePtr(const CubePtr&, int)> onCube;
  std::function<TopePtr(const TopePtr&, int)> onTope;

  TermPtr walk(const TermPtr& t, int depth) const {
    switch (t->kind) {
      case TK::BVar:
      case TK::FVar: return onTermVar(t, depth);
      case TK::Universe:
      case TK::CubeUni:
      case TK::TopeUni:
      case TK::SortT:
      case TK::UnitT:
      case TK::UnitElem:
      case TK::RecBot:
      case TK::Global: return t;
      case TK::CubeT: {
        CubePtr c = onCube(t->cube, depth);
        if (c == t->cube) return t;
        Term n = *t;
        n.cube = std::move(c);
        return mkTerm(std::move(n));
      }
      case TK::TopeT: {
        TopePtr tp = onTope(t->tope, depth);
        if (tp == t->tope) return t;
        Term n = *t;
        n.tope = std::move(tp);
        return mkTerm(std::move(n));
      }
      default: break;
    }
    Term n = *t;
    bool changed = false;
    auto upd = [&](TermPtr& child, int d) {
      if (!child) return;
      TermPtr w = walk(child, d);
      if (w != child) {
        child = std::move(w);
        changed = true;
      }
    };
    int bodyDepth = depth;
    switch (t->kind) {
      case TK::Pi:
      case TK::Lam:
        if (n.domType) upd(n.domType, depth);
        if (n.tope) {
          TopePtr tp = onTope(n.tope, depth + 1);
          if (tp != n.tope) {
            n.tope = std::move(tp);
            changed = true;
          }
        }
        bodyDepth = depth + 1;
        upd(n.a, bodyDepth);
        break;
      case TK::Sigma:
        upd(n.domType, depth);
        upd(n.a, depth + 1);
        break;
      case TK::IdT:
        if (n.domType) upd(n.domType, depth);
        upd(n.a, depth);
        upd(n.b, depth);
        break;
      case TK::Refl:
        if (n.domType) upd(n.domType, depth);
        if (n.a) upd(n.a, depth);
        break;
      case TK::IdJ:
        for (auto& arg : n.args) upd(arg, depth);
        break;
      case TK::RecOr:
      case TK::Restrict:
        if (t->kind == TK::Restrict) upd(n.a, depth);
        for (auto& [tp, v] : n.clauses) {
          upd(tp, depth);
          upd(v, depth);
        }
        break;
      case TK::ShapeDomT:
        upd(n.a, depth);
        upd(n.b, depth + 1);  // the tope is under the binder it constrains
        break;
      default:
        upd(n.a, depth);
        upd(n.b, depth);
        break;
    }
    if (!changed) return t;
    return mkTerm(std::move(n));
  }
};

}  // namespace

TermPtr termShift(const TermPtr& t, int delta, int cutoff) {
  Rewriter rw;
  rw.onTermVar = [&](const TermPtr& v, int d) {
    if (v->kind == TK::BVar && v->level >= d) {
      Term n = *v;
      n.level += delta;
      return mkTerm(std::move(n));
    }
    return v;
  };
  rw.onCube = [&](const CubePtr& c, int d) { return cubeShift(c, delta, d); };
  rw.onTope = [&](const TopePtr& tp, int d) { return topeShift(tp, delta, d); };
  return rw.walk(t, cutoff);
}

TermPtr termOpen(const TermPtr& t, int depth, const TermPtr& value) {
  Rewriter rw;
  rw.onTermVar = [&](const TermPtr& v, int d) {
    if (v->kind == TK::BVar && v->level == d) return value;
    return v;
  };
  rw.onCube = [&](const CubePtr& c, int) { return c; };
  rw.onTope = [&](const TopePtr& tp, int) { return tp; };
  return rw.walk(t, depth);
}

TermPtr termOpenCube(const TermPtr& t, int depth, const CubePtr& value) {
  Rewriter rw;
  rw.onTermVar = [&](const TermPtr& v, int d) -> TermPtr {
    if (v->kind == TK::BVar && v->level == d) return tCubeT(value);
    return v;
  };
  rw.onCube = [&](const CubePtr& c, int d) { return cubeOpen(c, d, value); };
  rw.onTope = [&](const TopePtr& tp, int d) { return topeOpen(tp, d, value); };
  return rw.walk(t, depth);
}

TermPtr termSubstFree(const TermPtr& t, int id, const TermPtr& value) {
  Rewriter rw;
  rw.onTermVar = [&](const TermPtr& v, int) {
    if (v->kind == TK::FVar && v->level == id) return value;
    return v;
  };
  rw.onCube = [&](const CubePtr& c, int) { return c; };
  rw.onTope = [&](const TopePtr& tp, int) { return tp; };
  return rw.walk(t, 0);
}

TermPtr termSubstFreeCube(const TermPtr& t, int id, const CubePtr& value) {
  Rewriter rw;
  rw.onTermVar = [&](const TermPtr& v, int) -> TermPtr {
    if (v->kind == TK::FVar && v->level == id) return tCubeT(value);
    return v;
  };
  rw.onCube = [&](const CubePtr& c, int) { return cubeSubstFree(c, id, value); };
  rw.onTope = [&](const TopePtr& tp, int) { return topeSubstFree(tp, id, value); };
  return rw.walk(t, 0);
}

TermPtr termClose(const TermPtr& t, int id, int depth) {
  Rewriter rw;
  rw.onTermVar = [&](const TermPtr& v, int d) {
    if (v->kind == TK::FVar && v->level == id) return tBVar(d, v->name);
    return v;
  };
  rw.onCube = [&](const CubePtr& c, int d) { return cubeClose(c, id, d); };
  rw.onTope = [&](const TopePtr& tp, int d) { return topeClose(tp, id, d); };
  return rw.walk(t, depth);
}

void termFreeVars(const TermPtr& t, std::vector<int>& out) {
  if (!t) return;
  switch (t->kind) {
    case TK::FVar: out.push_back(t->level); return;
    case TK::CubeT: cubeFreeVars(t->cube, out); return;
    case TK::TopeT: topeFreeVars(t->tope, out); return;
    default: break;
  }
  if (t->kind == TK::Pi || t->kind == TK::Lam) {
    if (t->domType) termFreeVars(t->domType, out);
    if (t->tope) topeFreeVars(t->tope, out);
  } else if (t->domType) {
    termFreeVars(t->domType, out);
  }
  termFreeVars(t->a, out);
  termFreeVars(t->b, out);
  for (const auto& arg : t->args) termFreeVars(arg, out);
  for (const auto& [tp, v] : t->clauses) {
    termFreeVars(tp, out);
    termFreeVars(v, out);
  }
}

void termGlobals(const TermPtr& t, std::vector<std::string>& out) {
  if (!t) return;
  if (t->kind == TK::Global) {
    if (std::find(out.begin(), out.end(), t->name) == out.end())
      out.push_back(t->name);
  }
  if (t->domType) termGlobals(t->domType, out);
  termGlobals(t->a, out);
  termGlobals(t->b, out);
  for (const auto& arg : t->args) termGlobals(arg, out);
  for (const auto& [tp, v] : t->clauses) {
    termGlobals(tp, out);
    termGlobals(v, out);
  }
}

void installBuiltinShapes(Signature& sig) {
  auto add = [&](const char* name, const Shape& sh) {
    CheckedDeclaration d;
    d.name = name;
    d.isShape = true;
    d.shapeSort = sh.sort;
    d.shapeTope = sh.tope;
    sig.add(std::move(d));
  };
  add("\xce\x94\xc2\xb9", shapeDelta1());            // Δ¹
  add("\xce\x94\xc2\xb2", shapeDelta2());            // Δ²
  add("\xe2\x88\x82\xce\x94\xc2\xb9", shapeBoundary1());  // ∂Δ¹
  add("\xce\x9b", shapeHorn21());                    // Λ
  add("\xce\x9b\xc2\xb2\xe2\x82\x81", shapeHorn21());     // Λ²₁
}

}  // namespace sstt
