#include "sstt/cube.hpp"

#include <atomic>

namespace sstt {

namespace {
std::atomic<int> g_nextId{1};

SortPtr mk(CubeSort s) { return std::make_shared<const CubeSort>(std::move(s)); }
CubePtr mk(CubeExpr e) { return std::make_shared<const CubeExpr>(std::move(e)); }
TopePtr mk(Tope t) { return std::make_shared<const Tope>(std::move(t)); }
}  // namespace

int freshId() { return g_nextId.fetch_add(1); }

SortPtr sortUnit() {
  static SortPtr s = mk({CubeSort::Unit, nullptr, nullptr});
  return s;
}
SortPtr sortInterval() {
  static SortPtr s = mk({CubeSort::Interval, nullptr, nullptr});
  return s;
}
SortPtr sortProduct(SortPtr l, SortPtr r) {
  return mk({CubeSort::Product, std::move(l), std::move(r)});
}

bool sortEqual(const SortPtr& a, const SortPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  if (a->kind != CubeSort::Product) return true;
  return sortEqual(a->left, b->left) && sortEqual(a->right, b->right);
}

std::string showSort(const SortPtr& s) {
  switch (s->kind) {
    case CubeSort::Unit: return "1";
    case CubeSort::Interval: return "2";
    case CubeSort::Product: {
      std::string l = showSort(s->left);
      std::string r = showSort(s->right);
      if (s->left->kind == CubeSort::Product) l = "(" + l + ")";
      if (s->right->kind == CubeSort::Product) r = "(" + r + ")";
      return l + " \xc3\x97 " + r;
    }
  }
  return "?";
}

CubePtr cubeStar() {
  static CubePtr c = mk({CubeExpr::Star, 0, "", nullptr, nullptr});
  return c;
}
CubePtr cubeV0() {
  static CubePtr c = mk({CubeExpr::Vertex0, 0, "", nullptr, nullptr});
  return c;
}
CubePtr cubeV1() {
  static CubePtr c = mk({CubeExpr::Vertex1, 0, "", nullptr, nullptr});
  return c;
}
CubePtr cubeBVar(int index, std::string hint) {
  return mk({CubeExpr::BVar, index, std::move(hint), nullptr, nullptr});
}
CubePtr cubeFVar(int id, std::string hint) {
  return mk({CubeExpr::FVar, id, std::move(hint), nullptr, nullptr});
}
CubePtr cubeTuple(CubePtr a, CubePtr b) {
  return mk({CubeExpr::Tuple, 0, "", std::move(a), std::move(b)});
}
CubePtr cubeProj1(CubePtr a) {
  return mk({CubeExpr::Proj1, 0, "", std::move(a), nullptr});
}
CubePtr cubeProj2(CubePtr a) {
  return mk({CubeExpr::Proj2, 0, "", std::move(a), nullptr});
}

TopePtr topeTop() {
  static TopePtr t = mk({Tope::Top, nullptr, nullptr, nullptr, nullptr});
  return t;
}
TopePtr topeBottom() {
  static TopePtr t = mk({Tope::Bottom, nullptr, nullptr, nullptr, nullptr});
  return t;
}
TopePtr topeConj(TopePtr l, TopePtr r) {
  return mk({Tope::Conj, std::move(l), std::move(r), nullptr, nullptr});
}
TopePtr topeDisj(TopePtr l, TopePtr r) {
  return mk({Tope::Disj, std::move(l), std::move(r), nullptr, nullptr});
}
TopePtr topeEq(CubePtr a, CubePtr b) {
  return mk({Tope::Eq, nullptr, nullptr, std::move(a), std::move(b)});
}
TopePtr topeLeq(CubePtr a, CubePtr b) {
  return mk({Tope::Leq, nullptr, nullptr, std::move(a), std::move(b)});
}

bool cubeEqual(const CubePtr& a, const CubePtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case CubeExpr::Star:
    case CubeExpr::Vertex0:
    case CubeExpr::Vertex1: return true;
    case CubeExpr::BVar:
    case CubeExpr::FVar: return a->index == b->index;
    case CubeExpr::Tuple: return cubeEqual(a->a, b->a) && cubeEqual(a->b, b->b);
    case CubeExpr::Proj1:
    case CubeExpr::Proj2: return cubeEqual(a->a, b->a);
  }
  return false;
}

bool topeEqual(const TopePtr& a, const TopePtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Tope::Top:
    case Tope::Bottom: return true;
    case Tope::Conj:
    case Tope::Disj: return topeEqual(a->l, b->l) && topeEqual(a->r, b->r);
    case Tope::Eq:
    case Tope::Leq: return cubeEqual(a->ca, b->ca) && cubeEqual(a->cb, b->cb);
  }
  return false;
}

namespace {
template <typename F>
CubePtr mapCube(const CubePtr& e, int depth, const F& onVar) {
  switch (e->kind) {
    case CubeExpr::Star:
    case CubeExpr::Vertex0:
    case CubeExpr::Vertex1: return e;
    case CubeExpr::BVar:
    case CubeExpr::FVar: return onVar(e, depth);
    case CubeExpr::Tuple: {
      CubePtr a = mapCube(e->a, depth, onVar);
      CubePtr b = mapCube(e->b, depth, onVar);
      if (a == e->a && b == e->b) return e;
      return cubeTuple(std::move(a), std::move(b));
    }
    case CubeExpr::Proj1: {
      CubePtr a = mapCube(e->a, depth, onVar);
      return a == e->a ? e : cubeProj1(std::move(a));
    }
    case CubeExpr::Proj2: {
      CubePtr a = mapCube(e->a, depth, onVar);
      return a == e->a ? e : cubeProj2(std::move(a));
    }
  }
  return e;
}

template <typename F>
TopePtr mapTope(const TopePtr& t, int depth, const F& onVar) {
  switch (t->kind) {
    case Tope::Top:
    case Tope::Bottom: return t;
    case Tope::Conj:
    case Tope::Disj: {
      TopePtr l = mapTope(t->l, depth, onVar);
      TopePtr r = mapTope(t->r, depth, onVar);
      if (l == t->l && r == t->r) return t;
      return t->kind == Tope::Conj ? topeConj(std::move(l), std::move(r))
                                   : topeDisj(std::move(l), std::move(r));
    }
    case Tope::Eq:
    case Tope::Leq: {
      CubePtr a = mapCube(t->ca, depth, onVar);
      CubePtr b = mapCube(t->cb, depth, onVar);
      if (a == t->ca && b == t->cb) return t;
      return t->kind == Tope::Eq ? topeEq(std::move(a), std::move(b))
                                 : topeLeq(std::move(a), std::move(b));
    }
  }
  return t;
}
}  // namespace

CubePtr cubeShift(const CubePtr& e, int delta, int cutoff) {
  return mapCube(e, cutoff, [&](const CubePtr& v, int d) {
    if (v->kind == CubeExpr::BVar && v->index >= d)
      return cubeBVar(v->index + delta, v->hint);
    return v;
  });
}
TopePtr topeShift(const TopePtr& t, int delta, int cutoff) {
  return mapTope(t, cutoff, [&](const CubePtr& v, int d) {
    if (v->kind == CubeExpr::BVar && v->index >= d)
      return cubeBVar(v->index + delta, v->hint);
    return v;
  });
}

CubePtr cubeOpen(const CubePtr& e, int depth, const CubePtr& value) {
  return mapCube(e, depth, [&](const CubePtr& v, int d) {
    if (v->kind == CubeExpr::BVar && v->index == d) return value;
    return v;
  });
}
TopePtr topeOpen(const TopePtr& t, int depth, const CubePtr& value) {
  return mapTope(t, depth, [&](const CubePtr& v, int d) {
    if (v->kind == CubeExpr::BVar && v->index == d) return value;
    return v;
  });
}

CubePtr cubeSubstFree(const CubePtr& e, int id, const CubePtr& value) {
  return mapCube(e, 0, [&](const CubePtr& v, int) {
    if (v->kind == CubeExpr::FVar && v->index == id) return value;
    return v;
  });
}
TopePtr topeSubstFree(const TopePtr& t, int id, const CubePtr& value) {
  return mapTope(t, 0, [&](const CubePtr& v, int) {
    if (v->kind == CubeExpr::FVar && v->index == id) return value;
    return v;
  });
}

CubePtr cubeClose(const CubePtr& e, int id, int depth) {
  return mapCube(e, depth, [&](const CubePtr& v, int d) {
    if (v->kind == CubeExpr::FVar && v->index == id) return cubeBVar(d, v->hint);
    return v;
  });
}
TopePtr topeClose(const TopePtr& t, int id, int depth) {
  return mapTope(t, depth, [&](const CubePtr& v, int d) {
    if (v->kind == CubeExpr::FVar && v->index == id) return cubeBVar(d, v->hint);
    return v;
  });
}

void cubeFreeVars(const CubePtr& e, std::vector<int>& out) {
  switch (e->kind) {
    case CubeExpr::FVar: out.push_back(e->index); return;
    case CubeExpr::Tuple:
      cubeFreeVars(e->a, out);
      cubeFreeVars(e->b, out);
      return;
    case CubeExpr::Proj1:
    case CubeExpr::Proj2: cubeFreeVars(e->a, out); return;
    default: return;
  }
}

void topeFreeVars(const TopePtr& t, std::vector<int>& out) {
  switch (t->kind) {
    case Tope::Conj:
    case Tope::Disj:
      topeFreeVars(t->l, out);
      topeFreeVars(t->r, out);
      return;
    case Tope::Eq:
    case Tope::Leq:
      cubeFreeVars(t->ca, out);
      cubeFreeVars(t->cb, out);
      return;
    default: return;
  }
}

Shape shapeDelta1() { return {"t", sortInterval(), topeTop()}; }

Shape shapeDelta2() {
  SortPtr sq = sortProduct(sortInterval(), sortInterval());
  CubePtr v = cubeBVar(0, "ts");
  return {"ts", sq, topeLeq(cubeProj2(v), cubeProj1(v))};
}

Shape shapeDelta3() {
  SortPtr s3 = sortProduct(sortInterval(), sortProduct(sortInterval(), sortInterval()));
  CubePtr v = cubeBVar(0, "t");
  CubePtr t1 = cubeProj1(v);
  CubePtr t2 = cubeProj1(cubeProj2(v));
  CubePtr t3 = cubeProj2(cubeProj2(v));
  return {"t", s3, topeConj(topeLeq(t3, t2), topeLeq(t2, t1))};
}

Shape shapeBoundary1() {
  CubePtr v = cubeBVar(0, "t");
  return {"t", sortInterval(), topeDisj(topeEq(v, cubeV0()), topeEq(v, cubeV1()))};
}

Shape shapeHorn21() {
  SortPtr sq = sortProduct(sortInterval(), sortInterval());
  CubePtr v = cubeBVar(0, "ts");
  return {"ts", sq,
          topeDisj(topeEq(cubeProj1(v), cubeV1()), topeEq(cubeProj2(v), cubeV0()))};
}

}  // namespace sstt
