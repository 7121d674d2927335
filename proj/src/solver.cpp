#include "sstt/solver.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace sstt {

std::optional<SortPtr> sortOfPoint(const CubePtr& e,
                                   const std::vector<std::pair<int, SortPtr>>& zone) {
  switch (e->kind) {
    case CubeExpr::Star: return sortUnit();
    case CubeExpr::Vertex0:
    case CubeExpr::Vertex1: return sortInterval();
    case CubeExpr::FVar:
      for (const auto& [id, sort] : zone)
        if (id == e->index) return sort;
      return std::nullopt;
    case CubeExpr::BVar: return std::nullopt;
    case CubeExpr::Tuple: {
      auto l = sortOfPoint(e->a, zone);
      auto r = sortOfPoint(e->b, zone);
      if (!l || !r) return std::nullopt;
      return sortProduct(*l, *r);
    }
    case CubeExpr::Proj1: {
      auto s = sortOfPoint(e->a, zone);
      if (!s || (*s)->kind != CubeSort::Product) return std::nullopt;
      return (*s)->left;
    }
    case CubeExpr::Proj2: {
      auto s = sortOfPoint(e->a, zone);
      if (!s || (*s)->kind != CubeSort::Product) return std::nullopt;
      return (*s)->right;
    }
  }
  return std::nullopt;
}

CubePtr normalizePoint(const CubePtr& e,
                       const std::vector<std::pair<int, SortPtr>>& zone) {
  auto sort = sortOfPoint(e, zone);
  if (sort && (*sort)->kind == CubeSort::Unit) return cubeStar();
  switch (e->kind) {
    case CubeExpr::Star:
    case CubeExpr::Vertex0:
    case CubeExpr::Vertex1:
    case CubeExpr::BVar:
    case CubeExpr::FVar: return e;
    case CubeExpr::Tuple: {
      CubePtr a = normalizePoint(e->a, zone);
      CubePtr b = normalizePoint(e->b, zone);
      // tuple-eta: (pi1(t), pi2(t)) => t
      if (a->kind == CubeExpr::Proj1 && b->kind == CubeExpr::Proj2 &&
          cubeEqual(a->a, b->a))
        return a->a;
      if (a == e->a && b == e->b) return e;
      return cubeTuple(std::move(a), std::move(b));
    }
    case CubeExpr::Proj1: {
      CubePtr a = normalizePoint(e->a, zone);
      if (a->kind == CubeExpr::Tuple) return a->a;
      return a == e->a ? e : cubeProj1(std::move(a));
    }
    case CubeExpr::Proj2: {
      CubePtr a = normalizePoint(e->a, zone);
      if (a->kind == CubeExpr::Tuple) return a->b;
      return a == e->a ? e : cubeProj2(std::move(a));
    }
  }
  return e;
}

namespace {

constexpr int kMaxAtoms = 64;

// Internal formula representation over interned interval atoms.
// Atom 0 is the vertex 0, atom 1 is the vertex 1.
enum class NK : uint8_t { Top, Bot, And, Or, Eq, Le };
struct Node {
  NK k;
  int l = -1, r = -1;  // children for And/Or, atom ids for Eq/Le
};

struct Translation {
  const std::vector<std::pair<int, SortPtr>>& zone;
  std::vector<Node> arena;
  std::vector<CubePtr> atoms;  // normalized interval points

  explicit Translation(const std::vector<std::pair<int, SortPtr>>& z) : zone(z) {
    atoms.push_back(cubeV0());
    atoms.push_back(cubeV1());
  }

  int push(Node n) {
    arena.push_back(n);
    return static_cast<int>(arena.size()) - 1;
  }

  int atom(const CubePtr& e) {
    for (size_t i = 0; i < atoms.size(); ++i)
      if (cubeEqual(atoms[i], e)) return static_cast<int>(i);
    if (atoms.size() >= kMaxAtoms)
      throw std::runtime_error("tope solver: atom budget exceeded");
    atoms.push_back(e);
    return static_cast<int>(atoms.size()) - 1;
  }

  CubePtr component(const CubePtr& e, bool first) {
    if (e->kind == CubeExpr::Tuple) return first ? e->a : e->b;
    return first ? cubeProj1(e) : cubeProj2(e);
  }

  // Componentwise decomposition of an equality of normalized points.
  int eqNode(const CubePtr& a, const CubePtr& b, const SortPtr& sort) {
    switch (sort->kind) {
      case CubeSort::Unit: return push({NK::Top});
      case CubeSort::Interval: return push({NK::Eq, atom(a), atom(b)});
      case CubeSort::Product: {
        int l = eqNode(component(a, true), component(b, true), sort->left);
        int r = eqNode(component(a, false), component(b, false), sort->right);
        return push({NK::And, l, r});
      }
    }
    return push({NK::Top});
  }

  int tope(const TopePtr& t) {
    switch (t->kind) {
      case Tope::Top: return push({NK::Top});
      case Tope::Bottom: return push({NK::Bot});
      case Tope::Conj: return push({NK::And, tope(t->l), tope(t->r)});
      case Tope::Disj: return push({NK::Or, tope(t->l), tope(t->r)});
      case Tope::Eq: {
        CubePtr a = normalizePoint(t->ca, zone);
        CubePtr b = normalizePoint(t->cb, zone);
        auto sa = sortOfPoint(a, zone);
        if (!sa) throw std::runtime_error("tope solver: unsortable point");
        return eqNode(a, b, *sa);
      }
      case Tope::Leq: {
        CubePtr a = normalizePoint(t->ca, zone);
        CubePtr b = normalizePoint(t->cb, zone);
        return push({NK::Le, atom(a), atom(b)});
      }
    }
    return push({NK::Top});
  }
};

struct Closure {
  int n = 0;
  int parent[kMaxAtoms];
  uint64_t le[kMaxAtoms];  // le[i] bit j: i <= j (indexed by atom id)
  bool incon = false;

  void init(int atomCount) {
    n = atomCount;
    for (int i = 0; i < n; ++i) {
      parent[i] = i;
      // reflexivity, minimum and maximum axioms
      le[i] = (1ull << i) | (1ull << 1);
      le[0] |= (1ull << i);
    }
  }

  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }

  void addLe(int a, int b) { le[find(a)] |= (1ull << find(b)); }

  void addEq(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    le[a] |= le[b];
  }

  // Transitive closure + antisymmetry merges, to fixpoint.
  void saturate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i < n; ++i) {
        int ri = find(i);
        if (ri != i && le[i]) {  // fold stale rows into representatives
          if ((le[ri] | le[i]) != le[ri]) {
            le[ri] |= le[i];
            changed = true;
          }
          le[i] = 0;
        }
      }
      for (int i = 0; i < n; ++i) {
        if (find(i) != i) continue;
        uint64_t row = le[i];
        uint64_t next = row;
        uint64_t m = row;
        while (m) {
          int j = __builtin_ctzll(m);
          m &= m - 1;
          next |= le[find(j)];
        }
        if (next != row) {
          le[i] = next;
          changed = true;
        }
      }
      for (int i = 0; i < n; ++i) {
        if (find(i) != i) continue;
        for (int j = i + 1; j < n; ++j) {
          if (find(j) != j) continue;
          if (leq(i, j) && leq(j, i)) {
            addEq(i, j);
            changed = true;
          }
        }
      }
    }
    if (find(0) == find(1)) incon = true;
  }

  bool leq(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return true;
    uint64_t m = le[a];
    while (m) {
      int j = __builtin_ctzll(m);
      m &= m - 1;
      if (find(j) == b) return true;
    }
    return false;
  }

  bool eq(int a, int b) { return find(a) == find(b); }

  void canonical(std::string& out) const {
    Closure tmp = *this;
    out.clear();
    for (int i = 0; i < n; ++i) out.push_back(static_cast<char>(tmp.find(i)));
    for (int i = 0; i < n; ++i) {
      int ri = tmp.find(i);
      uint64_t repRow = 0;
      uint64_t m = tmp.le[ri];
      while (m) {
        int j = __builtin_ctzll(m);
        m &= m - 1;
        repRow |= 1ull << tmp.find(j);
      }
      for (int k = 0; k < 8; ++k)
        out.push_back(static_cast<char>((repRow >> (8 * k)) & 0xff));
    }
  }
};

struct Solver {
  const std::vector<Node>& arena;
  int atomCount;
  std::unordered_map<std::string, bool> memo;
  std::string keyBuf;

  bool goalHolds(Closure& cl, int g) {
    const Node& nd = arena[g];
    switch (nd.k) {
      case NK::Top: return true;
      case NK::Bot: return cl.incon;
      case NK::And: return goalHolds(cl, nd.l) && goalHolds(cl, nd.r);
      case NK::Eq: return cl.eq(nd.l, nd.r);
      case NK::Le: return cl.leq(nd.l, nd.r);
      case NK::Or: {
        if (goalHolds(cl, nd.l) || goalHolds(cl, nd.r)) return true;
        // Totality split on an undetermined pair of tracked points.
        int a = -1, b = -1;
        for (int i = 0; i < atomCount && a < 0; ++i)
          for (int j = i + 1; j < atomCount; ++j) {
            if (cl.eq(i, j) || cl.leq(i, j) || cl.leq(j, i)) continue;
            a = i;
            b = j;
            break;
          }
        if (a < 0) return false;
        cl.canonical(keyBuf);
        keyBuf.push_back(static_cast<char>(g & 0xff));
        keyBuf.push_back(static_cast<char>((g >> 8) & 0xff));
        auto it = memo.find(keyBuf);
        if (it != memo.end()) return it->second;
        std::string key = keyBuf;
        Closure left = cl;
        left.addLe(a, b);
        left.saturate();
        bool ok = left.incon || goalHolds(left, g);
        if (ok) {
          Closure right = cl;
          right.addLe(b, a);
          right.saturate();
          ok = right.incon || goalHolds(right, g);
        }
        memo.emplace(std::move(key), ok);
        return ok;
      }
    }
    return false;
  }

  // Splits the hypothesis worklist into DNF branches; every consistent branch
  // must entail the goal.
  bool branches(Closure cl, std::vector<int> work, int goal) {
    while (!work.empty()) {
      int id = work.back();
      work.pop_back();
      const Node& nd = arena[id];
      switch (nd.k) {
        case NK::Top: break;
        case NK::Bot: return true;  // vacuous branch
        case NK::And:
          work.push_back(nd.l);
          work.push_back(nd.r);
          break;
        case NK::Or: {
          std::vector<int> other = work;
          other.push_back(nd.r);
          work.push_back(nd.l);
          return branches(cl, std::move(work), goal) &&
                 branches(std::move(cl), std::move(other), goal);
        }
        case NK::Eq: cl.addEq(nd.l, nd.r); break;
        case NK::Le: cl.addLe(nd.l, nd.r); break;
      }
    }
    cl.saturate();
    if (cl.incon) return true;
    return goalHolds(cl, goal);
  }
};

}  // namespace

bool entails(const Sequent& seq) {
  Translation tr(seq.cubeZone);
  std::vector<int> hypNodes;
  hypNodes.reserve(seq.hypotheses.size());
  for (const auto& h : seq.hypotheses) hypNodes.push_back(tr.tope(h));
  int goal = tr.tope(seq.goal);
  int atomCount = static_cast<int>(tr.atoms.size());

  Closure base;
  base.init(atomCount);
  Solver solver{tr.arena, atomCount, {}, {}};
  return solver.branches(base, std::move(hypNodes), goal);
}

bool subshape(const Shape& sub, const Shape& super) {
  if (!sortEqual(sub.sort, super.sort))
    throw ShapeAlgebraError("subshape: differing cube sorts");
  int v = freshId();
  CubePtr point = cubeFVar(v, sub.var);
  Sequent seq;
  seq.cubeZone.emplace_back(v, sub.sort);
  seq.hypotheses.push_back(topeOpen(sub.tope, 0, point));
  seq.goal = topeOpen(super.tope, 0, point);
  return entails(seq);
}

bool shapesEquivalent(const Shape& a, const Shape& b) {
  return subshape(a, b) && subshape(b, a);
}

namespace {

struct LineLexer {
  const std::string& s;
  size_t pos = 0;

  void skipWs() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }

  bool eat(const char* tok) {
    skipWs();
    size_t len = std::char_traits<char>::length(tok);
    if (s.compare(pos, len, tok) == 0) {
      pos += len;
      return true;
    }
    return false;
  }

  bool peek(const char* tok) {
    skipWs();
    return s.compare(pos, std::char_traits<char>::length(tok), tok) == 0;
  }

  std::string ident() {
    skipWs();
    size_t start = pos;
    while (pos < s.size() &&
           (isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' ||
            s[pos] == '\''))
      ++pos;
    return s.substr(start, pos - start);
  }
};

struct LineParser {
  LineLexer lex;
  std::vector<std::pair<std::string, int>> vars;
  SequentParseError* err;
  bool failed = false;

  void fail(const std::string& msg) {
    if (!failed && err) {
      err->message = msg;
      err->column = static_cast<int>(lex.pos) + 1;
    }
    failed = true;
  }

  CubePtr point() {
    if (lex.eat("0_2") || lex.eat("0\xe2\x82\x82")) return cubeV0();
    if (lex.eat("1_2") || lex.eat("1\xe2\x82\x82")) return cubeV1();
    std::string name = lex.ident();
    if (name.empty()) {
      fail("expected a point");
      return cubeV0();
    }
    for (auto& [n, id] : vars)
      if (n == name) return cubeFVar(id, name);
    int id = freshId();
    vars.emplace_back(name, id);
    return cubeFVar(id, name);
  }

  TopePtr atom() {
    if (lex.eat("TOP") || lex.eat("\xe2\x8a\xa4")) return topeTop();
    if (lex.eat("BOT") || lex.eat("\xe2\x8a\xa5")) return topeBottom();
    if (lex.eat("(")) {
      TopePtr t = tope();
      if (!lex.eat(")")) fail("expected ')'");
      return t;
    }
    CubePtr a = point();
    if (lex.eat("===") || lex.eat("\xe2\x89\xa1")) return topeEq(a, point());
    if (lex.eat("<=") || lex.eat("\xe2\x89\xa4")) return topeLeq(a, point());
    fail("expected '===' or '<='");
    return topeTop();
  }

  TopePtr conj() {
    TopePtr t = atom();
    while (lex.eat("/\\") || lex.eat("\xe2\x88\xa7")) t = topeConj(t, atom());
    return t;
  }

  TopePtr tope() {
    TopePtr t = conj();
    while (lex.eat("\\/") || lex.eat("\xe2\x88\xa8")) t = topeDisj(t, conj());
    return t;
  }
};

}  // namespace

std::optional<Sequent> parseSequentLine(const std::string& line,
                                        SequentParseError* err) {
  LineParser p{LineLexer{line}, {}, err};
  Sequent seq;
  p.lex.skipWs();
  if (!p.lex.peek("|-") && !p.lex.peek("\xe2\x8a\xa2")) {
    seq.hypotheses.push_back(p.tope());
    while (p.lex.eat(",")) seq.hypotheses.push_back(p.tope());
  }
  if (!p.lex.eat("|-") && !p.lex.eat("\xe2\x8a\xa2")) p.fail("expected '|-'");
  seq.goal = p.tope();
  p.lex.skipWs();
  if (p.lex.pos != line.size()) p.fail("trailing input");
  if (p.failed) return std::nullopt;
  for (auto& [name, id] : p.vars) seq.cubeZone.emplace_back(id, sortInterval());
  return seq;
}

}  // namespace sstt
