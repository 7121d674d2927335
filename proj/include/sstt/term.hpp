#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sstt/cube.hpp"
#include "sstt/span.hpp"

namespace sstt {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// What a Pi/lambda binder ranges over.
enum class Dom : uint8_t {
  Type,   // ordinary type domain
  Cube,   // a bare cube sort
  Shape,  // cube sort constrained by a tope
  None,   // unannotated lambda
};

// The unified layer-3 language. Surface-only kinds (ProductT, TopeLit
// connectives applied to terms, unresolved cube syntax) are removed by
// elaboration in the checker.
enum class TK : uint8_t {
  Universe,  // level
  CubeUni,   // the token CUBE
  TopeUni,   // the token TOPE
  SortT,     // a cube sort used as a term (e.g. the 2 in (t : 2) -> A)
  CubeT,     // an embedded cube expression
  TopeT,     // an embedded tope (shape-definition bodies)
  Pi,        // dom fields + binder hint; a = codomain (under binder)
  Lam,       // optional dom annotation; a = body (under binder)
  App,       // a = fn, b = arg (b is CubeT for cube/shape applications)
  Sigma,     // domType = first component type; a = second (under binder)
  PairT,     // a, b
  First,     // a
  Second,    // a
  IdT,       // domType = optional ambient type; a, b = endpoints
  Refl,      // domType = optional ambient; a = optional point
  IdJ,       // args = ambient, base, motive, baseCase, endpoint, path
  UnitT,
  UnitElem,
  RecBot,
  RecOr,     // clauses
  Restrict,  // a = carrier; clauses
  BVar,      // level = de Bruijn index
  FVar,      // level = unique id
  Global,    // name
  ProductT,  // surface-only: a x b, resolved to a cube product or a Sigma
  TopeAndT,  // surface-only tope connectives over terms
  TopeOrT,
  TopeEqT,
  TopeLeqT,
  ShapeDomT,  // surface-only explicit shape domain: a = sort expr, b = tope expr
};

// Clause topes are Terms: TopeT nodes after elaboration, arbitrary tope
// expressions (including shape applications) at the surface.
using Clause = std::pair<TermPtr, TermPtr>;

struct Term {
  TK kind;
  int level = 0;
  std::string name;  // binder hint or global name
  Dom dom = Dom::None;
  TermPtr domType;
  SortPtr sort;   // Dom::Cube/Shape domain sort, SortT payload
  TopePtr tope;   // Dom::Shape tope (under binder), TopeT payload
  CubePtr cube;   // CubeT payload
  TermPtr a, b;   // surface shape binders keep their tope expression in b
  std::vector<TermPtr> args;
  std::vector<Clause> clauses;
  SourceSpan span;
};

TermPtr mkTerm(Term t);
TermPtr tUniverse(int level = 0);
TermPtr tCubeUni();
TermPtr tTopeUni();
TermPtr tSortT(SortPtr s);
TermPtr tCubeT(CubePtr c);
TermPtr tTopeT(TopePtr t);
TermPtr tPiType(std::string hint, TermPtr domType, TermPtr codom);
TermPtr tPiCube(std::string hint, SortPtr sort, TermPtr codom);
TermPtr tPiShape(std::string hint, SortPtr sort, TopePtr tope, TermPtr codom);
TermPtr tLam(std::string hint, TermPtr body);
TermPtr tApp(TermPtr fn, TermPtr arg);
TermPtr tSigma(std::string hint, TermPtr domType, TermPtr codom);
TermPtr tPair(TermPtr a, TermPtr b);
TermPtr tFirst(TermPtr a);
TermPtr tSecond(TermPtr a);
TermPtr tIdT(TermPtr ambient, TermPtr a, TermPtr b);
TermPtr tRefl(TermPtr ambient = nullptr, TermPtr point = nullptr);
TermPtr tIdJ(std::vector<TermPtr> args);
TermPtr tUnitT();
TermPtr tUnitElem();
TermPtr tRecBot();
TermPtr tRecOr(std::vector<Clause> clauses);
TermPtr tRestrict(TermPtr carrier, std::vector<Clause> clauses);
TermPtr tBVar(int index, std::string hint);
TermPtr tFVar(int id, std::string hint);
TermPtr tGlobal(std::string name);

// Alpha-equivalence: structural equality ignoring hints and spans.
bool termEqual(const TermPtr& a, const TermPtr& b);

TermPtr termShift(const TermPtr& t, int delta, int cutoff);

// Open the body of a binder, replacing bound index `depth` with a term
// or a cube point. Values must be locally closed; capture cannot occur.
TermPtr termOpen(const TermPtr& t, int depth, const TermPtr& value);
TermPtr termOpenCube(const TermPtr& t, int depth, const CubePtr& value);

// Capture-avoiding substitution of free variables.
TermPtr termSubstFree(const TermPtr& t, int id, const TermPtr& value);
TermPtr termSubstFreeCube(const TermPtr& t, int id, const CubePtr& value);

// Abstract a free variable into bound index `depth`.
TermPtr termClose(const TermPtr& t, int id, int depth);

void termFreeVars(const TermPtr& t, std::vector<int>& out);
void termGlobals(const TermPtr& t, std::vector<std::string>& out);

// --- Declarations and contexts -------------------------------------------

struct Param {
  std::string name;
  TermPtr type;  // surface term: a type, cube sort, or shape expression
  SourceSpan span;
};

struct Declaration {
  enum Kind { Def, Postulate, Assume, Check, Compute, SectionBegin, SectionEnd } kind;
  std::string name;
  std::vector<Param> params;
  TermPtr statedType;        // Def/Postulate/Assume; Check's expected type
  TermPtr body;              // Def; Check/Compute's subject
  SourceSpan span;
};

struct RawModule {
  std::string languageVersion;
  std::vector<Declaration> declarations;
};

struct CheckedDeclaration {
  std::string name;
  TermPtr type;              // elaborated, closed
  TermPtr body;              // elaborated, closed; null for postulates
  bool isAssumption = false;
  SourceSpan span;
  // Shape definitions (type I -> TOPE) are stored at the tope layer.
  bool isShape = false;
  SortPtr shapeSort;
  TopePtr shapeTope;  // under the shape binder
};

class Signature {
 public:
  const CheckedDeclaration* find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &decls_[it->second];
  }
  void add(CheckedDeclaration d) {
    index_[d.name] = decls_.size();
    decls_.push_back(std::move(d));
  }
  const std::vector<CheckedDeclaration>& all() const { return decls_; }

 private:
  std::vector<CheckedDeclaration> decls_;
  std::map<std::string, size_t> index_;
};

// Installs the built-in shape literals recognized by the surface syntax.
void installBuiltinShapes(Signature& sig);

struct CtxEntry {
  bool isCube;
  int id;
  std::string name;
  SortPtr sort;  // cube entries
  TermPtr type;  // term entries
};

// The three-zone context Xi | Phi | Gamma. Entries are interleaved in
// binding order; the zones are the cube/term projections of that order.
struct TriContext {
  std::vector<CtxEntry> entries;
  std::vector<TopePtr> topeZone;
  const Signature* sig = nullptr;

  const CtxEntry* lookup(int id) const {
    for (auto it = entries.rbegin(); it != entries.rend(); ++it)
      if (it->id == id) return &*it;
    return nullptr;
  }

  int pushCube(std::string name, SortPtr sort) {
    int id = freshId();
    entries.push_back({true, id, std::move(name), std::move(sort), nullptr});
    return id;
  }
  int pushTerm(std::string name, TermPtr type) {
    int id = freshId();
    entries.push_back({false, id, std::move(name), nullptr, std::move(type)});
    return id;
  }
  void pushTope(TopePtr t) { topeZone.push_back(std::move(t)); }

  std::vector<std::pair<int, SortPtr>> cubeZone() const {
    std::vector<std::pair<int, SortPtr>> out;
    for (const auto& e : entries)
      if (e.isCube) out.emplace_back(e.id, e.sort);
    return out;
  }
};

}  // namespace sstt
