#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sstt {

struct CubeSort;
struct CubeExpr;
struct Tope;
using SortPtr = std::shared_ptr<const CubeSort>;
using CubePtr = std::shared_ptr<const CubeExpr>;
using TopePtr = std::shared_ptr<const Tope>;

// Layer 1: cube sorts are finite binary trees over 1 and 2.
struct CubeSort {
  enum Kind { Unit, Interval, Product } kind;
  SortPtr left, right;  // Product only
};

SortPtr sortUnit();
SortPtr sortInterval();
SortPtr sortProduct(SortPtr l, SortPtr r);
bool sortEqual(const SortPtr& a, const SortPtr& b);
std::string showSort(const SortPtr& s);

// Points of cubes. Variables are either bound (de Bruijn index into the
// enclosing term-level binders) or free (unique id resolved via a context).
struct CubeExpr {
  enum Kind { Star, Vertex0, Vertex1, BVar, FVar, Tuple, Proj1, Proj2 } kind;
  int index = 0;     // BVar index / FVar id
  std::string hint;  // variable display name
  CubePtr a, b;
};

CubePtr cubeStar();
CubePtr cubeV0();
CubePtr cubeV1();
CubePtr cubeBVar(int index, std::string hint);
CubePtr cubeFVar(int id, std::string hint);
CubePtr cubeTuple(CubePtr a, CubePtr b);
CubePtr cubeProj1(CubePtr a);
CubePtr cubeProj2(CubePtr a);

// Layer 2: topes. No negation or implication exists at this layer.
struct Tope {
  enum Kind { Top, Bottom, Conj, Disj, Eq, Leq } kind;
  TopePtr l, r;    // Conj/Disj
  CubePtr ca, cb;  // Eq/Leq
};

TopePtr topeTop();
TopePtr topeBottom();
TopePtr topeConj(TopePtr l, TopePtr r);
TopePtr topeDisj(TopePtr l, TopePtr r);
TopePtr topeEq(CubePtr a, CubePtr b);
TopePtr topeLeq(CubePtr a, CubePtr b);

// A shape carves a subpolytope out of a single cube; the tope mentions the
// shape variable as BVar 0.
struct Shape {
  std::string var;
  SortPtr sort;
  TopePtr tope;  // under the binder: the shape variable is BVar 0
};

// Structural equality (hints ignored).
bool cubeEqual(const CubePtr& a, const CubePtr& b);
bool topeEqual(const TopePtr& a, const TopePtr& b);

// de Bruijn shift on bound variables >= cutoff.
CubePtr cubeShift(const CubePtr& e, int delta, int cutoff);
TopePtr topeShift(const TopePtr& t, int delta, int cutoff);

// Replace the bound variable at `depth` by `value` (which must be locally
// closed); used to open binders.
CubePtr cubeOpen(const CubePtr& e, int depth, const CubePtr& value);
TopePtr topeOpen(const TopePtr& t, int depth, const CubePtr& value);

// Capture-avoiding substitution for free cube variables.
CubePtr cubeSubstFree(const CubePtr& e, int id, const CubePtr& value);
TopePtr topeSubstFree(const TopePtr& t, int id, const CubePtr& value);

// Abstract a free variable back into a bound one at `depth`.
CubePtr cubeClose(const CubePtr& e, int id, int depth);
TopePtr topeClose(const TopePtr& t, int id, int depth);

void cubeFreeVars(const CubePtr& e, std::vector<int>& out);
void topeFreeVars(const TopePtr& t, std::vector<int>& out);

// Fresh id supply for free variables of all layers.
int freshId();

struct ShapeAlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Shape shapeUnion(const Shape& a, const Shape& b);
Shape shapeProduct(const Shape& a, const Shape& b);
// Pushout product of subA (of superA) and subB (of superB); the subshape
// preconditions are checked with the tope solver.
Shape pushoutProduct(const Shape& subA, const Shape& superA, const Shape& subB,
                     const Shape& superB);

// Built-in shapes.
Shape shapeDelta1();     // {t : 2 | TOP}
Shape shapeDelta2();     // {(t, s) : 2 x 2 | s <= t}
Shape shapeDelta3();     // {(t, (s, r)) : 2 x (2 x 2) | r <= s /\ s <= t}
Shape shapeBoundary1();  // {t : 2 | t = 0 \/ t = 1}
Shape shapeHorn21();     // {(t, s) : 2 x 2 | t = 1 \/ s = 0}

}  // namespace sstt
