#include "sstt/cube.hpp"
#include "sstt/solver.hpp"

namespace sstt {

Shape shapeUnion(const Shape& a, const Shape& b) {
  if (!sortEqual(a.sort, b.sort))
    throw ShapeAlgebraError("shape union: differing cube sorts");
  return {a.var, a.sort, topeDisj(a.tope, b.tope)};
}

Shape shapeProduct(const Shape& a, const Shape& b) {
  SortPtr sort = sortProduct(a.sort, b.sort);
  CubePtr v = cubeBVar(0, a.var + b.var);
  TopePtr left = topeOpen(a.tope, 0, cubeProj1(v));
  TopePtr right = topeOpen(b.tope, 0, cubeProj2(v));
  return {a.var + b.var, sort, topeConj(std::move(left), std::move(right))};
}

Shape pushoutProduct(const Shape& subA, const Shape& superA, const Shape& subB,
                     const Shape& superB) {
  if (!subshape(subA, superA))
    throw ShapeAlgebraError("pushout product: first shape is not a subshape");
  if (!subshape(subB, superB))
    throw ShapeAlgebraError("pushout product: second shape is not a subshape");
  SortPtr sort = sortProduct(superA.sort, superB.sort);
  CubePtr v = cubeBVar(0, superA.var + superB.var);
  CubePtr p1 = cubeProj1(v);
  CubePtr p2 = cubeProj2(v);
  TopePtr left = topeConj(topeOpen(subA.tope, 0, p1), topeOpen(superB.tope, 0, p2));
  TopePtr right = topeConj(topeOpen(superA.tope, 0, p1), topeOpen(subB.tope, 0, p2));
  return {superA.var + superB.var, sort, topeDisj(std::move(left), std::move(right))};
}

}  // namespace sstt
