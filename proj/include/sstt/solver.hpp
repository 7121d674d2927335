#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sstt/cube.hpp"

namespace sstt {

// A tope-layer sequent Xi | Phi |- psi. Cube variables are free (FVar ids)
// with their sorts listed in the zone.
struct Sequent {
  std::vector<std::pair<int, SortPtr>> cubeZone;  // (FVar id, sort)
  std::vector<TopePtr> hypotheses;
  TopePtr goal;
};

// Rewrites a point to the normal form used by the decision procedure:
// projections pushed through tuples, tuple-eta applied, and every expression
// of sort 1 collapsed to the point. `sortOf` must resolve free variables.
CubePtr normalizePoint(const CubePtr& e,
                       const std::vector<std::pair<int, SortPtr>>& zone);

std::optional<SortPtr> sortOfPoint(const CubePtr& e,
                                   const std::vector<std::pair<int, SortPtr>>& zone);

// Decides Xi | Phi |- psi over weak-order models of the strict interval.
// Total: always returns an answer.
bool entails(const Sequent& seq);

// sub and super must live over the same cube sort.
bool subshape(const Shape& sub, const Shape& super);
bool shapesEquivalent(const Shape& a, const Shape& b);

// ASCII sequent grammar for the `solve` subcommand and the fuzz harness:
//   x <= y, y <= z |- x <= z
// Connectives: /\ \/ TOP BOT === <= (unicode forms also accepted); vertex
// literals 0_2 and 1_2. All variables are interval-sorted.
struct SequentParseError {
  std::string message;
  int column = 0;
};
std::optional<Sequent> parseSequentLine(const std::string& line,
                                        SequentParseError* err = nullptr);

}  // namespace sstt
