#pragma once

#include <optional>

#include "sstt/solver.hpp"
#include "sstt/term.hpp"

namespace sstt {

// Thrown when the step budget runs out; callers convert it to an E-FUEL
// diagnostic. Exhaustion is an error, never a silent wrong answer.
struct FuelExhausted {};

struct EvalEnv {
  TriContext* ctx = nullptr;
  long* fuel = nullptr;
  bool typeInType = false;

  void spend() {
    if (--(*fuel) < 0) throw FuelExhausted{};
  }
};

// Phi |- goal under the context's cube and tope zones.
bool topeHolds(const TriContext& ctx, const TopePtr& goal);
bool zoneInconsistent(const TriContext& ctx);
bool cubesEqualUnder(const TriContext& ctx, const CubePtr& a, const CubePtr& b);

// Weak-head normalization. Global heads are kept folded; use whnfUnfold when
// the caller needs to see through definitions (e.g. to find a Pi).
TermPtr whnf(EvalEnv& env, TermPtr t);
TermPtr whnfUnfold(EvalEnv& env, TermPtr t);

// Type of a neutral term (variable/global applied to a spine), if available.
std::optional<TermPtr> typeOfNeutral(EvalEnv& env, const TermPtr& t);

// Tope-context-sensitive definitional equality, type-directed when `type`
// is non-null.
bool defEqual(EvalEnv& env, const TermPtr& type, const TermPtr& a,
              const TermPtr& b);

// Shared with the subtype check: every clause on the right must be honored
// by the clauses on the left under the current tope zone.
bool clausesSubsume(EvalEnv& env, const std::vector<Clause>& left,
                    const std::vector<Clause>& right);

// Helpers for elaborated clause topes (always TopeT nodes in core terms).
inline TopePtr clauseTope(const Clause& c) { return c.first->tope; }

}  // namespace sstt
