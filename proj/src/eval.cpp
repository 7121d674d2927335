#include "sstt/eval.hpp"

namespace sstt {

namespace {

// Restores context size on scope exit (fresh variables and tope hypotheses
// pushed during eta expansion and case splits).
struct CtxGuard {
  TriContext& ctx;
  size_t entries, topes;
  explicit CtxGuard(TriContext& c)
      : ctx(c), entries(c.entries.size()), topes(c.topeZone.size()) {}
  ~CtxGuard() {
    ctx.entries.resize(entries);
    ctx.topeZone.resize(topes);
  }
};

bool isNeutralKind(TK k) {
  switch (k) {
    case TK::FVar:
    case TK::Global:
    case TK::App:
    case TK::First:
    case TK::Second:
    case TK::IdJ:
      return true;
    default:
      return false;
  }
}

const CheckedDeclaration* globalDecl(const TriContext* ctx, const std::string& n) {
  if (!ctx || !ctx->sig) return nullptr;
  return ctx->sig->find(n);
}

}  // namespace

bool topeHolds(const TriContext& ctx, const TopePtr& goal) {
  Sequent seq;
  seq.cubeZone = ctx.cubeZone();
  seq.hypotheses = ctx.topeZone;
  seq.goal = goal;
  return entails(seq);
}

bool zoneInconsistent(const TriContext& ctx) {
  return topeHolds(ctx, topeBottom());
}

bool cubesEqualUnder(const TriContext& ctx, const CubePtr& a, const CubePtr& b) {
  return topeHolds(ctx, topeEq(a, b));
}

std::optional<TermPtr> typeOfNeutral(EvalEnv& env, const TermPtr& t) {
  switch (t->kind) {
    case TK::FVar: {
      const CtxEntry* e = env.ctx->lookup(t->level);
      if (e && !e->isCube && e->type) return e->type;
      return std::nullopt;
    }
    case TK::Global: {
      const CheckedDeclaration* d = globalDecl(env.ctx, t->name);
      if (d && !d->isShape && d->type) return d->type;
      return std::nullopt;
    }
    case TK::App: {
      auto fnTy = typeOfNeutral(env, t->a);
      if (!fnTy) return std::nullopt;
      TermPtr ty = whnfUnfold(env, *fnTy);
      if (ty->kind != TK::Pi) return std::nullopt;
      if (ty->dom == Dom::Type) return termOpen(ty->a, 0, t->b);
      if (t->b->kind != TK::CubeT) return std::nullopt;
      return termOpenCube(ty->a, 0, t->b->cube);
    }
    case TK::First: {
      auto ty = typeOfNeutral(env, t->a);
      if (!ty) return std::nullopt;
      TermPtr w = whnfUnfold(env, *ty);
      if (w->kind == TK::Restrict) w = w->a;
      if (w->kind != TK::Sigma) return std::nullopt;
      return w->domType;
    }
    case TK::Second: {
      auto ty = typeOfNeutral(env, t->a);
      if (!ty) return std::nullopt;
      TermPtr w = whnfUnfold(env, *ty);
      if (w->kind == TK::Restrict) w = w->a;
      if (w->kind != TK::Sigma) return std::nullopt;
      return termOpen(w->a, 0, tFirst(t->a));
    }
    case TK::IdJ: {
      if (t->args.size() != 6) return std::nullopt;
      return tApp(tApp(t->args[2], t->args[4]), t->args[5]);
    }
    default:
      return std::nullopt;
  }
}

namespace {

// If a neutral term's type is a restriction whose clause tope holds in the
// current tope zone, the term is judgmentally the clause value (the strict
// part of extension types).
TermPtr dischargeByType(EvalEnv& env, const TermPtr& neutral) {
  auto ty = typeOfNeutral(env, neutral);
  if (!ty) return nullptr;
  TermPtr w = whnfUnfold(env, *ty);
  if (w->kind != TK::Restrict) return nullptr;
  for (const auto& c : w->clauses) {
    if (!c.first || c.first->kind != TK::TopeT) continue;
    if (topeHolds(*env.ctx, c.first->tope)) return c.second;
  }
  return nullptr;
}

}  // namespace

TermPtr whnf(EvalEnv& env, TermPtr t) {
  while (true) {
    switch (t->kind) {
      case TK::App: {
        TermPtr fn = whnf(env, t->a);
        // unfold definitions in function position until a lambda appears
        TermPtr fnU = fn;
        while (fnU->kind == TK::Global) {
          const CheckedDeclaration* d = globalDecl(env.ctx, fnU->name);
          if (d && d->body) {
            env.spend();
            fnU = whnf(env, d->body);
          } else {
            break;
          }
        }
        if (fnU->kind == TK::Lam) {
          env.spend();
          t = t->b->kind == TK::CubeT ? termOpenCube(fnU->a, 0, t->b->cube)
                                      : termOpen(fnU->a, 0, t->b);
          continue;
        }
        TermPtr res = fn == t->a ? t : tApp(fn, t->b);
        if (TermPtr pinned = dischargeByType(env, res)) {
          env.spend();
          t = pinned;
          continue;
        }
        return res;
      }
      case TK::First:
      case TK::Second: {
        bool firstProj = t->kind == TK::First;
        TermPtr p = whnf(env, t->a);
        TermPtr pU = p;
        while (pU->kind == TK::Global) {
          const CheckedDeclaration* d = globalDecl(env.ctx, pU->name);
          if (d && d->body) {
            env.spend();
            pU = whnf(env, d->body);
          } else {
            break;
          }
        }
        if (pU->kind == TK::PairT) {
          env.spend();
          t = firstProj ? pU->a : pU->b;
          continue;
        }
        TermPtr res = p == t->a ? t : (firstProj ? tFirst(p) : tSecond(p));
        if (TermPtr pinned = dischargeByType(env, res)) {
          env.spend();
          t = pinned;
          continue;
        }
        return res;
      }
      case TK::IdJ: {
        TermPtr path = whnf(env, t->args[5]);
        if (path->kind == TK::Refl) {
          env.spend();
          t = t->args[3];
          continue;
        }
        if (path == t->args[5]) {
          if (TermPtr pinned = dischargeByType(env, t)) {
            env.spend();
            t = pinned;
            continue;
          }
          return t;
        }
        Term n = *t;
        n.args[5] = path;
        t = mkTerm(std::move(n));
        if (TermPtr pinned = dischargeByType(env, t)) {
          env.spend();
          t = pinned;
          continue;
        }
        return t;
      }
      case TK::RecOr: {
        // clause selection under the tope zone
        bool progressed = false;
        for (const auto& c : t->clauses) {
          if (c.first->kind == TK::TopeT && topeHolds(*env.ctx, c.first->tope)) {
            env.spend();
            t = c.second;
            progressed = true;
            break;
          }
        }
        if (progressed) continue;
        // recOR(a, a) == a when every clause carries the same value
        bool allSame = true;
        for (size_t i = 1; i < t->clauses.size(); ++i)
          if (!termEqual(t->clauses[0].second, t->clauses[i].second)) {
            allSame = false;
            break;
          }
        if (allSame && !t->clauses.empty()) {
          env.spend();
          t = t->clauses[0].second;
          continue;
        }
        return t;
      }
      case TK::FVar: {
        if (TermPtr pinned = dischargeByType(env, t)) {
          env.spend();
          t = pinned;
          continue;
        }
        return t;
      }
      case TK::Global: {
        const CheckedDeclaration* d = globalDecl(env.ctx, t->name);
        if (d && !d->isShape) {
          if (TermPtr pinned = dischargeByType(env, t)) {
            env.spend();
            t = pinned;
            continue;
          }
        }
        return t;
      }
      default:
        return t;
    }
  }
}

TermPtr whnfUnfold(EvalEnv& env, TermPtr t) {
  while (true) {
    t = whnf(env, t);
    if (t->kind == TK::Global) {
      const CheckedDeclaration* d = globalDecl(env.ctx, t->name);
      if (d && d->body) {
        env.spend();
        t = d->body;
        continue;
      }
    }
    return t;
  }
}

namespace {

// One unfolding step at the head of a neutral spine; null if nothing unfolds.
TermPtr unfoldHead(EvalEnv& env, const TermPtr& t) {
  if (t->kind == TK::Global) {
    const CheckedDeclaration* d = globalDecl(env.ctx, t->name);
    if (d && d->body) return d->body;
    return nullptr;
  }
  if (t->kind == TK::App || t->kind == TK::First || t->kind == TK::Second) {
    TermPtr inner = unfoldHead(env, t->a);
    if (!inner) return nullptr;
    Term n = *t;
    n.a = inner;
    return mkTerm(std::move(n));
  }
  return nullptr;
}

bool equalTopesUnder(EvalEnv& env, const TopePtr& a, const TopePtr& b) {
  CtxGuard g(*env.ctx);
  env.ctx->pushTope(a);
  if (!topeHolds(*env.ctx, b)) return false;
  env.ctx->topeZone.back() = b;
  return topeHolds(*env.ctx, a);
}

bool structEqual(EvalEnv& env, const TermPtr& type, const TermPtr& a,
                 const TermPtr& b);

// Case split on the clause topes of a stuck recOR.
bool splitOnClauses(EvalEnv& env, const TermPtr& type, const TermPtr& a,
                    const TermPtr& b, const std::vector<Clause>& clauses) {
  for (const auto& c : clauses) {
    if (c.first->kind != TK::TopeT) return false;
    CtxGuard g(*env.ctx);
    env.ctx->pushTope(c.first->tope);
    if (zoneInconsistent(*env.ctx)) continue;
    if (!defEqual(env, type, a, b)) return false;
  }
  return true;
}

bool spineEqual(EvalEnv& env, const TermPtr& a, const TermPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TK::FVar: return a->level == b->level;
    case TK::Global: return a->name == b->name;
    case TK::App: {
      if (!spineEqual(env, a->a, b->a)) return false;
      bool ac = a->b->kind == TK::CubeT;
      bool bc = b->b->kind == TK::CubeT;
      if (ac != bc) return false;
      if (ac) return cubesEqualUnder(*env.ctx, a->b->cube, b->b->cube);
      return defEqual(env, nullptr, a->b, b->b);
    }
    case TK::First:
    case TK::Second: return spineEqual(env, a->a, b->a);
    case TK::IdJ: {
      if (a->args.size() != b->args.size()) return false;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (!defEqual(env, nullptr, a->args[i], b->args[i])) return false;
      return true;
    }
    default: return false;
  }
}

// Fresh variable for the binder of an elaborated Pi/Lam; pushes context
// entries (and the shape tope) and returns the variable as a term.
TermPtr openBinder(EvalEnv& env, const Term& binder) {
  if (binder.dom == Dom::Cube || binder.dom == Dom::Shape) {
    int id = env.ctx->pushCube(binder.name, binder.sort);
    CubePtr v = cubeFVar(id, binder.name);
    if (binder.dom == Dom::Shape && binder.tope)
      env.ctx->pushTope(topeOpen(binder.tope, 0, v));
    return tCubeT(v);
  }
  int id = env.ctx->pushTerm(binder.name, binder.domType);
  return tFVar(id, binder.name);
}

TermPtr applyBinder(const TermPtr& body, const TermPtr& var) {
  return var->kind == TK::CubeT ? termOpenCube(body, 0, var->cube)
                                : termOpen(body, 0, var);
}

bool piCompatible(const Term& x, const Term& y) {
  auto kindOf = [](const Term& t) {
    // a bare cube domain behaves like a shape domain with the true tope
    return t.dom == Dom::Cube ? Dom::Shape : t.dom;
  };
  return kindOf(x) == kindOf(y);
}

TopePtr shapeTopeOf(const Term& pi) {
  if (pi.dom == Dom::Cube || !pi.tope) return topeTop();
  return pi.tope;
}

bool structEqual(EvalEnv& env, const TermPtr& type, const TermPtr& a,
                 const TermPtr& b) {
  env.spend();
  TermPtr wa = whnf(env, a);
  TermPtr wb = whnf(env, b);

  // eta for lambdas against neutrals
  if (wa->kind == TK::Lam || wb->kind == TK::Lam) {
    const TermPtr& lam = wa->kind == TK::Lam ? wa : wb;
    CtxGuard g(*env.ctx);
    TermPtr v = openBinder(env, *lam);
    TermPtr la = wa->kind == TK::Lam ? applyBinder(wa->a, v) : tApp(wa, v);
    TermPtr lb = wb->kind == TK::Lam ? applyBinder(wb->a, v) : tApp(wb, v);
    return defEqual(env, nullptr, la, lb);
  }
  // eta for pairs
  if (wa->kind == TK::PairT || wb->kind == TK::PairT) {
    TermPtr a1 = wa->kind == TK::PairT ? wa->a : tFirst(wa);
    TermPtr a2 = wa->kind == TK::PairT ? wa->b : tSecond(wa);
    TermPtr b1 = wb->kind == TK::PairT ? wb->a : tFirst(wb);
    TermPtr b2 = wb->kind == TK::PairT ? wb->b : tSecond(wb);
    return defEqual(env, nullptr, a1, b1) && defEqual(env, nullptr, a2, b2);
  }
  // a stuck recOR: case split on its clause topes
  if (wa->kind == TK::RecOr) return splitOnClauses(env, type, wa, wb, wa->clauses);
  if (wb->kind == TK::RecOr) return splitOnClauses(env, type, wa, wb, wb->clauses);

  if (wa->kind != wb->kind) {
    TermPtr ua = unfoldHead(env, wa);
    TermPtr ub = unfoldHead(env, wb);
    if (ua || ub) {
      env.spend();
      return structEqual(env, type, ua ? ua : wa, ub ? ub : wb);
    }
    return false;
  }

  switch (wa->kind) {
    case TK::Universe: return wa->level == wb->level;
    case TK::CubeUni:
    case TK::TopeUni:
    case TK::UnitT:
    case TK::UnitElem:
    case TK::RecBot:
    case TK::Refl: return true;
    case TK::SortT: return sortEqual(wa->sort, wb->sort);
    case TK::CubeT: return cubesEqualUnder(*env.ctx, wa->cube, wb->cube);
    case TK::TopeT: return equalTopesUnder(env, wa->tope, wb->tope);
    case TK::Pi: {
      if (!piCompatible(*wa, *wb)) return false;
      if (wa->dom == Dom::Type) {
        if (!defEqual(env, nullptr, wa->domType, wb->domType)) return false;
        CtxGuard g(*env.ctx);
        TermPtr v = openBinder(env, *wa);
        return defEqual(env, nullptr, applyBinder(wa->a, v),
                        applyBinder(wb->a, v));
      }
      if (!sortEqual(wa->sort, wb->sort)) return false;
      CtxGuard g(*env.ctx);
      int id = env.ctx->pushCube(wa->name, wa->sort);
      CubePtr v = cubeFVar(id, wa->name);
      TopePtr ta = topeOpen(shapeTopeOf(*wa), 0, v);
      TopePtr tb = topeOpen(shapeTopeOf(*wb), 0, v);
      if (!equalTopesUnder(env, ta, tb)) return false;
      env.ctx->pushTope(ta);
      return defEqual(env, nullptr, termOpenCube(wa->a, 0, v),
                      termOpenCube(wb->a, 0, v));
    }
    case TK::Sigma: {
      if (!defEqual(env, nullptr, wa->domType, wb->domType)) return false;
      CtxGuard g(*env.ctx);
      int id = env.ctx->pushTerm(wa->name, wa->domType);
      TermPtr v = tFVar(id, wa->name);
      return defEqual(env, nullptr, termOpen(wa->a, 0, v),
                      termOpen(wb->a, 0, v));
    }
    case TK::IdT: {
      if (wa->domType && wb->domType &&
          !defEqual(env, nullptr, wa->domType, wb->domType))
        return false;
      return defEqual(env, nullptr, wa->a, wb->a) &&
             defEqual(env, nullptr, wa->b, wb->b);
    }
    case TK::Restrict: {
      if (!defEqual(env, nullptr, wa->a, wb->a)) return false;
      return clausesSubsume(env, wa->clauses, wb->clauses) &&
             clausesSubsume(env, wb->clauses, wa->clauses);
    }
    case TK::FVar:
    case TK::Global:
    case TK::App:
    case TK::First:
    case TK::Second:
    case TK::IdJ: {
      if (spineEqual(env, wa, wb)) return true;
      TermPtr ua = unfoldHead(env, wa);
      TermPtr ub = unfoldHead(env, wb);
      if (ua || ub) {
        env.spend();
        return structEqual(env, type, ua ? ua : wa, ub ? ub : wb);
      }
      return false;
    }
    default:
      return termEqual(wa, wb);
  }
}

}  // namespace

bool clausesSubsume(EvalEnv& env, const std::vector<Clause>& left,
                    const std::vector<Clause>& right) {
  for (const auto& rc : right) {
    if (rc.first->kind != TK::TopeT) return false;
    CtxGuard g(*env.ctx);
    env.ctx->pushTope(rc.first->tope);
    if (zoneInconsistent(*env.ctx)) continue;
    // the left clauses must cover this tope ...
    TopePtr covered = topeBottom();
    for (const auto& lc : left)
      if (lc.first->kind == TK::TopeT) covered = topeDisj(covered, lc.first->tope);
    if (!topeHolds(*env.ctx, covered)) return false;
    // ... and pin the same value wherever they apply
    for (const auto& lc : left) {
      CtxGuard g2(*env.ctx);
      env.ctx->pushTope(lc.first->tope);
      if (zoneInconsistent(*env.ctx)) continue;
      if (!defEqual(env, nullptr, lc.second, rc.second)) return false;
    }
  }
  return true;
}

bool defEqual(EvalEnv& env, const TermPtr& type, const TermPtr& a,
              const TermPtr& b) {
  env.spend();
  if (zoneInconsistent(*env.ctx)) return true;
  if (!type) return structEqual(env, nullptr, a, b);

  TermPtr ty = whnfUnfold(env, type);
  switch (ty->kind) {
    case TK::UnitT: return true;
    case TK::Pi: {
      CtxGuard g(*env.ctx);
      TermPtr v = openBinder(env, *ty);
      return defEqual(env, applyBinder(ty->a, v), tApp(a, v), tApp(b, v));
    }
    case TK::Sigma: {
      if (!defEqual(env, ty->domType, tFirst(a), tFirst(b))) return false;
      return defEqual(env, termOpen(ty->a, 0, tFirst(a)), tSecond(a),
                      tSecond(b));
    }
    case TK::Restrict: {
      // wherever a clause tope holds, both sides are the pinned value
      for (const auto& c : ty->clauses)
        if (c.first->kind == TK::TopeT && topeHolds(*env.ctx, c.first->tope))
          return true;
      return defEqual(env, ty->a, a, b);
    }
    default:
      return structEqual(env, ty, a, b);
  }
}

}  // namespace sstt
