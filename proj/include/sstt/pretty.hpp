#pragma once

#include <string>

#include "sstt/term.hpp"

namespace sstt {

// Display environment: names for bound variables (innermost last) and an
// optional context for free-variable hints.
struct NameEnv {
  std::vector<std::string> bound;
  const TriContext* ctx = nullptr;

  std::string boundName(int index, const std::string& hint) const {
    if (index >= 0 && index < static_cast<int>(bound.size()))
      return bound[bound.size() - 1 - static_cast<size_t>(index)];
    return hint.empty() ? "?" : hint;
  }
  std::string freeName(int id, const std::string& hint) const {
    if (ctx) {
      if (const CtxEntry* e = ctx->lookup(id)) return e->name;
    }
    return hint.empty() ? ("?" + std::to_string(id)) : hint;
  }
  std::string fresh(const std::string& hint) const {
    std::string base = hint.empty() || hint == "_" ? "x" : hint;
    std::string name = base;
    auto taken = [&](const std::string& n) {
      for (const auto& b : bound)
        if (b == n) return true;
      return false;
    };
    while (taken(name)) name += "'";
    return name;
  }
};

std::string showCube(const CubePtr& e, const NameEnv& env);
std::string showTope(const TopePtr& t, const NameEnv& env);
std::string showTerm(const TermPtr& t, const NameEnv& env);

// Pretty-prints a closed term.
std::string prettyPrint(const TermPtr& t);
std::string printDeclaration(const Declaration& d);
std::string printModule(const RawModule& m);

}  // namespace sstt
