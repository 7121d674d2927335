#pragma once

#include <string>
#include <vector>

#include "sstt/eval.hpp"
#include "sstt/parse.hpp"
#include "sstt/term.hpp"

namespace sstt {

struct TypeError {
  DiagCode code = DiagCode::Mismatch;
  std::string message;
  SourceSpan span;
  std::vector<std::string> trace;  // outermost first
};

struct CheckOptions {
  bool typeInType = false;
  long fuel = 100000;
};

struct ModuleResult {
  std::vector<CheckedDeclaration> decls;
  std::vector<Diagnostic> diagnostics;
  std::vector<std::string> outputs;  // #check / #compute reports
};

// How a binder domain elaborated: an ordinary type, a bare cube, or a shape.
struct DomainInfo {
  Dom kind = Dom::Type;
  TermPtr type;   // Dom::Type (elaborated)
  int level = 0;  // universe level of `type`
  SortPtr sort;   // Dom::Cube / Dom::Shape
  TopePtr tope;   // Dom::Shape, under the binder
};

class Checker {
 public:
  Checker(Signature& sig, CheckOptions opts) : sig_(sig), opts_(opts) {}

  // Throws TypeError. On success the declaration is NOT yet added to the
  // signature; callers decide.
  CheckedDeclaration checkDeclaration(const Declaration& decl);

  ModuleResult checkModule(const RawModule& raw);

  // Exposed for tests and the driver.
  std::pair<TermPtr, TermPtr> infer(TriContext& ctx, const TermPtr& t);
  TermPtr check(TriContext& ctx, const TermPtr& t, const TermPtr& expected);
  bool subtype(TriContext& ctx, const TermPtr& a, const TermPtr& b);
  std::pair<TermPtr, int> inferType(TriContext& ctx, const TermPtr& t);
  DomainInfo elabDomain(TriContext& ctx, const TermPtr& t);
  TopePtr elabTope(TriContext& ctx, const TermPtr& t);
  CubePtr elabCube(TriContext& ctx, const TermPtr& t);

  TriContext makeContext();
  EvalEnv evalEnv(TriContext& ctx) { return {&ctx, &fuel_, opts_.typeInType}; }
  void resetFuel() { fuel_ = opts_.fuel; }
  long fuelLeft() const { return fuel_; }

 private:
  struct Ambient {
    std::string name;
    int id;
    TermPtr type;  // may reference earlier ambient variables
  };

  Signature& sig_;
  CheckOptions opts_;
  long fuel_ = 0;
  std::vector<std::string> trace_;
  SourceSpan current_;
  std::vector<Ambient> ambient_;
  std::map<std::string, std::vector<size_t>> captures_;
  std::vector<size_t> sectionMarks_;
  std::vector<std::vector<std::string>> sectionNames_;

  struct Frame;
  struct SpanNote;

  [[noreturn]] void err(DiagCode code, std::string msg);
  [[noreturn]] void err(DiagCode code, std::string msg, const SourceSpan& sp);

  TermPtr openWithParamVars(const TermPtr& t,
                            const std::vector<TermPtr>& varsOutermostFirst);
  std::pair<TermPtr, TermPtr> inferApp(TriContext& ctx, const TermPtr& t);
  TermPtr checkClauses(TriContext& ctx, const TermPtr& carrier,
                       const std::vector<Clause>& surface,
                       std::vector<Clause>& elaborated, bool isRestriction);
  CheckedDeclaration checkShapeDef(const Declaration& decl);
  TermPtr resolveGlobalTerm(const std::string& name, TermPtr* typeOut);
};

ModuleResult checkModuleText(Signature& sig, const RawModule& raw,
                             const CheckOptions& opts);

}  // namespace sstt
