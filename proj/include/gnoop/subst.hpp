#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gnoop/diagnostics.hpp"
#include "gnoop/syntax.hpp"

namespace gnoop {

/// Positional mapping from type variables to type names. Variables are
/// pairwise distinct and matched to arguments by index.
struct Substitution {
  std::vector<TypeVarName> vars;
  std::vector<TypeName> args;

  static Substitution of(const std::vector<BoundedVar>& tvars,
                         std::vector<TypeName> args);
  bool lookup(const std::string& var, TypeName& out) const;
};

/// Replaces every variable of t through s. A variable outside the
/// substitution domain is an error (E200), not a pass-through.
Checked<TypeName> substitute(const Substitution& s, const TypeName& t);

/// Like substitute, but variables in `keep` pass through unchanged
/// (used when walking under method-level binders).
Checked<TypeName> substitute(const Substitution& s, const TypeName& t,
                             const std::set<std::string>& keep);

Checked<FieldSig> substitute_field(const Substitution& s, const FieldSig& f);

/// Substitutes class-level variables throughout a method signature. The
/// method's own variables are out of the substitution domain and pass
/// through; class variables inside their bounds are substituted.
Checked<MethodSig> substitute_method(const Substitution& s,
                                     const MethodSig& m);

/// Substitutes supers, field and method signatures of sc. Requires s.vars
/// to equal sc's declared variables, in order (E201 otherwise); the tvars
/// component itself is retained (dropping happens in instantiate).
Checked<SignatureConstructor> substitute_constructor(
    const Substitution& s, const SignatureConstructor& sc);

/// Instantiates sc at ground arguments: substitutes throughout, drops the
/// tvars component and names the result App(sc.name, args). A polymorphic
/// method cannot be fully grounded; it is kept schematic and flagged with
/// an E203 warning.
Checked<GroundSignature> instantiate(const SignatureConstructor& sc,
                                     const std::vector<TypeName>& args);

/// The ground signature a generic object signature defines. Its name
/// always equals gos.name.
Checked<GroundSignature> ground_of(const TypeName& name,
                                   const ConstructorEnvironment& env);
Checked<GroundSignature> ground_of(const GenericObjectSignature& gos);

struct ClosureResult {
  std::vector<TypeName> names;  // breadth-first discovery order, no duplicates
  bool exhausted_fuel = false;  // true means the set is a strict under-approximation
};

/// Smallest set containing `name` and closed under collecting the ground
/// type names that occur (at top level) as supers, field types and method
/// parameter/return types of each member's ground signature. Fuel bounds
/// the number of distinct names materialized.
Checked<ClosureResult> instantiation_closure(const TypeName& name,
                                             const ConstructorEnvironment& env,
                                             int fuel);
Checked<ClosureResult> instantiation_closure(const GenericObjectSignature& gos,
                                             int fuel);

struct ParamNode {
  std::string ctor;
  int index = 0;

  friend bool operator==(const ParamNode&, const ParamNode&) = default;
  friend auto operator<=>(const ParamNode&, const ParamNode&) = default;
};

struct ExpansivenessReport {
  bool expansive = false;
  // Closed walk n0 -> n1 -> ... -> n0 (first node repeated last);
  // at least one step is an expansive edge. Empty when not expansive.
  std::vector<ParamNode> witness_cycle;
};

/// Conservative termination analysis for instantiation closures over an
/// environment. Builds a graph on (constructor, parameter index) nodes:
/// every occurrence of App(D, a1..ak) anywhere in C's supers, field types
/// or method parameter/return types contributes, for each variable Xi of C
/// occurring in aj, an edge (C,i) -> (D,j) — non-expansive when aj is
/// exactly Xi, expansive otherwise. The environment is expansive iff some
/// cycle contains an expansive edge; a non-expansive verdict guarantees
/// every instantiation closure over the environment is finite.
ExpansivenessReport expansiveness(const ConstructorEnvironment& sce);

}  // namespace gnoop
