#pragma once

#include <set>
#include <string>

#include "gnoop/diagnostics.hpp"
#include "gnoop/syntax.hpp"

namespace gnoop {

/// Well-formedness of a type name: every application head is bound in sce
/// with the declared arity, every nested argument is well-formed, and
/// every variable is in scope.
WfReport wf_type_name(const TypeName& t, const ConstructorEnvironment& sce,
                      const std::set<std::string>& scope);

/// Per-constructor well-formedness: structural invariants (distinct
/// variables and labels, application bounds, no naked-variable supers),
/// well-formed internal type names under the appropriate scopes, and the
/// member-inheritance condition. The environment-global cycle condition is
/// checked by wf_env.
WfReport wf_constructor(const SignatureConstructor& sc,
                        const ConstructorEnvironment& sce);

/// Every member a supersignature entry contributes (transitively, after
/// substituting the entry's type arguments) must occur in sc with the same
/// label and a syntactically identical signature; method signatures are
/// compared up to alpha-renaming of method-level variables.
WfReport check_member_inheritance(const SignatureConstructor& sc,
                                  const ConstructorEnvironment& sce);

/// Whole-environment well-formedness: structural invariants, closedness,
/// acyclic supersignature head graph, and member inheritance for every
/// binding, in that order.
WfReport wf_env(const ConstructorEnvironment& sce);

/// True iff every binding of small occurs in big up to alpha-renaming.
bool sce_extends(const ConstructorEnvironment& big,
                 const ConstructorEnvironment& small);

/// Method-signature equality modulo consistent renaming of the two
/// methods' own type variables (class-level variables compared verbatim).
bool method_sigs_equal_mod_alpha(const MethodSig& a, const MethodSig& b);

}  // namespace gnoop
