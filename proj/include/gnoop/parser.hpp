#pragma once

#include <string>
#include <string_view>

#include "gnoop/diagnostics.hpp"
#include "gnoop/syntax.hpp"

namespace gnoop {

struct ParseOptions {
  Name top{"Object"};  // desugar target for omitted bounds
};

/// Parses a `.gnoop` declaration source into a constructor environment.
/// Bindings appear in source order. Grammar and diagnostics are documented
/// in the README; duplicate constructor names yield E001, duplicate type
/// variables in one list E002, everything lexical/structural E000.
Checked<ConstructorEnvironment> parse_env(std::string_view source,
                                          const ParseOptions& opts = {});

/// Parses a single type name against a loaded environment. A bare
/// identifier bound in env reads as a zeroary application; an unbound bare
/// identifier reads as a variable (the variable reading has priority).
Checked<TypeName> parse_type_name(std::string_view source,
                                  const ConstructorEnvironment& env);

/// Renderers. parse(render(v)) is structural identity for every value
/// satisfying the syntax-module invariants; zeroary applications render
/// without angle brackets.
std::string render(const TypeName& t);
std::string render(const SignatureConstructor& sc, const ParseOptions& opts = {});
std::string render(const ConstructorEnvironment& env, const ParseOptions& opts = {});

}  // namespace gnoop
