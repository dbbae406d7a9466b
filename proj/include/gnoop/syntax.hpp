#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gnoop/diagnostics.hpp"

namespace gnoop {

/// A signature constructor name. Plain label; equality is token equality.
struct Name {
  std::string text;

  friend bool operator==(const Name&, const Name&) = default;
  friend auto operator<=>(const Name&, const Name&) = default;
};

/// A type variable name. Same lexical class as Name; alpha-equivalence is
/// handled at the constructor level, never here.
struct TypeVarName {
  std::string text;

  friend bool operator==(const TypeVarName&, const TypeVarName&) = default;
  friend auto operator<=>(const TypeVarName&, const TypeVarName&) = default;
};

/// A type name: either a variable reference or a constructor name applied
/// to a sequence of type arguments. Variables are always leaves.
struct TypeName {
  enum class Kind { Var, App };

  Kind kind = Kind::App;
  std::string head;            // variable token or constructor name
  std::vector<TypeName> args;  // empty for Var

  static TypeName var(std::string v) {
    return TypeName{Kind::Var, std::move(v), {}};
  }
  static TypeName app(std::string n, std::vector<TypeName> as = {}) {
    return TypeName{Kind::App, std::move(n), std::move(as)};
  }

  bool is_var() const { return kind == Kind::Var; }
  bool is_app() const { return kind == Kind::App; }

  bool operator==(const TypeName& other) const;
  bool operator<(const TypeName& other) const;  // structural, for set keys
};

/// Compact textual form: zeroary applications render without angle brackets.
std::string to_string(const TypeName& t);

/// Nesting depth: zeroary application = 0, App = 1 + max arg depth.
/// A Var leaf counts as 0.
int type_depth(const TypeName& t);

/// A declared type variable with its upper bound. An "unbounded" variable
/// carries the designated top applied to [] as its bound; the bound is
/// always an application, never a naked variable.
struct BoundedVar {
  TypeVarName var;
  TypeName bound;
  std::optional<SourceSpan> span;  // declaration site, ignored by equality

  bool operator==(const BoundedVar& other) const {
    return var == other.var && bound == other.bound;
  }
};

struct FieldSig {
  std::string label;
  TypeName type;
  std::optional<SourceSpan> span;

  bool operator==(const FieldSig& other) const {
    return label == other.label && type == other.type;
  }
};

struct MethodSig {
  std::string label;
  std::vector<BoundedVar> mtvars;  // method-specific type variables
  std::vector<TypeName> params;
  TypeName ret;
  std::optional<SourceSpan> span;

  bool operator==(const MethodSig& other) const {
    return label == other.label && mtvars == other.mtvars &&
           params == other.params && ret == other.ret;
  }
};

/// A named, parameterized signature scheme. Instantiating its variables
/// with ground names yields a ground signature.
struct SignatureConstructor {
  Name name;
  std::vector<BoundedVar> tvars;
  std::vector<TypeName> supers;  // each an App, never a naked variable
  std::vector<FieldSig> fields;
  std::vector<MethodSig> methods;
  std::optional<SourceSpan> span;

  bool operator==(const SignatureConstructor& other) const {
    return name == other.name && tvars == other.tvars &&
           supers == other.supers && fields == other.fields &&
           methods == other.methods;
  }
};

/// Finite map from constructor names to signature constructors.
/// Iteration follows insertion (source) order.
class ConstructorEnvironment {
 public:
  ConstructorEnvironment() = default;

  /// False when the name is already bound; the environment is unchanged.
  bool insert(SignatureConstructor sc);

  bool contains(const std::string& name) const {
    return index_.count(name) != 0;
  }
  const SignatureConstructor* find(const std::string& name) const;

  const std::vector<SignatureConstructor>& constructors() const {
    return order_;
  }
  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }

  bool operator==(const ConstructorEnvironment& other) const {
    return order_ == other.order_;
  }

 private:
  std::vector<SignatureConstructor> order_;
  std::map<std::string, std::size_t> index_;
};

/// An instantiated signature: variable-free (methods may stay schematic
/// only in the relaxed mode flagged by schematic_methods).
struct GroundSignature {
  TypeName name;  // ground App
  std::vector<TypeName> supers;
  std::vector<FieldSig> fields;
  std::vector<MethodSig> methods;
  bool schematic_methods = false;

  bool operator==(const GroundSignature& other) const {
    return name == other.name && supers == other.supers &&
           fields == other.fields && methods == other.methods;
  }
};

/// A ground signature name paired with the environment it is read in.
struct GenericObjectSignature {
  TypeName name;  // ground App, well-formed in env
  ConstructorEnvironment env;
};

// ---- operations ----

/// True iff no variable node occurs anywhere in t.
bool is_ground(const TypeName& t);

/// Free variables of t in left-to-right first-occurrence order.
std::vector<TypeVarName> free_vars(const TypeName& t);

/// Renames class-level variables to #0, #1, ... in declaration order and
/// each method's variables to %0, %1, ..., rewriting every occurrence.
/// Canonical tokens live outside the user lexical class, so canonical
/// forms never collide with user names. Idempotent.
SignatureConstructor alpha_canonicalize(const SignatureConstructor& sc);

/// Equality modulo consistent renaming of type variables.
bool sc_equal(const SignatureConstructor& a, const SignatureConstructor& b);

/// Returns a copy of env where a zeroary `top` constructor (empty supers,
/// no members) is bound if absent, and every other constructor with an
/// empty declared supers list gains `top` as its sole supersignature.
ConstructorEnvironment inject_top(const ConstructorEnvironment& env,
                                  const Name& top);

}  // namespace gnoop
