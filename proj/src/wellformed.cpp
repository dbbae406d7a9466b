#include "gnoop/wellformed.hpp"

#include <algorithm>
#include <map>

#include "gnoop/subst.hpp"

namespace gnoop {

namespace {

void wf_type_rec(const TypeName& t, const ConstructorEnvironment& sce,
                 const std::set<std::string>& scope, WfReport& r) {
  if (t.is_var()) {
    if (!scope.count(t.head)) {
      r.add(make_error(diag::variable_out_of_scope,
                       "type variable '" + t.head + "' is not in scope"));
    }
    return;
  }
  const SignatureConstructor* sc = sce.find(t.head);
  if (!sc) {
    r.add(make_error(diag::unbound_constructor,
                     "unbound constructor name '" + t.head + "'"));
  } else if (sc->tvars.size() != t.args.size()) {
    r.add(make_error(diag::arity_mismatch,
                     "constructor '" + t.head + "' expects " +
                         std::to_string(sc->tvars.size()) +
                         " type arguments, got " +
                         std::to_string(t.args.size()),
                     std::nullopt, {to_string(t)}));
  }
  for (const TypeName& a : t.args) wf_type_rec(a, sce, scope, r);
}

std::set<std::string> class_scope_of(const SignatureConstructor& sc) {
  std::set<std::string> scope;
  for (const BoundedVar& bv : sc.tvars) scope.insert(bv.var.text);
  return scope;
}

// Structural invariants of one constructor (the conditions that need no
// environment): distinct variables, distinct labels, application bounds,
// no naked-variable supersignatures, method variables apart from class
// variables.
void structural_check(const SignatureConstructor& sc, WfReport& r) {
  std::set<std::string> tvar_names;
  for (const BoundedVar& bv : sc.tvars) {
    if (!tvar_names.insert(bv.var.text).second) {
      r.add(make_error(diag::duplicate_type_variable,
                       "duplicate type variable '" + bv.var.text + "' in '" +
                           sc.name.text + "'",
                       bv.span));
    }
    if (bv.bound.is_var()) {
      r.add(make_error(diag::naked_variable_bound,
                       "bound of '" + bv.var.text +
                           "' must be a constructor application, not the "
                           "type variable '" +
                           bv.bound.head + "'",
                       bv.span));
    }
  }
  for (const TypeName& s : sc.supers) {
    if (s.is_var()) {
      r.add(make_error(diag::naked_variable_super,
                       "naked type variable '" + s.head +
                           "' is not allowed as a supersignature of '" +
                           sc.name.text + "'",
                       sc.span));
    }
  }
  std::set<std::string> field_labels;
  for (const FieldSig& f : sc.fields) {
    if (!field_labels.insert(f.label).second) {
      r.add(make_error(diag::duplicate_field_label,
                       "duplicate field label '" + f.label + "' in '" +
                           sc.name.text + "'",
                       f.span));
    }
  }
  std::set<std::string> method_labels;
  for (const MethodSig& m : sc.methods) {
    if (!method_labels.insert(m.label).second) {
      r.add(make_error(diag::duplicate_method_label,
                       "duplicate method label '" + m.label + "' in '" +
                           sc.name.text + "'",
                       m.span));
    }
    std::set<std::string> mtvar_names;
    for (const BoundedVar& bv : m.mtvars) {
      if (!mtvar_names.insert(bv.var.text).second) {
        r.add(make_error(diag::duplicate_type_variable,
                         "duplicate type variable '" + bv.var.text +
                             "' in method '" + m.label + "'",
                         bv.span));
      }
      if (tvar_names.count(bv.var.text)) {
        r.add(make_error(diag::method_tvar_shadowing,
                         "method type variable '" + bv.var.text + "' of '" +
                             m.label + "' shadows a class-level variable",
                         bv.span));
      }
      if (bv.bound.is_var()) {
        r.add(make_error(diag::naked_variable_bound,
                         "bound of '" + bv.var.text +
                             "' must be a constructor application",
                         bv.span));
      }
    }
  }
}

// Condition: every generic signature name inside sc is well-formed and
// every variable occurrence is declared in the governing scope.
void name_check(const SignatureConstructor& sc,
                const ConstructorEnvironment& sce, WfReport& r) {
  std::set<std::string> scope = class_scope_of(sc);
  for (const BoundedVar& bv : sc.tvars) wf_type_rec(bv.bound, sce, scope, r);
  for (const TypeName& s : sc.supers) wf_type_rec(s, sce, scope, r);
  for (const FieldSig& f : sc.fields) wf_type_rec(f.type, sce, scope, r);
  for (const MethodSig& m : sc.methods) {
    std::set<std::string> mscope = scope;
    for (const BoundedVar& bv : m.mtvars) mscope.insert(bv.var.text);
    for (const BoundedVar& bv : m.mtvars) wf_type_rec(bv.bound, sce, mscope, r);
    for (const TypeName& p : m.params) wf_type_rec(p, sce, mscope, r);
    wf_type_rec(m.ret, sce, mscope, r);
  }
}

MethodSig canonicalize_method_vars(const MethodSig& m) {
  SignatureConstructor shell;
  shell.methods.push_back(m);
  return alpha_canonicalize(shell).methods.front();
}

struct RequiredMembers {
  // member -> the (rendered) super entry that contributed it
  std::vector<std::pair<FieldSig, std::string>> fields;
  std::vector<std::pair<MethodSig, std::string>> methods;
};

void collect_required(const TypeName& super_entry,
                      const ConstructorEnvironment& sce,
                      std::set<std::string>& on_path, RequiredMembers& out,
                      WfReport& r) {
  if (!super_entry.is_app()) return;
  const SignatureConstructor* sup = sce.find(super_entry.head);
  if (!sup || sup->tvars.size() != super_entry.args.size())
    return;  // reported by the name checks
  if (!on_path.insert(super_entry.head).second) return;  // cycle guard

  Substitution s = Substitution::of(sup->tvars, super_entry.args);
  std::string origin = to_string(super_entry);
  for (const FieldSig& f : sup->fields) {
    Checked<FieldSig> sf = substitute_field(s, f);
    r.merge(sf.diagnostics);
    if (sf.value) out.fields.emplace_back(std::move(*sf.value), origin);
  }
  for (const MethodSig& m : sup->methods) {
    Checked<MethodSig> sm = substitute_method(s, m);
    r.merge(sm.diagnostics);
    if (sm.value) out.methods.emplace_back(std::move(*sm.value), origin);
  }
  for (const TypeName& ss : sup->supers) {
    Checked<TypeName> inst = substitute(s, ss);
    r.merge(inst.diagnostics);
    if (inst.value) collect_required(*inst.value, sce, on_path, out, r);
  }
  on_path.erase(super_entry.head);
}

}  // namespace

WfReport wf_type_name(const TypeName& t, const ConstructorEnvironment& sce,
                      const std::set<std::string>& scope) {
  WfReport r;
  wf_type_rec(t, sce, scope, r);
  return r;
}

bool method_sigs_equal_mod_alpha(const MethodSig& a, const MethodSig& b) {
  if (a.label != b.label) return false;
  return canonicalize_method_vars(a) == canonicalize_method_vars(b);
}

WfReport check_member_inheritance(const SignatureConstructor& sc,
                                  const ConstructorEnvironment& sce) {
  WfReport r;
  RequiredMembers required;
  for (const TypeName& super : sc.supers) {
    std::set<std::string> on_path;
    collect_required(super, sce, on_path, required, r);
  }

  for (const auto& [field, origin] : required.fields) {
    auto it = std::find_if(sc.fields.begin(), sc.fields.end(),
                           [&](const FieldSig& f) {
                             return f.label == field.label;
                           });
    if (it == sc.fields.end()) {
      r.add(make_error(diag::missing_inherited_member,
                       "constructor '" + sc.name.text +
                           "' is missing field '" + field.label +
                           "' inherited from " + origin,
                       sc.span, {field.label + ": " + to_string(field.type)}));
    } else if (!(it->type == field.type)) {
      r.add(make_error(diag::inherited_member_mismatch,
                       "field '" + field.label + "' of '" + sc.name.text +
                           "' must have the signature it has in " + origin,
                       it->span,
                       {"expected " + to_string(field.type),
                        "found " + to_string(it->type)}));
    }
  }
  for (const auto& [method, origin] : required.methods) {
    auto it = std::find_if(sc.methods.begin(), sc.methods.end(),
                           [&](const MethodSig& m) {
                             return m.label == method.label;
                           });
    if (it == sc.methods.end()) {
      r.add(make_error(diag::missing_inherited_member,
                       "constructor '" + sc.name.text +
                           "' is missing method '" + method.label +
                           "' inherited from " + origin,
                       sc.span));
    } else if (!method_sigs_equal_mod_alpha(*it, method)) {
      r.add(make_error(diag::inherited_member_mismatch,
                       "method '" + method.label + "' of '" + sc.name.text +
                           "' must have the signature it has in " + origin,
                       it->span));
    }
  }
  return r;
}

WfReport wf_constructor(const SignatureConstructor& sc,
                        const ConstructorEnvironment& sce) {
  WfReport r;
  structural_check(sc, r);
  name_check(sc, sce, r);
  if (!r.ok()) return r;  // member matching assumes sane structure
  r.merge(check_member_inheritance(sc, sce));
  return r;
}

namespace {

// One witness cycle in the supersignature head graph, or empty.
std::vector<std::string> find_head_cycle(const ConstructorEnvironment& sce) {
  enum class Color { White, Grey, Black };
  std::map<std::string, Color> color;
  std::map<std::string, std::string> parent;
  for (const SignatureConstructor& sc : sce.constructors())
    color[sc.name.text] = Color::White;

  // iterative DFS keeping the grey path for witness reconstruction
  for (const SignatureConstructor& root : sce.constructors()) {
    if (color[root.name.text] != Color::White) continue;
    std::vector<std::pair<std::string, std::size_t>> stack;
    stack.emplace_back(root.name.text, 0);
    color[root.name.text] = Color::Grey;
    while (!stack.empty()) {
      std::string name = stack.back().first;
      const SignatureConstructor* sc = sce.find(name);
      std::vector<std::string> heads;
      if (sc) {
        for (const TypeName& s : sc->supers)
          if (s.is_app()) heads.push_back(s.head);
      }
      if (stack.back().second >= heads.size()) {
        color[name] = Color::Black;
        stack.pop_back();
        continue;
      }
      std::string head = heads[stack.back().second++];
      if (!color.count(head)) continue;  // unbound, reported elsewhere
      if (color[head] == Color::Grey) {
        // unwind the grey stack from head to the top
        std::vector<std::string> cycle;
        auto it = std::find_if(stack.begin(), stack.end(),
                               [&](const auto& e) { return e.first == head; });
        for (; it != stack.end(); ++it) cycle.push_back(it->first);
        cycle.push_back(head);
        return cycle;
      }
      if (color[head] == Color::White) {
        color[head] = Color::Grey;
        stack.emplace_back(head, 0);
      }
    }
  }
  return {};
}

}  // namespace

WfReport wf_env(const ConstructorEnvironment& sce) {
  WfReport r;
  for (const SignatureConstructor& sc : sce.constructors())
    structural_check(sc, r);
  for (const SignatureConstructor& sc : sce.constructors())
    name_check(sc, sce, r);
  if (!r.ok()) return r;

  std::vector<std::string> cycle = find_head_cycle(sce);
  if (!cycle.empty()) {
    std::string path;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i > 0) path += " -> ";
      path += cycle[i];
    }
    r.add(make_error(diag::supersignature_cycle,
                     "supersignature cycle: " + path, std::nullopt, cycle));
    return r;
  }

  for (const SignatureConstructor& sc : sce.constructors())
    r.merge(check_member_inheritance(sc, sce));
  return r;
}

bool sce_extends(const ConstructorEnvironment& big,
                 const ConstructorEnvironment& small) {
  for (const SignatureConstructor& sc : small.constructors()) {
    const SignatureConstructor* other = big.find(sc.name.text);
    if (!other || !sc_equal(sc, *other)) return false;
  }
  return true;
}

}  // namespace gnoop
