#include "gnoop/subst.hpp"

#include <deque>
#include <map>

namespace gnoop {

Substitution Substitution::of(const std::vector<BoundedVar>& tvars,
                              std::vector<TypeName> args) {
  Substitution s;
  s.vars.reserve(tvars.size());
  for (const BoundedVar& bv : tvars) s.vars.push_back(bv.var);
  s.args = std::move(args);
  return s;
}

bool Substitution::lookup(const std::string& var, TypeName& out) const {
  for (std::size_t i = 0; i < vars.size() && i < args.size(); ++i) {
    if (vars[i].text == var) {
      out = args[i];
      return true;
    }
  }
  return false;
}

namespace {

bool subst_rec(const Substitution& s, const TypeName& t,
               const std::set<std::string>& keep, TypeName& out,
               std::vector<Diagnostic>& diags) {
  if (t.is_var()) {
    if (keep.count(t.head)) {
      out = t;
      return true;
    }
    if (s.lookup(t.head, out)) return true;
    diags.push_back(make_error(
        diag::unbound_substitution_var,
        "type variable '" + t.head + "' is not covered by the substitution"));
    return false;
  }
  out = TypeName::app(t.head);
  out.args.reserve(t.args.size());
  bool ok = true;
  for (const TypeName& a : t.args) {
    TypeName sa;
    if (!subst_rec(s, a, keep, sa, diags)) ok = false;
    out.args.push_back(std::move(sa));
  }
  return ok;
}

}  // namespace

Checked<TypeName> substitute(const Substitution& s, const TypeName& t) {
  return substitute(s, t, {});
}

Checked<TypeName> substitute(const Substitution& s, const TypeName& t,
                             const std::set<std::string>& keep) {
  Checked<TypeName> out;
  TypeName result;
  if (subst_rec(s, t, keep, result, out.diagnostics))
    out.value = std::move(result);
  return out;
}

Checked<FieldSig> substitute_field(const Substitution& s, const FieldSig& f) {
  Checked<TypeName> ty = substitute(s, f.type);
  Checked<FieldSig> out;
  out.diagnostics = std::move(ty.diagnostics);
  if (ty.value) out.value = FieldSig{f.label, std::move(*ty.value), f.span};
  return out;
}

Checked<MethodSig> substitute_method(const Substitution& s,
                                     const MethodSig& m) {
  std::set<std::string> keep;
  for (const BoundedVar& bv : m.mtvars) keep.insert(bv.var.text);

  Checked<MethodSig> out;
  MethodSig result;
  result.label = m.label;
  result.span = m.span;
  bool ok = true;
  for (const BoundedVar& bv : m.mtvars) {
    Checked<TypeName> b = substitute(s, bv.bound, keep);
    out.diagnostics.insert(out.diagnostics.end(), b.diagnostics.begin(),
                           b.diagnostics.end());
    if (!b.value) ok = false;
    result.mtvars.push_back(
        BoundedVar{bv.var, b.value ? std::move(*b.value) : bv.bound, bv.span});
  }
  for (const TypeName& p : m.params) {
    Checked<TypeName> sp = substitute(s, p, keep);
    out.diagnostics.insert(out.diagnostics.end(), sp.diagnostics.begin(),
                           sp.diagnostics.end());
    if (!sp.value) ok = false;
    result.params.push_back(sp.value ? std::move(*sp.value) : p);
  }
  Checked<TypeName> r = substitute(s, m.ret, keep);
  out.diagnostics.insert(out.diagnostics.end(), r.diagnostics.begin(),
                         r.diagnostics.end());
  if (!r.value) ok = false;
  result.ret = r.value ? std::move(*r.value) : m.ret;
  if (ok) out.value = std::move(result);
  return out;
}

Checked<SignatureConstructor> substitute_constructor(
    const Substitution& s, const SignatureConstructor& sc) {
  if (s.vars.size() != sc.tvars.size()) {
    return Checked<SignatureConstructor>::failure(make_error(
        diag::substitution_arity,
        "substitution covers " + std::to_string(s.vars.size()) +
            " variables but constructor '" + sc.name.text + "' declares " +
            std::to_string(sc.tvars.size())));
  }
  for (std::size_t i = 0; i < s.vars.size(); ++i) {
    if (s.vars[i] != sc.tvars[i].var) {
      return Checked<SignatureConstructor>::failure(make_error(
          diag::substitution_arity,
          "substituted variables must equal the declared type variables of '" +
              sc.name.text + "', in order"));
    }
  }

  Checked<SignatureConstructor> out;
  SignatureConstructor result;
  result.name = sc.name;
  result.tvars = sc.tvars;
  result.span = sc.span;
  bool ok = true;
  for (const TypeName& super : sc.supers) {
    Checked<TypeName> ss = substitute(s, super);
    out.diagnostics.insert(out.diagnostics.end(), ss.diagnostics.begin(),
                           ss.diagnostics.end());
    if (!ss.value) ok = false;
    result.supers.push_back(ss.value ? std::move(*ss.value) : super);
  }
  for (const FieldSig& f : sc.fields) {
    Checked<FieldSig> sf = substitute_field(s, f);
    out.diagnostics.insert(out.diagnostics.end(), sf.diagnostics.begin(),
                           sf.diagnostics.end());
    if (!sf.value) ok = false;
    result.fields.push_back(sf.value ? std::move(*sf.value) : f);
  }
  for (const MethodSig& m : sc.methods) {
    Checked<MethodSig> sm = substitute_method(s, m);
    out.diagnostics.insert(out.diagnostics.end(), sm.diagnostics.begin(),
                           sm.diagnostics.end());
    if (!sm.value) ok = false;
    result.methods.push_back(sm.value ? std::move(*sm.value) : m);
  }
  if (ok) out.value = std::move(result);
  return out;
}

Checked<GroundSignature> instantiate(const SignatureConstructor& sc,
                                     const std::vector<TypeName>& args) {
  if (args.size() != sc.tvars.size()) {
    return Checked<GroundSignature>::failure(make_error(
        diag::substitution_arity,
        "constructor '" + sc.name.text + "' expects " +
            std::to_string(sc.tvars.size()) + " type arguments, got " +
            std::to_string(args.size())));
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!is_ground(args[i])) {
      return Checked<GroundSignature>::failure(
          make_error(diag::non_ground_argument,
                     "type argument " + std::to_string(i) + " of '" +
                         sc.name.text + "' is not ground",
                     std::nullopt, {to_string(args[i])}));
    }
  }

  Checked<SignatureConstructor> inst =
      substitute_constructor(Substitution::of(sc.tvars, args), sc);
  Checked<GroundSignature> out;
  out.diagnostics = std::move(inst.diagnostics);
  if (!inst.value) return out;

  GroundSignature gs;
  gs.name = TypeName::app(sc.name.text, args);
  gs.supers = std::move(inst.value->supers);
  gs.fields = std::move(inst.value->fields);
  gs.methods = std::move(inst.value->methods);
  for (const MethodSig& m : gs.methods) {
    if (!m.mtvars.empty()) {
      gs.schematic_methods = true;
      out.diagnostics.push_back(make_warning(
          diag::polymorphic_method_schematic,
          "polymorphic method '" + m.label + "' of '" + sc.name.text +
              "' stays schematic in the instantiation"));
    }
  }
  out.value = std::move(gs);
  return out;
}

Checked<GroundSignature> ground_of(const TypeName& name,
                                   const ConstructorEnvironment& env) {
  if (!name.is_app() || !is_ground(name)) {
    return Checked<GroundSignature>::failure(
        make_error(diag::non_ground_argument,
                   "only ground applications name ground signatures",
                   std::nullopt, {to_string(name)}));
  }
  const SignatureConstructor* sc = env.find(name.head);
  if (!sc) {
    return Checked<GroundSignature>::failure(
        make_error(diag::unbound_constructor,
                   "unbound constructor name '" + name.head + "'"));
  }
  return instantiate(*sc, name.args);
}

Checked<GroundSignature> ground_of(const GenericObjectSignature& gos) {
  return ground_of(gos.name, gos.env);
}

namespace {

// Top-level ground member types of a ground signature, in declaration order.
std::vector<TypeName> mentioned_ground_names(const GroundSignature& gs) {
  std::vector<TypeName> out;
  for (const TypeName& s : gs.supers)
    if (is_ground(s)) out.push_back(s);
  for (const FieldSig& f : gs.fields)
    if (is_ground(f.type)) out.push_back(f.type);
  for (const MethodSig& m : gs.methods) {
    for (const TypeName& p : m.params)
      if (is_ground(p)) out.push_back(p);
    if (is_ground(m.ret)) out.push_back(m.ret);
  }
  return out;
}

}  // namespace

Checked<ClosureResult> instantiation_closure(const TypeName& name,
                                             const ConstructorEnvironment& env,
                                             int fuel) {
  Checked<ClosureResult> out;
  ClosureResult result;
  std::set<TypeName> seen;
  std::deque<TypeName> queue;

  if (fuel < 1) fuel = 1;
  seen.insert(name);
  result.names.push_back(name);
  queue.push_back(name);

  while (!queue.empty()) {
    TypeName current = std::move(queue.front());
    queue.pop_front();
    Checked<GroundSignature> gs = ground_of(current, env);
    for (const Diagnostic& d : gs.diagnostics)
      if (d.severity == Severity::Error) out.diagnostics.push_back(d);
    if (!gs.value) return out;
    for (TypeName& mentioned : mentioned_ground_names(*gs.value)) {
      if (seen.count(mentioned)) continue;
      if (result.names.size() >= static_cast<std::size_t>(fuel)) {
        result.exhausted_fuel = true;
        out.value = std::move(result);
        return out;
      }
      seen.insert(mentioned);
      result.names.push_back(mentioned);
      queue.push_back(std::move(mentioned));
    }
  }
  out.value = std::move(result);
  return out;
}

Checked<ClosureResult> instantiation_closure(const GenericObjectSignature& gos,
                                             int fuel) {
  return instantiation_closure(gos.name, gos.env, fuel);
}

namespace {

struct Edge {
  ParamNode from;
  ParamNode to;
  bool expansive = false;
};

void collect_edges(const std::string& ctor,
                   const std::map<std::string, int>& own_vars,
                   const ConstructorEnvironment& env, const TypeName& t,
                   std::vector<Edge>& edges) {
  if (t.is_var()) return;
  const SignatureConstructor* target = env.find(t.head);
  if (target) {
    for (std::size_t j = 0; j < t.args.size() && j < target->tvars.size();
         ++j) {
      const TypeName& arg = t.args[j];
      for (const TypeVarName& v : free_vars(arg)) {
        auto it = own_vars.find(v.text);
        if (it == own_vars.end()) continue;
        bool plain = arg.is_var() && arg.head == v.text;
        edges.push_back(Edge{ParamNode{ctor, it->second},
                             ParamNode{t.head, static_cast<int>(j)}, !plain});
      }
    }
  }
  for (const TypeName& a : t.args) collect_edges(ctor, own_vars, env, a, edges);
}

}  // namespace

ExpansivenessReport expansiveness(const ConstructorEnvironment& sce) {
  std::vector<Edge> edges;
  for (const SignatureConstructor& sc : sce.constructors()) {
    std::map<std::string, int> own_vars;
    for (std::size_t i = 0; i < sc.tvars.size(); ++i)
      own_vars[sc.tvars[i].var.text] = static_cast<int>(i);
    if (own_vars.empty()) continue;
    for (const TypeName& s : sc.supers)
      collect_edges(sc.name.text, own_vars, sce, s, edges);
    for (const FieldSig& f : sc.fields)
      collect_edges(sc.name.text, own_vars, sce, f.type, edges);
    for (const MethodSig& m : sc.methods) {
      for (const TypeName& p : m.params)
        collect_edges(sc.name.text, own_vars, sce, p, edges);
      collect_edges(sc.name.text, own_vars, sce, m.ret, edges);
    }
  }

  std::map<ParamNode, std::vector<ParamNode>> succ;
  for (const Edge& e : edges) succ[e.from].push_back(e.to);

  // The environment is expansive iff some expansive edge u->v closes a
  // cycle, i.e. u is reachable from v. Graphs are tiny; BFS per candidate.
  for (const Edge& e : edges) {
    if (!e.expansive) continue;
    std::set<ParamNode> visited{e.to};
    std::deque<ParamNode> queue{e.to};
    std::map<ParamNode, ParamNode> parent;
    bool found = e.to == e.from;
    while (!queue.empty() && !found) {
      ParamNode n = queue.front();
      queue.pop_front();
      auto it = succ.find(n);
      if (it == succ.end()) continue;
      for (const ParamNode& next : it->second) {
        if (!visited.insert(next).second) continue;
        parent.emplace(next, n);
        if (next == e.from) {
          found = true;
          break;
        }
        queue.push_back(next);
      }
    }
    if (!found) continue;

    ExpansivenessReport report;
    report.expansive = true;
    std::vector<ParamNode> back;  // path e.to .. e.from, reversed
    for (ParamNode n = e.from; !(n == e.to); n = parent.at(n)) back.push_back(n);
    report.witness_cycle.push_back(e.from);
    report.witness_cycle.push_back(e.to);
    for (auto it = back.rbegin(); it != back.rend(); ++it)
      report.witness_cycle.push_back(*it);
    return report;
  }
  return ExpansivenessReport{};
}

}  // namespace gnoop
