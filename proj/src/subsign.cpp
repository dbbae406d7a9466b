#include "gnoop/subsign.hpp"

#include <algorithm>
#include <deque>

#include "gnoop/subst.hpp"
#include "gnoop/wellformed.hpp"

namespace gnoop {

namespace {

// Direct instantiated supersignatures of a ground name; entries that fail
// to instantiate are skipped (only reachable when the checker was bypassed).
std::vector<TypeName> direct_supers(const ConstructorEnvironment& env,
                                    const TypeName& g) {
  Checked<GroundSignature> gs = ground_of(g, env);
  if (!gs.value) return {};
  std::vector<TypeName> out;
  for (TypeName& s : gs.value->supers)
    if (s.is_app() && is_ground(s)) out.push_back(std::move(s));
  return out;
}

}  // namespace

const std::set<TypeName>& SubsignOracle::supers_of(const TypeName& g) const {
  std::lock_guard<std::mutex> lock(mutex_);
  std::set<TypeName> in_progress;
  return compute(g, in_progress);
}

const std::set<TypeName>& SubsignOracle::compute(
    const TypeName& g, std::set<TypeName>& in_progress) const {
  auto it = cache_.find(g);
  if (it != cache_.end()) return it->second;

  static const std::set<TypeName> empty;
  if (!in_progress.insert(g).second) return empty;

  std::set<TypeName> result;
  bool tainted = false;
  for (const TypeName& s : direct_supers(*env_, g)) {
    result.insert(s);
    if (in_progress.count(s)) {
      // supersignature cycle (ill-formed input): stop the walk here so the
      // oracle stays total; nothing computed on this path is cached
      tainted = true;
      continue;
    }
    const std::set<TypeName>& above = compute(s, in_progress);
    result.insert(above.begin(), above.end());
    if (!cache_.count(s)) tainted = true;
  }
  in_progress.erase(g);

  if (tainted) {
    // deterministic but not cacheable; park it under a throwaway slot
    auto [pos, _] = scratch_.insert_or_assign(g, std::move(result));
    return pos->second;
  }
  auto [pos, _] = cache_.emplace(g, std::move(result));
  return pos->second;
}

bool SubsignOracle::subsigns(const TypeName& sub, const TypeName& super) const {
  if (sub == super) return true;
  return supers_of(sub).count(super) != 0;
}

SubsignVerdict SubsignOracle::verdict(const TypeName& sub,
                                      const TypeName& super) const {
  SubsignVerdict v;
  if (sub == super) {
    v.holds = true;
    return v;
  }
  if (!subsigns(sub, super)) return v;
  v.holds = true;

  // shortest witness chain through the direct-supersignature graph
  std::map<TypeName, TypeName> parent;
  std::deque<TypeName> queue{sub};
  std::set<TypeName> visited{sub};
  while (!queue.empty()) {
    TypeName current = std::move(queue.front());
    queue.pop_front();
    for (const TypeName& next : direct_supers(*env_, current)) {
      if (!visited.insert(next).second) continue;
      parent.emplace(next, current);
      if (next == super) {
        std::vector<TypeName> chain{super};
        for (TypeName n = super; !(n == sub); n = parent.at(n))
          chain.push_back(parent.at(n));
        std::reverse(chain.begin(), chain.end());
        v.chain = std::move(chain);
        return v;
      }
      queue.push_back(next);
    }
  }
  return v;  // unreachable when supers_of and direct_supers agree
}

Checked<std::set<TypeName>> gss(const ConstructorEnvironment& sce,
                                const TypeName& g) {
  // propagate instantiation failures instead of silently skipping
  Checked<GroundSignature> gs = ground_of(g, sce);
  Checked<std::set<TypeName>> out;
  for (const Diagnostic& d : gs.diagnostics)
    if (d.severity == Severity::Error) out.diagnostics.push_back(d);
  if (!gs.value) return out;

  std::set<TypeName> result;
  for (const TypeName& s : gs.value->supers) {
    if (!(s.is_app() && is_ground(s))) continue;
    result.insert(s);
    Checked<std::set<TypeName>> above = gss(sce, s);
    out.diagnostics.insert(out.diagnostics.end(), above.diagnostics.begin(),
                           above.diagnostics.end());
    if (!above.value) return out;
    result.insert(above.value->begin(), above.value->end());
  }
  out.value = std::move(result);
  return out;
}

SubsignVerdict subsigns(const GenericObjectSignature& gos1,
                        const GenericObjectSignature& gos2) {
  if (!sce_extends(gos1.env, gos2.env)) return SubsignVerdict{};
  SubsignOracle oracle(gos1.env);
  return oracle.verdict(gos1.name, gos2.name);
}

SubsignVerdict subsigns(const TypeName& sub, const TypeName& super,
                        const ConstructorEnvironment& shared_env) {
  SubsignOracle oracle(shared_env);
  return oracle.verdict(sub, super);
}

WfReport valid_ground_name(const ConstructorEnvironment& sce,
                           const TypeName& g) {
  WfReport r;
  if (!g.is_app() || !is_ground(g)) {
    r.add(make_error(diag::non_ground_argument,
                     "validity is defined for ground applications only",
                     std::nullopt, {to_string(g)}));
    return r;
  }
  // arguments first, so violations are reported innermost
  for (const TypeName& a : g.args) r.merge(valid_ground_name(sce, a));

  const SignatureConstructor* sc = sce.find(g.head);
  if (!sc) {
    r.add(make_error(diag::unbound_constructor,
                     "unbound constructor name '" + g.head + "'"));
    return r;
  }
  if (sc->tvars.size() != g.args.size()) {
    r.add(make_error(diag::arity_mismatch,
                     "constructor '" + g.head + "' expects " +
                         std::to_string(sc->tvars.size()) +
                         " type arguments, got " +
                         std::to_string(g.args.size())));
    return r;
  }
  if (g.args.empty()) return r;  // zeroary instantiations are always valid

  Substitution s = Substitution::of(sc->tvars, g.args);
  SubsignOracle oracle(sce);
  for (std::size_t i = 0; i < g.args.size(); ++i) {
    Checked<TypeName> bound = substitute(s, sc->tvars[i].bound);
    r.merge(bound.diagnostics);
    if (!bound.value) continue;
    if (!oracle.subsigns(g.args[i], *bound.value)) {
      r.add(make_error(
          diag::bound_violation,
          "type argument " + std::to_string(i) + " of '" + to_string(g) +
              "' does not subsign the bound of '" +
              sc->tvars[i].var.text + "'",
          std::nullopt,
          {"argument " + to_string(g.args[i]),
           "instantiated bound " + to_string(*bound.value)}));
    }
  }
  return r;
}

namespace {

void validate_occurrences(const ConstructorEnvironment& sce,
                          const TypeName& t,
                          const std::optional<SourceSpan>& span,
                          const std::string& where, WfReport& r) {
  if (t.is_var()) return;
  if (is_ground(t)) {
    WfReport inner = valid_ground_name(sce, t);
    for (Diagnostic d : inner.diagnostics) {
      if (!d.span) d.span = span;
      d.message += " (" + where + ")";
      r.add(std::move(d));
    }
    return;
  }
  for (const TypeName& a : t.args)
    validate_occurrences(sce, a, span, where, r);
}

}  // namespace

WfReport validate_env_usage(const ConstructorEnvironment& sce) {
  WfReport r;
  for (const SignatureConstructor& sc : sce.constructors()) {
    const std::string in_ctor = "in constructor '" + sc.name.text + "'";
    for (const BoundedVar& bv : sc.tvars)
      validate_occurrences(sce, bv.bound, bv.span,
                           "bound of '" + bv.var.text + "' " + in_ctor, r);
    for (const TypeName& s : sc.supers)
      validate_occurrences(sce, s, sc.span, "supersignature " + in_ctor, r);
    for (const FieldSig& f : sc.fields)
      validate_occurrences(sce, f.type, f.span,
                           "field '" + f.label + "' " + in_ctor, r);
    for (const MethodSig& m : sc.methods) {
      const std::string in_method = "method '" + m.label + "' " + in_ctor;
      for (const BoundedVar& bv : m.mtvars)
        validate_occurrences(sce, bv.bound, bv.span,
                             "bound of '" + bv.var.text + "' in " + in_method,
                             r);
      for (const TypeName& p : m.params)
        validate_occurrences(sce, p, m.span, in_method, r);
      validate_occurrences(sce, m.ret, m.span, in_method, r);
    }
  }
  return r;
}

}  // namespace gnoop
