#pragma once

#include <map>
#include <mutex>
#include <set>
#include <vector>

#include "gnoop/diagnostics.hpp"
#include "gnoop/syntax.hpp"

namespace gnoop {

struct SubsignVerdict {
  bool holds = false;
  // witness from sub to super through direct instantiated supersignatures;
  // present iff holds and the names differ
  std::vector<TypeName> chain;
};

/// The set of all ground supersignature names of g, obtained by
/// transitively instantiating the supersignature hierarchy; excludes g.
Checked<std::set<TypeName>> gss(const ConstructorEnvironment& sce,
                                const TypeName& g);

/// Decides gos1 (sub) against gos2 (super): the sub-side environment must
/// extend the super-side environment, and the names are equal or the
/// super name lies in the sub name's transitive instantiated supers.
SubsignVerdict subsigns(const GenericObjectSignature& gos1,
                        const GenericObjectSignature& gos2);
SubsignVerdict subsigns(const TypeName& sub, const TypeName& super,
                        const ConstructorEnvironment& shared_env);

/// Bounded-instantiation validity: arguments are recursively valid and
/// each argument subsigns its variable's bound after the arguments
/// themselves are substituted into that bound (F-bounds). Zeroary
/// instantiations are always valid.
WfReport valid_ground_name(const ConstructorEnvironment& sce,
                           const TypeName& g);

/// Lifts valid_ground_name over every ground type name literally occurring
/// inside the environment's constructor bodies.
WfReport validate_env_usage(const ConstructorEnvironment& sce);

/// Memoizing subsigning oracle over one fixed environment. Results are
/// identical to the free functions; the cache is never observable and is
/// safe for concurrent readers. Supersignature walks are cycle-guarded and
/// skip uninstantiable entries, so the oracle stays total on environments
/// that bypassed the checker.
class SubsignOracle {
 public:
  explicit SubsignOracle(const ConstructorEnvironment& env) : env_(&env) {}

  const std::set<TypeName>& supers_of(const TypeName& ground) const;
  bool subsigns(const TypeName& sub, const TypeName& super) const;
  SubsignVerdict verdict(const TypeName& sub, const TypeName& super) const;

  const ConstructorEnvironment& env() const { return *env_; }

 private:
  const std::set<TypeName>& compute(const TypeName& ground,
                                    std::set<TypeName>& in_progress) const;

  const ConstructorEnvironment* env_;
  mutable std::mutex mutex_;
  mutable std::map<TypeName, std::set<TypeName>> cache_;
  mutable std::map<TypeName, std::set<TypeName>> scratch_;  // cycle-tainted
};

}  // namespace gnoop
