#include "gnoop/syntax.hpp"

#include <algorithm>
#include <set>

namespace gnoop {

bool TypeName::operator==(const TypeName& other) const {
  return kind == other.kind && head == other.head && args == other.args;
}

bool TypeName::operator<(const TypeName& other) const {
  if (kind != other.kind) return kind < other.kind;
  if (head != other.head) return head < other.head;
  return std::lexicographical_compare(args.begin(), args.end(),
                                      other.args.begin(), other.args.end());
}

std::string to_string(const TypeName& t) {
  if (t.is_var() || t.args.empty()) return t.head;
  std::string out = t.head;
  out += '<';
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i > 0) out += ',';
    out += to_string(t.args[i]);
  }
  out += '>';
  return out;
}

int type_depth(const TypeName& t) {
  int max_arg = -1;
  for (const TypeName& a : t.args) max_arg = std::max(max_arg, type_depth(a));
  return 1 + max_arg;  // zeroary and Var have depth 0
}

bool ConstructorEnvironment::insert(SignatureConstructor sc) {
  auto [it, fresh] = index_.emplace(sc.name.text, order_.size());
  (void)it;
  if (!fresh) return false;
  order_.push_back(std::move(sc));
  return true;
}

const SignatureConstructor* ConstructorEnvironment::find(
    const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &order_[it->second];
}

bool is_ground(const TypeName& t) {
  if (t.is_var()) return false;
  for (const TypeName& a : t.args)
    if (!is_ground(a)) return false;
  return true;
}

namespace {

void collect_free_vars(const TypeName& t, std::vector<TypeVarName>& out,
                       std::set<std::string>& seen) {
  if (t.is_var()) {
    if (seen.insert(t.head).second) out.push_back(TypeVarName{t.head});
    return;
  }
  for (const TypeName& a : t.args) collect_free_vars(a, out, seen);
}

TypeName rename_vars(const TypeName& t,
                     const std::map<std::string, std::string>& ren) {
  if (t.is_var()) {
    auto it = ren.find(t.head);
    return it == ren.end() ? t : TypeName::var(it->second);
  }
  TypeName out = TypeName::app(t.head);
  out.args.reserve(t.args.size());
  for (const TypeName& a : t.args) out.args.push_back(rename_vars(a, ren));
  return out;
}

}  // namespace

std::vector<TypeVarName> free_vars(const TypeName& t) {
  std::vector<TypeVarName> out;
  std::set<std::string> seen;
  collect_free_vars(t, out, seen);
  return out;
}

SignatureConstructor alpha_canonicalize(const SignatureConstructor& sc) {
  std::map<std::string, std::string> ren;
  for (std::size_t i = 0; i < sc.tvars.size(); ++i)
    ren[sc.tvars[i].var.text] = "#" + std::to_string(i);

  SignatureConstructor out;
  out.name = sc.name;
  out.span = sc.span;
  out.tvars.reserve(sc.tvars.size());
  for (std::size_t i = 0; i < sc.tvars.size(); ++i) {
    BoundedVar bv;
    bv.var = TypeVarName{ren.at(sc.tvars[i].var.text)};
    bv.bound = rename_vars(sc.tvars[i].bound, ren);
    bv.span = sc.tvars[i].span;
    out.tvars.push_back(std::move(bv));
  }
  for (const TypeName& s : sc.supers) out.supers.push_back(rename_vars(s, ren));
  for (const FieldSig& f : sc.fields)
    out.fields.push_back(FieldSig{f.label, rename_vars(f.type, ren), f.span});
  for (const MethodSig& m : sc.methods) {
    // method variables get a per-method scheme on top of the class renaming
    std::map<std::string, std::string> mren = ren;
    for (std::size_t i = 0; i < m.mtvars.size(); ++i)
      mren[m.mtvars[i].var.text] = "%" + std::to_string(i);
    MethodSig om;
    om.label = m.label;
    om.span = m.span;
    for (std::size_t i = 0; i < m.mtvars.size(); ++i) {
      BoundedVar bv;
      bv.var = TypeVarName{mren.at(m.mtvars[i].var.text)};
      bv.bound = rename_vars(m.mtvars[i].bound, mren);
      bv.span = m.mtvars[i].span;
      om.mtvars.push_back(std::move(bv));
    }
    for (const TypeName& p : m.params) om.params.push_back(rename_vars(p, mren));
    om.ret = rename_vars(m.ret, mren);
    out.methods.push_back(std::move(om));
  }
  return out;
}

bool sc_equal(const SignatureConstructor& a, const SignatureConstructor& b) {
  return alpha_canonicalize(a) == alpha_canonicalize(b);
}

ConstructorEnvironment inject_top(const ConstructorEnvironment& env,
                                  const Name& top) {
  ConstructorEnvironment out;
  if (!env.contains(top.text)) {
    SignatureConstructor obj;
    obj.name = top;
    out.insert(std::move(obj));
  }
  for (const SignatureConstructor& sc : env.constructors()) {
    SignatureConstructor copy = sc;
    if (copy.name != top && copy.supers.empty())
      copy.supers.push_back(TypeName::app(top.text));
    out.insert(std::move(copy));
  }
  return out;
}

}  // namespace gnoop
