#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gnoop {

struct SourceSpan {
  int line = 1;    // 1-based
  int column = 1;  // 1-based
  int length = 0;  // in characters

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class Severity { Error, Warning };

/// Machine-readable check outcome. Codes are drawn from the stable catalog
/// E000-E299 (see diag namespace below and the README table).
struct Diagnostic {
  std::string code;
  Severity severity = Severity::Error;
  std::string message;
  std::optional<SourceSpan> span;
  std::vector<std::string> related;  // rendered names/types involved
};

Diagnostic make_error(std::string code, std::string message,
                      std::optional<SourceSpan> span = std::nullopt,
                      std::vector<std::string> related = {});
Diagnostic make_warning(std::string code, std::string message,
                        std::optional<SourceSpan> span = std::nullopt,
                        std::vector<std::string> related = {});

bool has_errors(const std::vector<Diagnostic>& diags);

/// Aggregate verdict of a well-formedness style check.
/// ok() holds exactly when no error-severity diagnostic is present.
struct WfReport {
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
  void add(Diagnostic d) { diagnostics.push_back(std::move(d)); }
  void merge(const WfReport& other) {
    diagnostics.insert(diagnostics.end(), other.diagnostics.begin(),
                       other.diagnostics.end());
  }
  void merge(const std::vector<Diagnostic>& ds) {
    diagnostics.insert(diagnostics.end(), ds.begin(), ds.end());
  }
};

/// Result of an operation that yields a value or diagnostics (or both:
/// a value accompanied by warnings).
template <typename T>
struct Checked {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return value.has_value() && !has_errors(diagnostics); }
  const T& operator*() const { return *value; }
  T& operator*() { return *value; }
  const T* operator->() const { return &*value; }

  static Checked success(T v) { return Checked{std::move(v), {}}; }
  static Checked failure(Diagnostic d) {
    Checked c;
    c.diagnostics.push_back(std::move(d));
    return c;
  }
  static Checked failure(std::vector<Diagnostic> ds) {
    Checked c;
    c.diagnostics = std::move(ds);
    return c;
  }
};

// Stable diagnostic codes. Unlisted codes in E000-E299 are reserved.
namespace diag {
inline constexpr const char* syntax_error = "E000";
inline constexpr const char* duplicate_constructor = "E001";
inline constexpr const char* duplicate_type_variable = "E002";
inline constexpr const char* unbound_constructor = "E100";
inline constexpr const char* arity_mismatch = "E101";
inline constexpr const char* variable_out_of_scope = "E102";
inline constexpr const char* duplicate_field_label = "E103";
inline constexpr const char* duplicate_method_label = "E104";
inline constexpr const char* naked_variable_bound = "E105";
inline constexpr const char* method_tvar_shadowing = "E106";
inline constexpr const char* binding_name_mismatch = "E107";
inline constexpr const char* naked_variable_super = "E110";
inline constexpr const char* missing_inherited_member = "E120";
inline constexpr const char* inherited_member_mismatch = "E121";
inline constexpr const char* supersignature_cycle = "E130";
inline constexpr const char* unbound_substitution_var = "E200";
inline constexpr const char* substitution_arity = "E201";
inline constexpr const char* non_ground_argument = "E202";
inline constexpr const char* polymorphic_method_schematic = "E203";
inline constexpr const char* bound_violation = "E210";
inline constexpr const char* unsuitable_top = "E220";
inline constexpr const char* bound_erasure_cycle = "E221";  // reserved
inline constexpr const char* theorem_counterexample = "E230";
inline constexpr const char* universe_cap_exceeded = "E231";
inline constexpr const char* expansive_environment = "E240";  // warning
inline constexpr const char* fuel_exhausted = "E241";         // warning
inline constexpr const char* erasure_theorem_violation = "E299";
}  // namespace diag

}  // namespace gnoop
