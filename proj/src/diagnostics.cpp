#include "gnoop/diagnostics.hpp"

#include <algorithm>

namespace gnoop {

Diagnostic make_error(std::string code, std::string message,
                      std::optional<SourceSpan> span,
                      std::vector<std::string> related) {
  return Diagnostic{std::move(code), Severity::Error, std::move(message), span,
                    std::move(related)};
}

Diagnostic make_warning(std::string code, std::string message,
                        std::optional<SourceSpan> span,
                        std::vector<std::string> related) {
  return Diagnostic{std::move(code), Severity::Warning, std::move(message),
                    span, std::move(related)};
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.severity == Severity::Error;
  });
}

}  // namespace gnoop
