#ifndef NGACSAFE_DIAGNOSTICS_HPP
#define NGACSAFE_DIAGNOSTICS_HPP

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ngacsafe {

enum class Severity { Error, Warning };

inline constexpr std::string_view to_string(Severity s) {
  return s == Severity::Error ? "error" : "warning";
}

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;

  friend bool operator==(const Diagnostic &, const Diagnostic &) = default;
};

inline bool has_errors(const std::vector<Diagnostic> &ds) {
  return std::any_of(ds.begin(), ds.end(), [](const Diagnostic &d) {
    return d.severity == Severity::Error;
  });
}

inline bool has_code(const std::vector<Diagnostic> &ds, std::string_view code) {
  return std::any_of(ds.begin(), ds.end(),
                     [&](const Diagnostic &d) { return d.code == code; });
}

/// Thrown when a model fails validation. Carries every diagnostic.
class ModelRejected : public std::runtime_error {
public:
  explicit ModelRejected(std::vector<Diagnostic> ds)
      : std::runtime_error(summary(ds)), diagnostics_(std::move(ds)) {}

  const std::vector<Diagnostic> &diagnostics() const { return diagnostics_; }

private:
  static std::string summary(const std::vector<Diagnostic> &ds) {
    std::string s = "model rejected";
    for (const auto &d : ds) {
      if (d.severity != Severity::Error)
        continue;
      s += "; ";
      s += d.code;
      s += ": ";
      s += d.message;
    }
    return s;
  }

  std::vector<Diagnostic> diagnostics_;
};

} // namespace ngacsafe

#endif // NGACSAFE_DIAGNOSTICS_HPP
