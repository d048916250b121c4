// Source locations and diagnostics shared by the parsers and the validator.
#pragma once

#include <string>
#include <vector>

namespace tickmc {

struct SourceSpan {
  std::string file;
  int line = 0;    // 1-based; 0 means "no location"
  int column = 0;  // 1-based
  int length = 0;
};

enum class Severity { error, warning, note };

struct Diagnostic {
  Severity severity = Severity::error;
  std::string message;
  SourceSpan span;
};

// Diagnostics are data, not exceptions: parsing and validation always run to
// completion and report everything they found.
class DiagnosticBag {
 public:
  void error(std::string message, SourceSpan span = {}) {
    items_.push_back({Severity::error, std::move(message), std::move(span)});
  }
  void warning(std::string message, SourceSpan span = {}) {
    items_.push_back({Severity::warning, std::move(message), std::move(span)});
  }
  void note(std::string message, SourceSpan span = {}) {
    items_.push_back({Severity::note, std::move(message), std::move(span)});
  }
  void append(const DiagnosticBag& other) {
    items_.insert(items_.end(), other.items_.begin(), other.items_.end());
  }

  bool has_errors() const {
    for (const auto& d : items_)
      if (d.severity == Severity::error) return true;
    return false;
  }
  bool empty() const { return items_.empty(); }
  const std::vector<Diagnostic>& items() const { return items_; }

  std::string to_string() const;

 private:
  std::vector<Diagnostic> items_;
};

inline std::string to_string(const Diagnostic& d) {
  const char* sev = d.severity == Severity::error     ? "error"
                    : d.severity == Severity::warning ? "warning"
                                                      : "note";
  std::string out;
  if (!d.span.file.empty()) {
    out += d.span.file;
    if (d.span.line > 0) {
      out += ":" + std::to_string(d.span.line) + ":" + std::to_string(d.span.column);
    }
    out += ": ";
  }
  out += sev;
  out += ": ";
  out += d.message;
  return out;
}

inline std::string DiagnosticBag::to_string() const {
  std::string out;
  for (const auto& d : items_) {
    out += tickmc::to_string(d);
    out += '\n';
  }
  return out;
}

}  // namespace tickmc
