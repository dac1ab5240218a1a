#include "maa/diagnostics.hpp"

#include <algorithm>
#include <tuple>

#include <json.hpp>

namespace maa {

std::string format(const Diagnostic& d) {
  std::string out = d.pos.file;
  out += ':' + std::to_string(d.pos.line) + ':' + std::to_string(d.pos.column) + ": ";
  out += d.severity == Severity::Error ? "error" : "warning";
  out += '[' + d.code + "]: " + d.message;
  return out;
}

std::string formatJsonLine(const Diagnostic& d) {
  nlohmann::json j;
  j["code"] = d.code;
  j["severity"] = d.severity == Severity::Error ? "error" : "warning";
  j["file"] = d.pos.file;
  j["line"] = d.pos.line;
  j["column"] = d.pos.column;
  j["message"] = d.message;
  return j.dump();
}

bool hasErrors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

void sortByPosition(std::vector<Diagnostic>& diagnostics) {
  std::stable_sort(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.pos.file, a.pos.line, a.pos.column, a.code) <
           std::tie(b.pos.file, b.pos.line, b.pos.column, b.code);
  });
}

}  // namespace maa
