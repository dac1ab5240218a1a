#pragma once

#include <string>
#include <vector>

namespace maa {

struct SourcePos {
  std::string file;
  int line = 1;
  int column = 1;

  bool operator==(const SourcePos&) const = default;
};

// Position attached to a tree node. Positions are not part of a tree's
// structure, so two nodes that differ only in where they came from compare
// equal.
struct NodePos {
  SourcePos value;

  friend bool operator==(const NodePos&, const NodePos&) noexcept { return true; }
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  SourcePos pos;
};

/// `file:line:col: severity[code]: message`
std::string format(const Diagnostic& d);

/// One JSON object with fields code, severity, file, line, column, message.
std::string formatJsonLine(const Diagnostic& d);

bool hasErrors(const std::vector<Diagnostic>& diagnostics);

/// Stable order by file, line, column, then code.
void sortByPosition(std::vector<Diagnostic>& diagnostics);

}  // namespace maa
