#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "maa/diagnostics.hpp"
#include "maa/syntax.hpp"

namespace maa {

struct ParseResult {
  syntax::Model tree;
  std::vector<Diagnostic> diagnostics;
};

/// Parses `.maa` text. Never throws on malformed input: lexical and syntax
/// errors become diagnostics (codes P001..P004) and the tree holds whatever
/// could be recovered by resynchronizing at `;` and `}`.
ParseResult parse(std::string_view text, const std::string& file);

/// Canonical source text for a tree; parse(prettyPrint(t)) == t.
std::string prettyPrint(const syntax::Model& tree);

std::string prettyPrint(const syntax::Expr& expr);

/// Concatenates the declarations of several files into one tree.
syntax::Model merge(const std::vector<syntax::Model>& trees);

}  // namespace maa
