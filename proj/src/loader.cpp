#include "maa/loader.hpp"

#include <fstream>
#include <sstream>

#include "maa/parser.hpp"

namespace maa {

LoadResult loadSources(const std::vector<std::pair<std::string, std::string>>& sources) {
  LoadResult result;
  std::vector<syntax::Model> trees;
  for (const auto& [file, text] : sources) {
    ParseResult parsed = parse(text, file);
    result.diagnostics.insert(result.diagnostics.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
    trees.push_back(std::move(parsed.tree));
  }
  if (hasErrors(result.diagnostics)) return result;
  ResolveResult resolved = resolve(merge(trees));
  result.diagnostics.insert(result.diagnostics.end(), resolved.diagnostics.begin(), resolved.diagnostics.end());
  result.model = std::move(resolved.model);
  return result;
}

LoadResult loadModel(const std::vector<std::string>& paths) {
  std::vector<std::pair<std::string, std::string>> sources;
  LoadResult failed;
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      failed.diagnostics.push_back({Severity::Error, "P000", "cannot read file", {path, 1, 1}});
      continue;
    }
    std::ostringstream text;
    text << in.rdbuf();
    sources.emplace_back(path, text.str());
  }
  if (!failed.diagnostics.empty()) return failed;
  return loadSources(sources);
}

}  // namespace maa
