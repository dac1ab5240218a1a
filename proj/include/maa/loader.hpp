#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maa/diagnostics.hpp"
#include "maa/model.hpp"

namespace maa {

struct LoadResult {
  std::optional<Model> model;
  std::vector<Diagnostic> diagnostics;
};

/// Reads, parses and resolves the given files as one model. Unreadable files
/// are reported as P000.
LoadResult loadModel(const std::vector<std::string>& paths);

/// Same, for in-memory sources given as (file name, text) pairs.
LoadResult loadSources(const std::vector<std::pair<std::string, std::string>>& sources);

}  // namespace maa
