#pragma once

#include <string>
#include <vector>

#include "maa/loader.hpp"
#include "maa/model.hpp"
#include "maa/semantics.hpp"

namespace testing {

inline std::string corpusPath(const std::string& name) { return std::string(MAA_CORPUS_DIR) + "/" + name; }

/// Loads corpus files by name; fails the test on diagnostics.
maa::Model loadCorpus(const std::vector<std::string>& names);

/// Parses and resolves in-memory sources; fails the test on diagnostics.
maa::Model loadText(const std::string& text);

/// Every corpus file, sorted.
std::vector<std::string> corpusFiles();

// Root component, model files and input bundle of each bundled simulation.
struct SimCase {
  std::string root;
  std::vector<std::string> files;
  std::string bundle;
};
std::vector<SimCase> simulationCases();

}  // namespace testing

namespace testing {

/// Reads a bundle from the corpus `bundles` directory.
maa::StreamBundle loadBundle(const std::string& name);

}  // namespace testing
