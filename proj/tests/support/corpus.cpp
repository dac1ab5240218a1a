#include "corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "maa/diagnostics.hpp"

namespace testing {

namespace {

maa::Model unwrap(maa::LoadResult result) {
  if (!result.model || maa::hasErrors(result.diagnostics)) {
    std::string message = "model does not load:";
    for (const auto& d : result.diagnostics) message += "\n  " + maa::format(d);
    throw std::runtime_error(message);
  }
  return std::move(*result.model);
}

}  // namespace

maa::Model loadCorpus(const std::vector<std::string>& names) {
  std::vector<std::string> paths;
  for (const auto& n : names) paths.push_back(corpusPath(n));
  return unwrap(maa::loadModel(paths));
}

maa::Model loadText(const std::string& text) { return unwrap(maa::loadSources({{"test.maa", text}})); }

std::vector<std::string> corpusFiles() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(MAA_CORPUS_DIR)) {
    if (e.path().extension() == ".maa") out.push_back(e.path().filename().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SimCase> simulationCases() {
  return {
      {"BumpControl", {"bumpcontrol.maa"}, "bumpcontrol_start.json"},
      {"BumpControl", {"bumpcontrol.maa"}, "bumpcontrol_cycle.json"},
      {"SLAMRobot", {"bumpcontrol.maa", "slamrobot.maa"}, "slamrobot_bump.json"},
      {"Pipeline", {"pipeline.maa"}, "pipeline_pulse.json"},
      {"PulseCounter", {"counter.maa"}, "counter_pulses.json"},
      {"Blinker", {"blinker.maa"}, "blinker_empty.json"},
  };
}

maa::StreamBundle loadBundle(const std::string& name) {
  std::ifstream in(corpusPath("bundles/" + name));
  if (!in) throw std::runtime_error("cannot read bundle " + name);
  return maa::bundleFromJson(nlohmann::json::parse(in));
}

}  // namespace testing
