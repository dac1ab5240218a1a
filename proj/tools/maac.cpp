// maac: check, simulate, refine and generate MontiArcAutomaton-style models.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "maa/codegen/backends.hpp"
#include "maa/errors.hpp"
#include "maa/loader.hpp"
#include "maa/refinement.hpp"
#include "maa/semantics.hpp"
#include "maa/wellformedness.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kLimit = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::vector<std::string> files;
  bool json = false;
};

void report(const std::vector<maa::Diagnostic>& diagnostics, bool json) {
  for (const auto& d : diagnostics) std::cerr << (json ? maa::formatJsonLine(d) : maa::format(d)) << '\n';
}

// Loads the files; diagnostics go to stderr. Empty on errors.
std::optional<maa::Model> load(const Common& common) {
  auto result = maa::loadModel(common.files);
  report(result.diagnostics, common.json);
  if (maa::hasErrors(result.diagnostics)) return std::nullopt;
  return std::move(result.model);
}

maa::ComponentId componentId(const maa::Model& model, const std::string& name) {
  const auto id = model.findComponent(name);
  if (!id) throw UsageError("unknown component '" + name + "'");
  return *id;
}

bool checkProfile(const maa::Model& model, const maa::Profile& profile, std::vector<maa::ComponentId> only,
                  const maa::CheckOptions& base, bool json) {
  maa::CheckOptions options = base;
  options.only = std::move(only);
  const auto diagnostics = maa::check(model, profile, options);
  report(diagnostics, json);
  return !maa::hasErrors(diagnostics);
}

maa::CompletionMode completionMode(const std::string& name) {
  const auto mode = maa::completionModeByName(name);
  if (!mode) throw UsageError("unknown completion mode '" + name + "' (epsilon, chaos or reject)");
  return *mode;
}

nlohmann::json readJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw maa::Error("cannot read '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw maa::SchemaError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void writeText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw maa::Error("cannot write '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks, simulates, refines and generates code for component and automaton models."};
  app.require_subcommand(1);

  Common common;
  auto addCommon = [&](CLI::App* sub) {
    sub->add_option("files", common.files, "Model files")->required();
    sub->add_flag("--json", common.json, "Diagnostics as JSON lines");
  };
  maa::CheckOptions limits;
  auto addLimits = [&](CLI::App* sub) {
    sub->add_option("--max-configs", limits.maxConfigs, "Configuration bound of the analysis profile");
    sub->add_option("--max-letters", limits.maxLetters, "Alphabet bound of the analysis profile");
  };

  auto* check = app.add_subcommand("check", "Check context conditions");
  addCommon(check);
  addLimits(check);
  std::string profileName = "core";
  check->add_option("--profile", profileName, "core, executable or analysis")
      ->check(CLI::IsMember({"core", "executable", "analysis"}));

  auto* sim = app.add_subcommand("sim", "Simulate a component on an input stream bundle");
  addCommon(sim);
  std::string root, inputsPath, outPath, internalPath, policy = "strict";
  std::size_t ticks = 0;
  std::uint64_t seed = 0;
  sim->add_option("--root", root, "Component to run")->required();
  sim->add_option("--inputs", inputsPath, "Input stream bundle (JSON)")->required();
  sim->add_option("--ticks", ticks, "Number of ticks")->required();
  auto* seedOption = sim->add_option("--seed", seed, "Seed of the seeded policy");
  sim->add_option("--policy", policy, "strict or seeded")->check(CLI::IsMember({"strict", "seeded"}));
  sim->add_option("--out", outPath, "Output bundle file (stdout by default)");
  sim->add_option("--internal", internalPath, "Also write every instance's ports to this file");

  auto* refine = app.add_subcommand("refine", "Check that an implementation refines a specification");
  addCommon(refine);
  addLimits(refine);
  std::string impl, spec, implMode = "epsilon", specMode = "chaos", cexPath = "counterexample.json";
  std::size_t maxNodes = 1'000'000;
  refine->add_option("--impl", impl, "Implementation component")->required();
  refine->add_option("--spec", spec, "Specification component")->required();
  refine->add_option("--impl-mode", implMode, "Completion of the implementation: epsilon, chaos or reject");
  refine->add_option("--spec-mode", specMode, "Completion of the specification: epsilon, chaos or reject");
  refine->add_option("--out", cexPath, "Counterexample file");
  refine->add_option("--max-nodes", maxNodes, "Bound on explored product nodes");

  auto* gen = app.add_subcommand("gen", "Generate code");
  addCommon(gen);
  addLimits(gen);
  std::string backend, outDir = "generated", templateDir = maa::codegen::defaultTemplateDir();
  std::vector<std::string> roots;
  std::string genImpl, genSpec, genImplMode = "epsilon", genSpecMode = "chaos";
  gen->add_option("--backend", backend, "exec, mona or graph")
      ->required()
      ->check(CLI::IsMember({"exec", "mona", "graph"}));
  gen->add_option("--out", outDir, "Output directory");
  gen->add_option("--templates", templateDir, "Template directory");
  gen->add_option("--root", roots, "Generate only these components and what they instantiate");
  gen->add_option("--impl", genImpl, "Component to encode (mona)");
  gen->add_option("--spec", genSpec, "Specification to check the encoding against (mona)");
  gen->add_option("--impl-mode", genImplMode, "Completion of the implementation (mona)");
  gen->add_option("--spec-mode", genSpecMode, "Completion of the specification (mona)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const auto model = load(common);
    if (!model) return kFailed;

    if (*check) {
      return checkProfile(*model, *maa::Profile::byName(profileName), {}, limits, common.json) ? kOk : kFailed;
    }

    if (*sim) {
      const auto id = componentId(*model, root);
      if (!checkProfile(*model, maa::Profile::core(), maa::closure(*model, id), limits, common.json)) return kFailed;
      maa::SimulationOptions options;
      options.ticks = ticks;
      options.recordInternal = !internalPath.empty();
      if (policy == "seeded" || seedOption->count() > 0) options.policy = maa::StepPolicy::seeded(seed);
      const auto inputs = maa::bundleFromJson(readJson(inputsPath));
      const auto result = maa::simulate(*model, id, inputs, options);
      writeText(outPath, maa::canonicalJson(result.outputs) + "\n");
      if (!internalPath.empty()) {
        nlohmann::json internal = nlohmann::json::object();
        for (const auto& [path, bundle] : result.internal) internal[path] = maa::toJson(bundle);
        writeText(internalPath, internal.dump(2) + "\n");
      }
      return kOk;
    }

    if (*refine) {
      const auto implId = componentId(*model, impl);
      const auto specId = componentId(*model, spec);
      if (!checkProfile(*model, maa::Profile::analysis(), {implId, specId}, limits, common.json)) return kFailed;
      maa::RefinementOptions options;
      options.implMode = completionMode(implMode);
      options.specMode = completionMode(specMode);
      options.maxNodes = maxNodes;
      const maa::ElaborationOptions elaboration{limits.maxConfigs};
      const auto implT = maa::elaborate(*model, model->components[implId], elaboration);
      const auto specT = maa::elaborate(*model, model->components[specId], elaboration);
      const auto verdict = maa::refines(implT, specT, options);
      if (verdict.holds) {
        std::cout << "Holds\n";
        return kOk;
      }
      const auto bundle = maa::toBundle(*verdict.counterexample);
      writeText(cexPath, maa::toJson(bundle).dump(2) + "\n");
      std::cout << "Violated: counterexample of length " << bundle.ticks << " written to " << cexPath << '\n';
      return kFailed;
    }

    if (*gen) {
      maa::codegen::GeneratorOptions options;
      options.templateDir = templateDir;
      options.maxConfigs = limits.maxConfigs;
      options.maxLetters = limits.maxLetters;
      options.implMode = completionMode(genImplMode);
      options.specMode = completionMode(genSpecMode);
      for (const auto& r : roots) options.roots.push_back(componentId(*model, r));
      std::vector<maa::codegen::GeneratedArtifact> artifacts;
      if (backend == "exec") {
        artifacts = maa::codegen::emitExec(*model, options);
      } else if (backend == "graph") {
        artifacts = maa::codegen::emitGraph(*model, options);
      } else {
        if (genImpl.empty()) throw UsageError("the mona backend needs --impl");
        std::optional<maa::ComponentId> specId;
        if (!genSpec.empty()) specId = componentId(*model, genSpec);
        artifacts.push_back(maa::codegen::emitWs1s(*model, componentId(*model, genImpl), specId, options));
      }
      maa::codegen::writeArtifacts(artifacts, outDir);
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "maac: " << e.what() << '\n';
    return kUsage;
  } catch (const maa::ProfileViolation& e) {
    report(e.diagnostics(), common.json);
    std::cerr << "maac: " << e.what() << '\n';
    return kFailed;
  } catch (const maa::NondeterminismError& e) {
    std::cerr << "maac: " << e.what() << '\n';
    for (const auto& p : e.competing()) {
      std::cerr << "  " << p.file << ':' << p.line << ':' << p.column << ": enabled transition\n";
    }
    return kFailed;
  } catch (const maa::LimitExceeded& e) {
    std::cerr << "maac: limit exceeded: " << e.what() << '\n';
    return kLimit;
  } catch (const std::exception& e) {
    std::cerr << "maac: error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
