#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maa/codegen/template.hpp"
#include "maa/model.hpp"
#include "maa/semantics.hpp"

namespace maa::codegen {

struct GeneratedArtifact {
  std::string path;  // relative to the output directory
  std::string content;
  bool operator==(const GeneratedArtifact&) const = default;
};

/// Templates shipped with the toolchain.
std::string defaultTemplateDir();

/// Shared calculators plus those of the exec, mona and graph backends.
CalculatorRegistry standardRegistry();

struct GeneratorOptions {
  std::string templateDir = defaultTemplateDir();
  const CalculatorRegistry* registry = nullptr;  // standardRegistry() when null
  // Components to generate together with everything they instantiate; all
  // components when empty.
  std::vector<ComponentId> roots;
  CompletionMode implMode = CompletionMode::EpsilonSelfLoop;
  CompletionMode specMode = CompletionMode::Chaos;
  std::size_t maxConfigs = 10'000;
  std::size_t maxLetters = 100'000;
};

/// Python sources: exec/maa_types.py, one exec/<Component>.py per component
/// and the exec/main.py harness. Throws ProfileViolation unless the
/// generated components pass the executable profile.
std::vector<GeneratedArtifact> emitExec(const Model& model, const GeneratorOptions& options = {});

/// mona/<impl>.mona with one predicate per component and, given a spec, the
/// refinement formula impl => spec. Throws ProfileViolation unless both pass
/// the analysis profile, InterfaceMismatch if their ports differ.
GeneratedArtifact emitWs1s(const Model& model, ComponentId impl, std::optional<ComponentId> spec = std::nullopt,
                           const GeneratorOptions& options = {});

/// graph/<Component>.dot per component and graph/model.json; nothing for an
/// empty model.
std::vector<GeneratedArtifact> emitGraph(const Model& model, const GeneratorOptions& options = {});

/// Writes artifacts below `dir`, creating directories as needed.
void writeArtifacts(const std::vector<GeneratedArtifact>& artifacts, const std::string& dir);

// Backend-specific calculators.
void addExecCalculators(CalculatorRegistry& registry);
void addMonaCalculators(CalculatorRegistry& registry);
void addGraphCalculators(CalculatorRegistry& registry);

}  // namespace maa::codegen
