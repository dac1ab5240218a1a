#include "maa/codegen/backends.hpp"

#include <filesystem>
#include <fstream>

#include "maa/codegen/calculators.hpp"
#include "maa/errors.hpp"
#include "internal.hpp"

namespace maa::codegen {

std::string defaultTemplateDir() { return MAA_TEMPLATE_DIR; }

CalculatorRegistry standardRegistry() {
  CalculatorRegistry registry;
  for (auto& c : sharedCalculators()) registry.addShared(std::move(c));
  addExecCalculators(registry);
  addMonaCalculators(registry);
  addGraphCalculators(registry);
  return registry;
}

void writeArtifacts(const std::vector<GeneratedArtifact>& artifacts, const std::string& dir) {
  namespace fs = std::filesystem;
  for (const auto& a : artifacts) {
    const fs::path path = fs::path(dir) / a.path;
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << a.content;
    if (!out) throw Error("cannot write '" + path.string() + "'");
  }
}

}  // namespace maa::codegen

namespace maa::codegen {

std::vector<ComponentId> selectComponents(const Model& model, const std::vector<ComponentId>& roots) {
  std::vector<bool> keep(model.components.size(), roots.empty());
  for (ComponentId root : roots) {
    for (ComponentId id : closure(model, root)) keep[id] = true;
  }
  std::vector<ComponentId> out;
  for (ComponentId id = 0; id < keep.size(); ++id) {
    if (keep[id]) out.push_back(id);
  }
  return out;
}

void requireProfile(const Model& model, const Profile& profile, const std::vector<ComponentId>& components,
                    const GeneratorOptions& options, const std::string& backend) {
  if (components.empty()) return;
  CheckOptions check;
  check.maxConfigs = options.maxConfigs;
  check.maxLetters = options.maxLetters;
  check.only = components;
  auto diagnostics = maa::check(model, profile, check);
  if (hasErrors(diagnostics)) {
    throw ProfileViolation("model does not satisfy the profile required by the " + backend + " backend",
                           std::move(diagnostics));
  }
}

Renderer::Renderer(const GeneratorOptions& options, const std::string& backend, const Dialect& dialect)
    : templates_(TemplateSet::load(options.templateDir)), dialect_(dialect) {
  if (options.registry) {
    calculators_ = options.registry->view(backend);
  } else {
    calculators_ = standardRegistry().view(backend);
  }
}

std::string Renderer::render(const std::string& templateName, const Node& node) {
  RenderContext context(templates_, calculators_, dialect_);
  return context.render(templateName, node);
}

}  // namespace maa::codegen
