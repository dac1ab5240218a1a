#pragma once

#include <map>
#include <string>
#include <vector>

#include "maa/codegen/backends.hpp"
#include "maa/codegen/calculators.hpp"
#include "maa/wellformedness.hpp"

namespace maa::codegen {

/// Closure of options.roots (every component when empty), in model order.
std::vector<ComponentId> selectComponents(const Model& model, const std::vector<ComponentId>& roots);

/// Throws ProfileViolation if `components` fail `profile`.
void requireProfile(const Model& model, const Profile& profile, const std::vector<ComponentId>& components,
                    const GeneratorOptions& options, const std::string& backend);

// Templates and calculators of one backend, ready to render.
class Renderer {
 public:
  Renderer(const GeneratorOptions& options, const std::string& backend, const Dialect& dialect);
  std::string render(const std::string& templateName, const Node& node);

 private:
  TemplateSet templates_;
  std::map<std::string, Calculator> calculators_;
  const Dialect& dialect_;
};

}  // namespace maa::codegen
