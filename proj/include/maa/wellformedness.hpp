#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "maa/diagnostics.hpp"
#include "maa/model.hpp"

namespace maa {

// Context conditions.
//
// Core (every profile):
//   W1 connector source and targets have the same type
//   W2 connector direction legality
//   W3 at most one writer per target port (no fan-in)
//   W4 unique names per component namespace
//   W5 exactly one initial state
//   W6 trigger and output literals belong to the port's domain
//   W7 in-ports read by expressions appear in the transition's trigger
//   W8 no recursive composition
//   W9 every out-port of a composed component is connected
//   W10 (warning) an in-port of a subcomponent is not connected
// Executable profile adds E1 (determinism). Analysis profile adds
// A1 (state space and alphabet bounds) and A2 (atomic components only).
struct Profile {
  enum class Name { Core, Executable, Analysis };
  Name name = Name::Core;
  std::vector<std::string> rules;

  static Profile core();
  static Profile executable();
  static Profile analysis();
  static std::optional<Profile> byName(const std::string& name);
};

struct CheckOptions {
  std::size_t maxConfigs = 10'000;
  std::size_t maxLetters = 100'000;
  // Restrict component-level rules to these components (all when empty).
  std::vector<ComponentId> only;
};

/// Diagnostics sorted by source position; empty iff the model satisfies
/// every rule of the profile.
std::vector<Diagnostic> check(const Model& model, const Profile& profile, const CheckOptions& options = {});

/// `root` and every component it transitively instantiates.
std::vector<ComponentId> closure(const Model& model, ComponentId root);

}  // namespace maa
