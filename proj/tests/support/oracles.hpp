#pragma once

// Brute-force oracles for the step relation, determinism and trace
// inclusion, plus a generator of small random automata.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "maa/model.hpp"
#include "maa/semantics.hpp"

namespace testing {

struct OracleStep {
  std::size_t state = 0;
  std::vector<maa::Value> vars;
  std::vector<maa::Message> inputs;   // by in-port declaration order
  std::vector<maa::Message> outputs;  // by out-port declaration order
  std::size_t targetState = 0;
  std::vector<maa::Value> targetVars;
  std::size_t transition = 0;
  auto operator<=>(const OracleStep&) const = default;
};

struct StepOracle {
  std::vector<std::vector<maa::Value>> valuations;  // reachable by any transition
  std::vector<OracleStep> steps;                     // sorted
};

/// Tests every (state, valuation, transition, input valuation) combination
/// on its own.
StepOracle bruteForceSteps(const maa::Model& model, const maa::ComponentType& component);

/// The library's step relation in the oracle's vocabulary, sorted.
std::vector<OracleStep> stepsOf(const maa::Transducer& t);

/// Whether some configuration reachable from the initial one has an input
/// enabling two transitions, by exhaustive enumeration.
bool bruteForceNondeterministic(const maa::Model& model, const maa::ComponentType& component);

// One observed tick: input and output valuation indices of an interface.
struct ObservedLetter {
  maa::ValuationIndex input = 0;
  maa::ValuationIndex output = 0;
  bool operator==(const ObservedLetter&) const = default;
};

/// Length of the shortest letter sequence of `impl` that `spec` cannot
/// produce, searching up to `maxLength` letters; nullopt if none. Both
/// transducers are uncompleted and share one interface. Completion is
/// applied here, independently of the library: every implementation trace
/// is enumerated and checked by a depth-first search over the runs of the
/// specification.
std::optional<std::size_t> shortestViolation(const maa::Transducer& impl, maa::CompletionMode implMode,
                                             const maa::Transducer& spec, maa::CompletionMode specMode,
                                             std::size_t maxLength);

// A random atomic component with ports `in Boolean a` and `out Boolean b`.
struct RandomAutomaton {
  struct Edge {
    int source = 0;
    int target = 0;
    int trigger = -1;  // -1: none, 0: a:false, 1: a:true
    int output = -1;   // -1: none, 0: b:false, 1: b:true
  };
  int states = 1;
  int initialOutput = -1;
  std::vector<Edge> edges;

  std::string text(const std::string& name) const;
};

/// 1 to 4 states and up to `maxEdges` transitions.
RandomAutomaton randomAutomaton(std::mt19937_64& rng, std::size_t maxEdges = 6);

/// `base` plus one to three random transitions.
RandomAutomaton widen(RandomAutomaton base, std::mt19937_64& rng);

}  // namespace testing
