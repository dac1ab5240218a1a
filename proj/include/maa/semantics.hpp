#pragma once

// Finite I/O transducers elaborated from automata and the synchronous,
// unit-delay execution of (composed) components.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "maa/model.hpp"

namespace maa {

struct PortSignature {
  std::string name;
  TypeDef type;
  bool operator==(const PortSignature& o) const { return name == o.name && sameType(type, o.type); }
};

using ValuationIndex = std::uint32_t;

// One message per port, ports in declaration order. A valuation is stored as
// a mixed-radix index: each port contributes its domain size plus one
// (digit 0 is epsilon), the first port being the most significant digit.
struct Interface {
  std::vector<PortSignature> inputs;
  std::vector<PortSignature> outputs;

  std::size_t inputCount() const { return count(inputs); }
  std::size_t outputCount() const { return count(outputs); }

  ValuationIndex encodeInputs(const std::vector<Message>& messages) const { return encode(inputs, messages); }
  ValuationIndex encodeOutputs(const std::vector<Message>& messages) const { return encode(outputs, messages); }
  std::vector<Message> decodeInputs(ValuationIndex index) const { return decode(inputs, index); }
  std::vector<Message> decodeOutputs(ValuationIndex index) const { return decode(outputs, index); }

  bool operator==(const Interface&) const = default;

  static std::size_t count(const std::vector<PortSignature>& ports);
  /// Throws InterfaceMismatch on a value outside a port's domain.
  static ValuationIndex encode(const std::vector<PortSignature>& ports, const std::vector<Message>& messages);
  static std::vector<Message> decode(const std::vector<PortSignature>& ports, ValuationIndex index);
};

Interface interfaceOf(const Model& model, const ComponentType& component);

struct Config {
  std::size_t state = 0;
  std::vector<Value> variables;
  bool operator==(const Config&) const = default;
};

struct Step {
  ValuationIndex output = 0;
  std::uint32_t target = 0;
  std::int32_t transition = -1;  // -1 for steps added by completion
  bool operator==(const Step&) const = default;
  auto operator<=>(const Step&) const = default;
};

enum class CompletionMode { EpsilonSelfLoop, Chaos, Reject };

const char* toString(CompletionMode mode);
std::optional<CompletionMode> completionModeByName(const std::string& name);

class Transducer {
 public:
  std::string name;
  Interface interface;
  std::vector<std::string> stateNames;
  std::vector<std::string> variableNames;
  std::vector<Config> configs;
  std::uint32_t initialConfig = 0;
  ValuationIndex initialOutput = 0;
  std::vector<SourcePos> transitionPositions;
  bool partial = false;

  std::span<const Step> steps(std::size_t config, ValuationIndex input) const {
    const std::size_t cell = config * inputCount_ + input;
    return {table_.data() + offsets_[cell], table_.data() + offsets_[cell + 1]};
  }
  std::size_t stepCount() const { return table_.size(); }

  /// Replaces the step relation. `cells[config * inputCount + input]` lists
  /// the steps for that pair; each list is stored sorted.
  void setSteps(std::vector<std::vector<Step>> cells);

  bool operator==(const Transducer&) const = default;

 private:
  std::size_t inputCount_ = 0;
  std::vector<std::uint32_t> offsets_ = {0};
  std::vector<Step> table_;
};

struct ElaborationOptions {
  std::size_t maxConfigs = 1'000'000;
};

/// Configurations are every state paired with every variable valuation
/// reachable by any transition. No completion is applied. Throws
/// LimitExceeded past `maxConfigs`, EvaluationError if an expression reads
/// an absent message.
Transducer elaborate(const Model& model, const ComponentType& component, const ElaborationOptions& options = {});

/// Gives every (config, input) pair without a step a meaning.
Transducer complete(const Transducer& t, CompletionMode mode);

/// Configurations reachable from the initial one.
std::vector<bool> reachable(const Transducer& t);

/// Evaluates an expression against a component's current inputs (indexed by
/// component port) and variable values. Booleans are 0/1 and enumeration
/// values their ordinal.
std::int64_t evaluate(const Model& model, const ComponentType& component, const Expr& expr,
                      const std::vector<Message>& portValues, const std::vector<Value>& variables);

// Choice among enabled steps. Seeded choices use SplitMix64: the state
// advances by 0x9E3779B97F4A7C15 and the output is mixed with shifts 30, 27,
// 31 and multipliers 0xBF58476D1CE4E5B9, 0x94D049BB133111EB. An index in
// [0, k) is the high 64 bits of the 128-bit product of the output and k. A
// draw is taken only when two or more steps are enabled.
class StepPolicy {
 public:
  static StepPolicy strict() { return StepPolicy(true, 0); }
  static StepPolicy seeded(std::uint64_t seed) { return StepPolicy(false, seed); }

  bool isStrict() const { return strict_; }
  std::uint64_t next();
  std::size_t choose(std::size_t k);

 private:
  StepPolicy(bool strict, std::uint64_t seed) : strict_(strict), state_(seed) {}
  bool strict_;
  std::uint64_t state_;
};

/// One synchronous computation step. Throws NondeterminismError under the
/// strict policy when more than one step is enabled, Error when none is.
Step step(const Transducer& t, std::size_t config, ValuationIndex input, StepPolicy& policy);

// Per-port timed message sequences.
struct StreamBundle {
  std::size_t ticks = 0;
  std::map<std::string, std::vector<Message>> ports;
  bool operator==(const StreamBundle&) const = default;
};

nlohmann::json toJson(const Message& m);
Message messageFromJson(const nlohmann::json& j);

/// `{"ticks": N, "ports": {"name": [...]}}`; null encodes epsilon.
nlohmann::json toJson(const StreamBundle& bundle);
/// Throws SchemaError on malformed input.
StreamBundle bundleFromJson(const nlohmann::json& j);
/// Compact dump with sorted keys.
std::string canonicalJson(const StreamBundle& bundle);

struct SimulationOptions {
  std::size_t ticks = 0;
  StepPolicy policy = StepPolicy::strict();
  bool recordInternal = false;
};

struct SimulationResult {
  StreamBundle outputs;
  // Every port of every instance, keyed by dotted instance path.
  std::map<std::string, StreamBundle> internal;
};

/// Runs `root` for `options.ticks` ticks. Each atomic instance reads the
/// current values of its in-ports and writes the next values of its
/// out-ports; a global swap then makes every next value current. Out-port
/// entries in `inputs` are ignored so that recorded traces replay directly.
/// Throws SchemaError, TickOverrun and NondeterminismError.
SimulationResult simulate(const Model& model, ComponentId root, const StreamBundle& inputs,
                          SimulationOptions options);

}  // namespace maa
