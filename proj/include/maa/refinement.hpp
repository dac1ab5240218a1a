#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "maa/semantics.hpp"

namespace maa {

// One tick of observation: the messages on every input and every output
// port, in interface order. Outputs at tick t+1 answer inputs at tick t; the
// first letter carries the initial outputs.
struct Letter {
  std::vector<Message> inputs;
  std::vector<Message> outputs;
  bool operator==(const Letter&) const = default;
};

struct Trace {
  Interface interface;
  std::vector<Letter> letters;
  bool operator==(const Trace&) const = default;
};

struct Verdict {
  bool holds = true;
  std::optional<Trace> counterexample;  // set iff !holds
};

struct RefinementOptions {
  CompletionMode implMode = CompletionMode::EpsilonSelfLoop;
  CompletionMode specMode = CompletionMode::Chaos;
  std::size_t maxNodes = 1'000'000;
};

/// Decides whether every trace of complete(impl, implMode) is a trace of
/// complete(spec, specMode). Both arguments are uncompleted transducers as
/// returned by elaborate(). Breadth-first, so a counterexample is as short
/// as possible. Throws InterfaceMismatch and LimitExceeded.
Verdict refines(const Transducer& impl, const Transducer& spec, const RefinementOptions& options = {});

struct ReplayResult {
  bool accepted = true;
  std::size_t rejectedAt = 0;  // first letter no run can produce
};

/// Whether some run of `t` (already completed) produces exactly `trace`.
ReplayResult replay(const Trace& trace, const Transducer& t);

/// `t` with its ports permuted into the order of `target`. Throws
/// InterfaceMismatch if the port sets differ in names, directions or types.
Transducer reorderPorts(const Transducer& t, const Interface& target);

/// A trace as one stream bundle holding both input and output ports.
StreamBundle toBundle(const Trace& trace);
Trace traceFromBundle(const StreamBundle& bundle, const Interface& interface);

}  // namespace maa
