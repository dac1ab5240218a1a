#include "maa/refinement.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <unordered_map>

#include "maa/errors.hpp"

namespace maa {
namespace {

// Spec configurations paired with the outputs they will show next.
using SpecSet = std::vector<std::uint64_t>;

std::uint64_t pack(std::uint32_t config, ValuationIndex pending) {
  return (static_cast<std::uint64_t>(config) << 32) | pending;
}
std::uint32_t configOf(std::uint64_t e) { return static_cast<std::uint32_t>(e >> 32); }
ValuationIndex pendingOf(std::uint64_t e) { return static_cast<ValuationIndex>(e & 0xFFFFFFFFu); }

struct NodeKey {
  std::uint32_t implConfig;
  ValuationIndex implPending;
  SpecSet spec;
  bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    mix(k.implConfig);
    mix(k.implPending);
    for (auto e : k.spec) mix(e);
    return static_cast<std::size_t>(h);
  }
};

struct Node {
  NodeKey key;
  std::size_t parent = 0;
  ValuationIndex input = 0;  // input of the letter that led here
};

bool samePorts(const std::vector<PortSignature>& a, const std::vector<PortSignature>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& p : a) {
    if (std::find(b.begin(), b.end(), p) == b.end()) return false;
  }
  return true;
}

std::vector<std::size_t> permutation(const std::vector<PortSignature>& from, const std::vector<PortSignature>& to) {
  std::vector<std::size_t> perm;
  for (const auto& p : to) {
    const auto it = std::find(from.begin(), from.end(), p);
    perm.push_back(static_cast<std::size_t>(it - from.begin()));
  }
  return perm;
}

std::vector<Message> permute(const std::vector<Message>& values, const std::vector<std::size_t>& perm) {
  std::vector<Message> out;
  for (std::size_t i : perm) out.push_back(values[i]);
  return out;
}

void requireSameInterface(const Interface& a, const Interface& b) {
  if (!samePorts(a.inputs, b.inputs) || !samePorts(a.outputs, b.outputs)) {
    throw InterfaceMismatch("port interfaces differ (names, directions or types)");
  }
}

}  // namespace

Transducer reorderPorts(const Transducer& t, const Interface& target) {
  requireSameInterface(t.interface, target);
  if (t.interface == target) return t;
  const auto inPerm = permutation(t.interface.inputs, target.inputs);
  const auto outPerm = permutation(t.interface.outputs, target.outputs);
  // inverse: position in t for each position in target
  Transducer out = t;
  out.interface = target;
  auto mapOutput = [&](ValuationIndex o) { return target.encodeOutputs(permute(t.interface.decodeOutputs(o), outPerm)); };
  out.initialOutput = mapOutput(t.initialOutput);
  const std::size_t inputs = target.inputCount();
  std::vector<std::vector<Step>> cells(t.configs.size() * inputs);
  for (std::size_t c = 0; c < t.configs.size(); ++c) {
    for (std::size_t i = 0; i < inputs; ++i) {
      const auto original = permute(t.interface.decodeInputs(static_cast<ValuationIndex>(i)), inPerm);
      const ValuationIndex newIndex = target.encodeInputs(original);
      auto& cell = cells[c * inputs + newIndex];
      for (const Step& s : t.steps(c, static_cast<ValuationIndex>(i))) {
        cell.push_back({mapOutput(s.output), s.target, s.transition});
      }
    }
  }
  out.setSteps(std::move(cells));
  return out;
}

Verdict refines(const Transducer& implIn, const Transducer& specIn, const RefinementOptions& options) {
  requireSameInterface(implIn.interface, specIn.interface);
  const Transducer impl = complete(implIn, options.implMode);
  const Transducer spec = complete(reorderPorts(specIn, implIn.interface), options.specMode);
  const std::size_t inputCount = impl.interface.inputCount();

  std::vector<Node> nodes;
  std::unordered_map<NodeKey, std::size_t, NodeKeyHash> seen;
  nodes.push_back({{impl.initialConfig, impl.initialOutput, {pack(spec.initialConfig, spec.initialOutput)}}, 0, 0});
  seen.emplace(nodes.front().key, 0);

  auto counterexample = [&](std::size_t at) {
    std::vector<std::size_t> path;
    for (std::size_t n = at;; n = nodes[n].parent) {
      path.push_back(n);
      if (n == 0) break;
    }
    std::reverse(path.begin(), path.end());
    Trace trace;
    trace.interface = impl.interface;
    for (std::size_t k = 0; k < path.size(); ++k) {
      // The letter leaving node path[k]: its pending outputs with the input
      // that led to path[k + 1]; the final input is arbitrary (all epsilon).
      const ValuationIndex input = k + 1 < path.size() ? nodes[path[k + 1]].input : 0;
      trace.letters.push_back({impl.interface.decodeInputs(input),
                               impl.interface.decodeOutputs(nodes[path[k]].key.implPending)});
    }
    return Verdict{false, std::move(trace)};
  };

  for (std::size_t n = 0; n < nodes.size(); ++n) {
    const std::uint32_t implConfig = nodes[n].key.implConfig;
    const ValuationIndex pending = nodes[n].key.implPending;
    std::vector<std::uint32_t> agreeing;
    for (auto e : nodes[n].key.spec) {
      if (pendingOf(e) == pending) agreeing.push_back(configOf(e));
    }
    agreeing.erase(std::unique(agreeing.begin(), agreeing.end()), agreeing.end());
    if (agreeing.empty()) return counterexample(n);

    for (std::size_t i = 0; i < inputCount; ++i) {
      const auto implSteps = impl.steps(implConfig, static_cast<ValuationIndex>(i));
      if (implSteps.empty()) continue;
      SpecSet successors;
      for (std::uint32_t c : agreeing) {
        for (const Step& s : spec.steps(c, static_cast<ValuationIndex>(i))) successors.push_back(pack(s.target, s.output));
      }
      std::sort(successors.begin(), successors.end());
      successors.erase(std::unique(successors.begin(), successors.end()), successors.end());
      for (const Step& s : implSteps) {
        NodeKey key{s.target, s.output, successors};
        if (seen.count(key) != 0) continue;
        if (nodes.size() >= options.maxNodes) {
          throw LimitExceeded("refinement check explored more than " + std::to_string(options.maxNodes) + " states");
        }
        seen.emplace(key, nodes.size());
        nodes.push_back({std::move(key), n, static_cast<ValuationIndex>(i)});
      }
    }
  }
  return Verdict{true, std::nullopt};
}

ReplayResult replay(const Trace& trace, const Transducer& tIn) {
  requireSameInterface(trace.interface, tIn.interface);
  const Transducer t = reorderPorts(tIn, trace.interface);
  std::vector<std::uint64_t> current{pack(t.initialConfig, t.initialOutput)};
  for (std::size_t k = 0; k < trace.letters.size(); ++k) {
    const Letter& letter = trace.letters[k];
    const ValuationIndex input = t.interface.encodeInputs(letter.inputs);
    const ValuationIndex output = t.interface.encodeOutputs(letter.outputs);
    std::vector<std::uint64_t> next;
    bool produced = false;
    for (auto e : current) {
      if (pendingOf(e) != output) continue;
      produced = true;
      for (const Step& s : t.steps(configOf(e), input)) next.push_back(pack(s.target, s.output));
    }
    if (!produced) return {false, k};
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current = std::move(next);
  }
  return {true, 0};
}

StreamBundle toBundle(const Trace& trace) {
  StreamBundle b;
  b.ticks = trace.letters.size();
  for (std::size_t p = 0; p < trace.interface.inputs.size(); ++p) {
    auto& seq = b.ports[trace.interface.inputs[p].name];
    for (const auto& l : trace.letters) seq.push_back(l.inputs[p]);
  }
  for (std::size_t p = 0; p < trace.interface.outputs.size(); ++p) {
    auto& seq = b.ports[trace.interface.outputs[p].name];
    for (const auto& l : trace.letters) seq.push_back(l.outputs[p]);
  }
  return b;
}

Trace traceFromBundle(const StreamBundle& bundle, const Interface& interface) {
  Trace trace;
  trace.interface = interface;
  auto column = [&](const PortSignature& p) -> const std::vector<Message>& {
    const auto it = bundle.ports.find(p.name);
    if (it == bundle.ports.end()) throw InterfaceMismatch("trace has no port '" + p.name + "'");
    return it->second;
  };
  if (bundle.ports.size() != interface.inputs.size() + interface.outputs.size()) {
    throw InterfaceMismatch("trace ports do not match the interface");
  }
  for (std::size_t k = 0; k < bundle.ticks; ++k) {
    Letter l;
    for (const auto& p : interface.inputs) l.inputs.push_back(column(p).at(k));
    for (const auto& p : interface.outputs) l.outputs.push_back(column(p).at(k));
    trace.letters.push_back(std::move(l));
  }
  return trace;
}

}  // namespace maa
