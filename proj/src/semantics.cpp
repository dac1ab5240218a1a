#include "maa/semantics.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

#include "maa/errors.hpp"

namespace maa {

std::size_t Interface::count(const std::vector<PortSignature>& ports) {
  std::size_t n = 1;
  for (const auto& p : ports) n *= p.type.size() + 1;
  return n;
}

ValuationIndex Interface::encode(const std::vector<PortSignature>& ports, const std::vector<Message>& messages) {
  if (messages.size() != ports.size()) {
    throw InterfaceMismatch("expected " + std::to_string(ports.size()) + " messages, got " +
                            std::to_string(messages.size()));
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < ports.size(); ++i) {
    std::size_t digit = 0;
    if (messages[i]) {
      const auto pos = ports[i].type.indexOf(*messages[i]);
      if (!pos) {
        throw InterfaceMismatch("value " + toString(*messages[i]) + " is not in the domain of port '" +
                                ports[i].name + "'");
      }
      digit = *pos + 1;
    }
    index = index * (ports[i].type.size() + 1) + digit;
  }
  return static_cast<ValuationIndex>(index);
}

std::vector<Message> Interface::decode(const std::vector<PortSignature>& ports, ValuationIndex index) {
  std::vector<Message> out(ports.size());
  std::size_t rest = index;
  for (std::size_t k = ports.size(); k-- > 0;) {
    const std::size_t radix = ports[k].type.size() + 1;
    const std::size_t digit = rest % radix;
    rest /= radix;
    if (digit != 0) out[k] = ports[k].type.valueAt(digit - 1);
  }
  return out;
}

Interface interfaceOf(const Model& model, const ComponentType& component) {
  Interface iface;
  for (const auto& p : component.ports) {
    PortSignature sig{p.name, model.typeOf(p)};
    (p.direction == Direction::In ? iface.inputs : iface.outputs).push_back(std::move(sig));
  }
  return iface;
}

const char* toString(CompletionMode mode) {
  switch (mode) {
    case CompletionMode::EpsilonSelfLoop: return "epsilon";
    case CompletionMode::Chaos: return "chaos";
    case CompletionMode::Reject: return "reject";
  }
  return "?";
}

std::optional<CompletionMode> completionModeByName(const std::string& name) {
  if (name == "epsilon" || name == "epsilonSelfLoop") return CompletionMode::EpsilonSelfLoop;
  if (name == "chaos") return CompletionMode::Chaos;
  if (name == "reject") return CompletionMode::Reject;
  return std::nullopt;
}

void Transducer::setSteps(std::vector<std::vector<Step>> cells) {
  inputCount_ = interface.inputCount();
  offsets_.assign(1, 0);
  offsets_.reserve(cells.size() + 1);
  table_.clear();
  for (auto& cell : cells) {
    std::sort(cell.begin(), cell.end());
    cell.erase(std::unique(cell.begin(), cell.end()), cell.end());
    table_.insert(table_.end(), cell.begin(), cell.end());
    offsets_.push_back(static_cast<std::uint32_t>(table_.size()));
  }
}

namespace {

std::int64_t saturatingAdd(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    return b > 0 ? std::numeric_limits<std::int64_t>::max() : std::numeric_limits<std::int64_t>::min();
  }
  return r;
}

std::int64_t saturatingSub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) {
    return b < 0 ? std::numeric_limits<std::int64_t>::max() : std::numeric_limits<std::int64_t>::min();
  }
  return r;
}

std::int64_t clampTo(const TypeDef& t, std::int64_t raw) {
  if (t.kind != TypeDef::Kind::BoundedInt) return raw;
  return std::clamp(raw, t.lo, t.hi);
}

std::int64_t constRaw(const Model& model, const Expr& e) {
  if (const auto* b = std::get_if<bool>(&e.constant)) return *b ? 1 : 0;
  if (const auto* i = std::get_if<std::int64_t>(&e.constant)) return *i;
  return model.typedefs[*e.enumType].toRaw(e.constant);
}

// Effect of firing one transition, or nullopt if it is not enabled.
struct Effect {
  std::vector<Message> outputs;  // by interface output order
  std::vector<Value> variables;
};

class Firing {
 public:
  Firing(const Model& model, const ComponentType& component)
      : model_(model), component_(component), automaton_(component.automaton()) {
    for (std::size_t i = 0; i < component.ports.size(); ++i) {
      auto& list = component.ports[i].direction == Direction::In ? inPorts_ : outPorts_;
      list.push_back(i);
    }
  }

  std::vector<Message> portValues(const std::vector<Message>& inputs) const {
    std::vector<Message> values(component_.ports.size());
    for (std::size_t k = 0; k < inPorts_.size(); ++k) values[inPorts_[k]] = inputs[k];
    return values;
  }

  std::optional<Effect> fire(const Transition& t, const std::vector<Message>& portValues,
                             const std::vector<Value>& variables) const {
    for (const auto& lit : t.trigger) {
      const Message& m = portValues[lit.port];
      if (!m || *m != lit.value) return std::nullopt;
    }
    if (t.guard && evaluate(model_, component_, *t.guard, portValues, variables) == 0) return std::nullopt;
    Effect effect;
    effect.outputs.resize(outPorts_.size());
    for (const auto& o : t.outputs) {
      const TypeDef& type = model_.typeOf(component_.ports[o.port]);
      const std::int64_t raw = clampTo(type, evaluate(model_, component_, o.value, portValues, variables));
      const auto slot = std::find(outPorts_.begin(), outPorts_.end(), o.port) - outPorts_.begin();
      effect.outputs[static_cast<std::size_t>(slot)] = type.fromRaw(raw);
    }
    effect.variables = variables;
    for (const auto& a : t.assignments) {
      const TypeDef& type = model_.typedefs[automaton_.variables[a.variable].type];
      const std::int64_t raw = clampTo(type, evaluate(model_, component_, a.value, portValues, variables));
      effect.variables[a.variable] = type.fromRaw(raw);
    }
    return effect;
  }

 private:
  const Model& model_;
  const ComponentType& component_;
  const Automaton& automaton_;
  std::vector<std::size_t> inPorts_;
  std::vector<std::size_t> outPorts_;
};

}  // namespace

std::int64_t evaluate(const Model& model, const ComponentType& component, const Expr& e,
                      const std::vector<Message>& portValues, const std::vector<Value>& variables) {
  switch (e.kind) {
    case Expr::Kind::Const: return constRaw(model, e);
    case Expr::Kind::Port: {
      const Message& m = portValues.at(e.index);
      if (!m) throw EvaluationError("port '" + component.ports[e.index].name + "' carries no message");
      return model.typeOf(component.ports[e.index]).toRaw(*m);
    }
    case Expr::Kind::Var: {
      const auto& decl = component.automaton().variables[e.index];
      return model.typedefs[decl.type].toRaw(variables.at(e.index));
    }
    case Expr::Kind::Not: return evaluate(model, component, e.args[0], portValues, variables) == 0 ? 1 : 0;
    case Expr::Kind::Binary: break;
  }
  const std::int64_t lhs = evaluate(model, component, e.args[0], portValues, variables);
  if (e.op == ExprOp::And && lhs == 0) return 0;
  if (e.op == ExprOp::Or && lhs != 0) return 1;
  const std::int64_t rhs = evaluate(model, component, e.args[1], portValues, variables);
  switch (e.op) {
    case ExprOp::And:
    case ExprOp::Or: return rhs != 0 ? 1 : 0;
    case ExprOp::Eq: return lhs == rhs;
    case ExprOp::Ne: return lhs != rhs;
    case ExprOp::Lt: return lhs < rhs;
    case ExprOp::Le: return lhs <= rhs;
    case ExprOp::Gt: return lhs > rhs;
    case ExprOp::Ge: return lhs >= rhs;
    case ExprOp::Add: return saturatingAdd(lhs, rhs);
    case ExprOp::Sub: return saturatingSub(lhs, rhs);
    case ExprOp::Not: break;
  }
  throw EvaluationError("malformed expression");
}

Transducer elaborate(const Model& model, const ComponentType& component, const ElaborationOptions& options) {
  const Automaton& a = component.automaton();
  Transducer t;
  t.name = component.name;
  t.interface = interfaceOf(model, component);
  for (const auto& s : a.states) t.stateNames.push_back(s.name);
  for (const auto& v : a.variables) t.variableNames.push_back(v.name);
  for (const auto& tr : a.transitions) t.transitionPositions.push_back(tr.pos.value);

  const std::size_t stateCount = a.states.size();
  const std::size_t inputCount = t.interface.inputCount();
  const auto initialState = a.initialState().value_or(0);

  std::vector<Message> initialOutputs(t.interface.outputs.size());
  if (!a.states.empty()) {
    for (const auto& lit : a.states[initialState].initialOutputs) {
      for (std::size_t k = 0; k < t.interface.outputs.size(); ++k) {
        if (t.interface.outputs[k].name == component.ports[lit.port].name) initialOutputs[k] = lit.value;
      }
    }
  }
  t.initialOutput = t.interface.encodeOutputs(initialOutputs);

  std::vector<Value> initialValuation;
  for (const auto& v : a.variables) initialValuation.push_back(v.initial);

  // Valuations are discovered breadth-first; config id = valuation * |states| + state.
  std::vector<std::vector<Value>> valuations{initialValuation};
  std::map<std::vector<Value>, std::size_t> valuationIds{{initialValuation, 0}};
  std::vector<std::vector<Step>> cells;
  const Firing firing(model, component);

  for (std::size_t v = 0; v < valuations.size(); ++v) {
    if ((v + 1) * std::max<std::size_t>(stateCount, 1) > options.maxConfigs) {
      throw LimitExceeded("component '" + component.name + "' has more than " + std::to_string(options.maxConfigs) +
                          " configurations");
    }
    for (std::size_t q = 0; q < stateCount; ++q) {
      for (std::size_t i = 0; i < inputCount; ++i) {
        const std::vector<Message> ports = firing.portValues(t.interface.decodeInputs(static_cast<ValuationIndex>(i)));
        std::vector<Step> cell;
        for (std::size_t ti = 0; ti < a.transitions.size(); ++ti) {
          const Transition& tr = a.transitions[ti];
          if (tr.source != q) continue;
          const std::vector<Value> current = valuations[v];
          auto effect = firing.fire(tr, ports, current);
          if (!effect) continue;
          auto [it, inserted] = valuationIds.emplace(effect->variables, valuations.size());
          if (inserted) valuations.push_back(effect->variables);
          cell.push_back({t.interface.encodeOutputs(effect->outputs),
                          static_cast<std::uint32_t>(it->second * stateCount + tr.target),
                          static_cast<std::int32_t>(ti)});
        }
        cells.push_back(std::move(cell));
      }
    }
  }

  for (const auto& valuation : valuations) {
    for (std::size_t q = 0; q < stateCount; ++q) t.configs.push_back({q, valuation});
  }
  t.initialConfig = static_cast<std::uint32_t>(initialState);
  t.setSteps(std::move(cells));
  return t;
}

Transducer complete(const Transducer& t, CompletionMode mode) {
  Transducer out = t;
  const std::size_t inputs = t.interface.inputCount();
  const std::size_t outputs = t.interface.outputCount();
  if (mode == CompletionMode::Reject) {
    for (std::size_t c = 0; c < t.configs.size() && !out.partial; ++c) {
      for (std::size_t i = 0; i < inputs; ++i) {
        if (t.steps(c, static_cast<ValuationIndex>(i)).empty()) {
          out.partial = true;
          break;
        }
      }
    }
    return out;
  }
  std::vector<std::vector<Step>> cells;
  cells.reserve(t.configs.size() * inputs);
  for (std::size_t c = 0; c < t.configs.size(); ++c) {
    for (std::size_t i = 0; i < inputs; ++i) {
      const auto existing = t.steps(c, static_cast<ValuationIndex>(i));
      std::vector<Step> cell(existing.begin(), existing.end());
      if (cell.empty()) {
        if (mode == CompletionMode::EpsilonSelfLoop) {
          cell.push_back({0, static_cast<std::uint32_t>(c), -1});
        } else {
          if (t.configs.size() * outputs > 50'000'000 / std::max<std::size_t>(inputs, 1)) {
            throw LimitExceeded("chaos completion of '" + t.name + "' is too large");
          }
          for (std::size_t target = 0; target < t.configs.size(); ++target) {
            for (std::size_t o = 0; o < outputs; ++o) {
              cell.push_back({static_cast<ValuationIndex>(o), static_cast<std::uint32_t>(target), -1});
            }
          }
        }
      }
      cells.push_back(std::move(cell));
    }
  }
  out.setSteps(std::move(cells));
  return out;
}

std::vector<bool> reachable(const Transducer& t) {
  std::vector<bool> seen(t.configs.size(), false);
  if (t.configs.empty()) return seen;
  std::deque<std::size_t> queue{t.initialConfig};
  seen[t.initialConfig] = true;
  const std::size_t inputs = t.interface.inputCount();
  while (!queue.empty()) {
    const std::size_t c = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < inputs; ++i) {
      for (const Step& s : t.steps(c, static_cast<ValuationIndex>(i))) {
        if (!seen[s.target]) {
          seen[s.target] = true;
          queue.push_back(s.target);
        }
      }
    }
  }
  return seen;
}

std::uint64_t StepPolicy::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::size_t StepPolicy::choose(std::size_t k) {
  const unsigned __int128 product = static_cast<unsigned __int128>(next()) * k;
  return static_cast<std::size_t>(product >> 64);
}

Step step(const Transducer& t, std::size_t config, ValuationIndex input, StepPolicy& policy) {
  const auto enabled = t.steps(config, input);
  if (enabled.empty()) {
    throw Error("no step of '" + t.name + "' is enabled in state '" + t.stateNames[t.configs[config].state] + "'");
  }
  if (enabled.size() == 1) return enabled.front();
  if (policy.isStrict()) {
    std::vector<SourcePos> competing;
    std::ostringstream msg;
    msg << "nondeterministic choice in '" << t.name << "', state '" << t.stateNames[t.configs[config].state]
        << "' between transitions at";
    for (const Step& s : enabled) {
      if (s.transition < 0) continue;
      const SourcePos& p = t.transitionPositions[static_cast<std::size_t>(s.transition)];
      if (std::find(competing.begin(), competing.end(), p) != competing.end()) continue;
      competing.push_back(p);
      msg << ' ' << p.file << ':' << p.line << ':' << p.column;
    }
    throw NondeterminismError(msg.str(), std::move(competing));
  }
  return enabled[policy.choose(enabled.size())];
}

// Bundles.

nlohmann::json toJson(const Message& m) {
  if (!m) return nullptr;
  if (const auto* b = std::get_if<bool>(&*m)) return *b;
  if (const auto* i = std::get_if<std::int64_t>(&*m)) return *i;
  return std::get<std::string>(*m);
}

Message messageFromJson(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  if (j.is_boolean()) return Value{j.get<bool>()};
  if (j.is_number_integer()) return Value{j.get<std::int64_t>()};
  if (j.is_string()) return Value{j.get<std::string>()};
  throw SchemaError("unsupported message " + j.dump());
}

nlohmann::json toJson(const StreamBundle& bundle) {
  nlohmann::json ports = nlohmann::json::object();
  for (const auto& [name, seq] : bundle.ports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& m : seq) arr.push_back(toJson(m));
    ports[name] = std::move(arr);
  }
  return {{"ticks", bundle.ticks}, {"ports", std::move(ports)}};
}

StreamBundle bundleFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("ticks") || !j.contains("ports")) {
    throw SchemaError("a stream bundle needs the fields 'ticks' and 'ports'");
  }
  if (!j["ticks"].is_number_unsigned() && !(j["ticks"].is_number_integer() && j["ticks"].get<std::int64_t>() >= 0)) {
    throw SchemaError("'ticks' must be a non-negative integer");
  }
  if (!j["ports"].is_object()) throw SchemaError("'ports' must be an object");
  StreamBundle b;
  b.ticks = j["ticks"].get<std::size_t>();
  for (const auto& [name, seq] : j["ports"].items()) {
    if (!seq.is_array()) throw SchemaError("port '" + name + "' must map to an array");
    if (seq.size() != b.ticks) {
      throw SchemaError("port '" + name + "' has " + std::to_string(seq.size()) + " messages, expected " +
                        std::to_string(b.ticks));
    }
    std::vector<Message> messages;
    for (const auto& m : seq) messages.push_back(messageFromJson(m));
    b.ports.emplace(name, std::move(messages));
  }
  return b;
}

std::string canonicalJson(const StreamBundle& bundle) { return toJson(bundle).dump(); }

// Simulation.

namespace {

struct Driver {
  enum class Kind { None, RootInput, AtomicOutput };
  Kind kind = Kind::None;
  std::size_t instance = 0;  // AtomicOutput
  std::size_t index = 0;     // output position, or root port index
};

struct Slot {
  std::optional<std::size_t> incoming;
  Driver origin;  // set for atomic out-ports and root in-ports
};

struct AtomicInstance {
  std::string path;
  ComponentId type = 0;
  std::vector<std::size_t> inSlots;  // interface input order
  std::uint32_t config = 0;
  std::vector<Message> current;  // interface output order
  std::vector<Message> next;
};

struct InstanceRecord {
  std::string path;
  ComponentId type = 0;
  std::vector<std::size_t> slots;  // by component port index
};

class Network {
 public:
  Network(const Model& model, ComponentId root) : model_(model) {
    const auto rootSlots = instantiate(root, "");
    const ComponentType& c = model.components[root];
    for (std::size_t p = 0; p < c.ports.size(); ++p) {
      if (c.ports[p].direction == Direction::In) {
        slots_[rootSlots[p]].origin = {Driver::Kind::RootInput, 0, p};
        // An atomic root reads its inputs directly from the bundle.
        slots_[rootSlots[p]].incoming.reset();
      }
    }
    rootSlots_ = rootSlots;
    drivers_.resize(slots_.size());
    for (std::size_t s = 0; s < slots_.size(); ++s) drivers_[s] = follow(s);
  }

  std::vector<AtomicInstance>& atomics() { return atomics_; }
  const std::vector<InstanceRecord>& records() const { return records_; }
  const std::vector<std::size_t>& rootSlots() const { return rootSlots_; }
  const Driver& driver(std::size_t slot) const { return drivers_[slot]; }

 private:
  std::vector<std::size_t> instantiate(ComponentId id, const std::string& path) {
    const ComponentType& c = model_.components[id];
    std::vector<std::size_t> mine;
    for (std::size_t p = 0; p < c.ports.size(); ++p) {
      mine.push_back(slots_.size());
      slots_.emplace_back();
    }
    if (!path.empty()) records_.push_back({path, id, mine});
    if (c.isAtomic()) {
      AtomicInstance inst;
      inst.path = path;
      inst.type = id;
      std::size_t outIndex = 0;
      for (std::size_t p = 0; p < c.ports.size(); ++p) {
        if (c.ports[p].direction == Direction::In) {
          inst.inSlots.push_back(mine[p]);
        } else {
          slots_[mine[p]].origin = {Driver::Kind::AtomicOutput, atomics_.size(), outIndex++};
        }
      }
      atomics_.push_back(std::move(inst));
      return mine;
    }
    const Composition& comp = c.composition();
    std::vector<std::vector<std::size_t>> subSlots;
    for (const auto& sub : comp.subcomponents) {
      subSlots.push_back(instantiate(sub.type, path.empty() ? sub.name : path + "." + sub.name));
    }
    auto slotOf = [&](const PortRef& r) { return r.instance ? subSlots[*r.instance][r.port] : mine[r.port]; };
    for (const auto& con : comp.connectors) {
      const std::size_t source = slotOf(con.source);
      for (const auto& target : con.targets) slots_[slotOf(target)].incoming = source;
    }
    return mine;
  }

  Driver follow(std::size_t slot) const {
    std::size_t at = slot;
    for (std::size_t hops = 0; hops <= slots_.size(); ++hops) {
      const Slot& s = slots_[at];
      if (s.origin.kind != Driver::Kind::None) return s.origin;
      if (!s.incoming) return {};
      at = *s.incoming;
    }
    return {};  // a cycle through pass-through connectors only carries nothing
  }

  const Model& model_;
  std::vector<Slot> slots_;
  std::vector<AtomicInstance> atomics_;
  std::vector<InstanceRecord> records_;
  std::vector<std::size_t> rootSlots_;
  std::vector<Driver> drivers_;
};

}  // namespace

SimulationResult simulate(const Model& model, ComponentId root, const StreamBundle& inputs,
                          SimulationOptions options) {
  const ComponentType& rootType = model.components.at(root);
  for (const auto& [name, seq] : inputs.ports) {
    const auto p = rootType.findPort(name);
    if (!p) throw SchemaError("input bundle names unknown port '" + name + "'");
    if (seq.size() != inputs.ticks) throw SchemaError("port '" + name + "' does not have 'ticks' messages");
    if (rootType.ports[*p].direction != Direction::In) continue;
    const TypeDef& type = model.typeOf(rootType.ports[*p]);
    for (const auto& m : seq) {
      if (m && !type.indexOf(*m)) {
        throw SchemaError("value " + toString(*m) + " on port '" + name + "' is not a " + type.name);
      }
    }
  }
  for (const auto& p : rootType.ports) {
    if (p.direction == Direction::In && inputs.ports.count(p.name) == 0) {
      throw SchemaError("input bundle is missing port '" + p.name + "'");
    }
  }
  if (options.ticks > inputs.ticks) {
    throw TickOverrun("requested " + std::to_string(options.ticks) + " ticks but the inputs cover only " +
                      std::to_string(inputs.ticks));
  }

  Network net(model, root);
  std::map<ComponentId, Transducer> transducers;
  for (auto& inst : net.atomics()) {
    auto it = transducers.find(inst.type);
    if (it == transducers.end()) {
      it = transducers
               .emplace(inst.type, complete(elaborate(model, model.components[inst.type]), CompletionMode::EpsilonSelfLoop))
               .first;
    }
    inst.config = it->second.initialConfig;
    inst.current = it->second.interface.decodeOutputs(it->second.initialOutput);
  }

  auto value = [&](std::size_t slot, std::size_t tick) -> Message {
    const Driver& d = net.driver(slot);
    switch (d.kind) {
      case Driver::Kind::None: return std::nullopt;
      case Driver::Kind::RootInput: return inputs.ports.at(rootType.ports[d.index].name)[tick];
      case Driver::Kind::AtomicOutput: return net.atomics()[d.instance].current[d.index];
    }
    return std::nullopt;
  };

  SimulationResult result;
  result.outputs.ticks = options.ticks;
  for (const auto& p : rootType.ports) {
    if (p.direction == Direction::Out) result.outputs.ports[p.name];
  }
  if (options.recordInternal) {
    for (const auto& rec : net.records()) {
      StreamBundle& b = result.internal[rec.path];
      b.ticks = options.ticks;
      for (const auto& p : model.components[rec.type].ports) b.ports[p.name];
    }
  }

  for (std::size_t tick = 0; tick < options.ticks; ++tick) {
    for (std::size_t p = 0; p < rootType.ports.size(); ++p) {
      if (rootType.ports[p].direction == Direction::Out) {
        result.outputs.ports[rootType.ports[p].name].push_back(value(net.rootSlots()[p], tick));
      }
    }
    if (options.recordInternal) {
      for (const auto& rec : net.records()) {
        const auto& ports = model.components[rec.type].ports;
        for (std::size_t p = 0; p < ports.size(); ++p) {
          result.internal[rec.path].ports[ports[p].name].push_back(value(rec.slots[p], tick));
        }
      }
    }
    // Compute phase: every atomic instance reads current values only.
    for (auto& inst : net.atomics()) {
      const Transducer& t = transducers.at(inst.type);
      std::vector<Message> in;
      for (std::size_t slot : inst.inSlots) in.push_back(value(slot, tick));
      const Step s = step(t, inst.config, t.interface.encodeInputs(in), options.policy);
      inst.config = s.target;
      inst.next = t.interface.decodeOutputs(s.output);
    }
    // Swap phase.
    for (auto& inst : net.atomics()) inst.current = std::move(inst.next);
  }
  return result;
}

}  // namespace maa
