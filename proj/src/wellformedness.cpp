#include "maa/wellformedness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "maa/errors.hpp"
#include "maa/semantics.hpp"

namespace maa {

Profile Profile::core() {
  return {Name::Core, {"W1", "W2", "W3", "W4", "W5", "W6", "W7", "W8", "W9", "W10"}};
}

Profile Profile::executable() {
  Profile p = core();
  p.name = Name::Executable;
  p.rules.push_back("E1");
  return p;
}

Profile Profile::analysis() {
  Profile p = core();
  p.name = Name::Analysis;
  p.rules.push_back("A1");
  p.rules.push_back("A2");
  return p;
}

std::optional<Profile> Profile::byName(const std::string& name) {
  if (name == "core") return core();
  if (name == "executable") return executable();
  if (name == "analysis") return analysis();
  return std::nullopt;
}

std::vector<ComponentId> closure(const Model& model, ComponentId root) {
  std::vector<ComponentId> out;
  std::vector<bool> seen(model.components.size(), false);
  std::function<void(ComponentId)> visit = [&](ComponentId id) {
    if (seen[id]) return;
    seen[id] = true;
    out.push_back(id);
    const ComponentType& c = model.components[id];
    if (c.isAtomic()) return;
    for (const auto& s : c.composition().subcomponents) visit(s.type);
  };
  visit(root);
  return out;
}

namespace {

std::string where(const SourcePos& p) {
  return p.file + ":" + std::to_string(p.line) + ":" + std::to_string(p.column);
}

class Checker {
 public:
  Checker(const Model& model, const Profile& profile, const CheckOptions& options)
      : model_(model), options_(options) {
    for (const auto& r : profile.rules) rules_.insert(r);
  }

  std::vector<Diagnostic> run() {
    for (ComponentId id = 0; id < model_.components.size(); ++id) {
      if (!selected(id)) continue;
      const ComponentType& c = model_.components[id];
      const std::size_t before = errorCount();
      checkNames(c);
      if (c.isAtomic()) {
        checkAutomaton(c);
      } else {
        checkComposition(c);
      }
      if (on("A2") && !c.isAtomic()) {
        report("A2", "analysis supports atomic components only; '" + c.name + "' is composed", c.pos);
      }
      const bool coreClean = errorCount() == before;
      if (c.isAtomic() && coreClean) {
        if (on("A1")) checkBounds(c);
        if (on("E1") && errorCount() == before) checkDeterminism(c);
      }
    }
    if (on("W8")) checkRecursion();
    sortByPosition(diags_);
    return std::move(diags_);
  }

 private:
  bool on(const char* rule) const { return rules_.count(rule) != 0; }

  bool selected(ComponentId id) const {
    return options_.only.empty() || std::find(options_.only.begin(), options_.only.end(), id) != options_.only.end();
  }

  std::size_t errorCount() const {
    return static_cast<std::size_t>(std::count_if(diags_.begin(), diags_.end(),
                                                  [](const Diagnostic& d) { return d.severity == Severity::Error; }));
  }

  void report(const char* rule, std::string message, const NodePos& pos, Severity severity = Severity::Error) {
    if (!on(rule)) return;
    diags_.push_back({severity, rule, std::move(message), pos.value});
  }

  // W4
  void checkNames(const ComponentType& c) {
    std::map<std::string, const char*> kinds;
    auto declare = [&](const std::string& name, const char* kind, const NodePos& pos, bool sharedWithPorts) {
      auto [it, inserted] = kinds.emplace(name, kind);
      if (!inserted && (sharedWithPorts || std::string(it->second) == kind)) {
        report("W4", std::string("duplicate ") + kind + " name '" + name + "' in component '" + c.name + "'", pos);
      }
    };
    for (const auto& p : c.ports) declare(p.name, "port", p.pos, false);
    if (c.isAtomic()) {
      const Automaton& a = c.automaton();
      for (const auto& s : a.states) declare(s.name, "state", s.pos, false);
      for (const auto& v : a.variables) declare(v.name, "variable", v.pos, true);
    } else {
      for (const auto& s : c.composition().subcomponents) declare(s.name, "instance", s.pos, false);
    }
  }

  void checkAutomaton(const ComponentType& c) {
    const Automaton& a = c.automaton();
    // W5
    const auto initial = std::count_if(a.states.begin(), a.states.end(), [](const StateDecl& s) { return s.isInitial; });
    if (a.states.empty()) {
      report("W5", "automaton of '" + c.name + "' has no states", a.pos);
    } else if (initial != 1) {
      report("W5",
             "automaton of '" + c.name + "' must have exactly one initial state, found " + std::to_string(initial),
             a.pos);
    }
    // W6
    auto inDomain = [&](std::size_t port, const Value& v, const NodePos& pos) {
      const TypeDef& t = model_.typeOf(c.ports[port]);
      if (!t.indexOf(v)) {
        report("W6", "value " + toString(v) + " is not in the domain " + t.name + " of port '" + c.ports[port].name + "'",
               pos);
      }
    };
    for (const auto& s : a.states) {
      for (const auto& lit : s.initialOutputs) inDomain(lit.port, lit.value, lit.pos);
    }
    for (const auto& t : a.transitions) {
      for (const auto& lit : t.trigger) inDomain(lit.port, lit.value, lit.pos);
      for (const auto& o : t.outputs) {
        if (o.value.kind == Expr::Kind::Const) inDomain(o.port, o.value.constant, o.value.pos);
      }
      // W7
      std::set<std::size_t> triggered;
      for (const auto& lit : t.trigger) triggered.insert(lit.port);
      std::function<void(const Expr&)> reads = [&](const Expr& e) {
        if (e.kind == Expr::Kind::Port && triggered.count(e.index) == 0) {
          report("W7", "port '" + c.ports[e.index].name + "' is read but not part of the transition's trigger", e.pos);
        }
        for (const auto& arg : e.args) reads(arg);
      };
      if (t.guard) reads(*t.guard);
      for (const auto& o : t.outputs) reads(o.value);
      for (const auto& as : t.assignments) reads(as.value);
    }
  }

  const PortDecl& portOf(const ComponentType& c, const PortRef& r) const {
    if (!r.instance) return c.ports[r.port];
    return model_.components[c.composition().subcomponents[*r.instance].type].ports[r.port];
  }

  std::string nameOf(const ComponentType& c, const PortRef& r) const {
    if (!r.instance) return r.port < c.ports.size() ? c.ports[r.port].name : "?";
    return c.composition().subcomponents[*r.instance].name + "." + portOf(c, r).name;
  }

  void checkComposition(const ComponentType& c) {
    const Composition& comp = c.composition();
    std::map<std::pair<std::optional<std::size_t>, std::size_t>, int> writers;
    for (const auto& con : comp.connectors) {
      const PortDecl& src = portOf(c, con.source);
      // W2: sources are own in-ports or subcomponent out-ports.
      const bool srcOk = con.source.instance ? src.direction == Direction::Out : src.direction == Direction::In;
      if (!srcOk) report("W2", "'" + nameOf(c, con.source) + "' cannot be a connector source", con.source.pos);
      for (const auto& target : con.targets) {
        const PortDecl& dst = portOf(c, target);
        const bool dstOk = target.instance ? dst.direction == Direction::In : dst.direction == Direction::Out;
        if (!dstOk) report("W2", "'" + nameOf(c, target) + "' cannot be a connector target", target.pos);
        if (!sameType(model_.typeOf(src), model_.typeOf(dst))) {
          report("W1",
                 "connector from '" + nameOf(c, con.source) + "' (" + model_.typeOf(src).name + ") to '" +
                     nameOf(c, target) + "' (" + model_.typeOf(dst).name + ") joins different types",
                 target.pos);
        }
        if (++writers[{target.instance, target.port}] == 2) {
          report("W3", "port '" + nameOf(c, target) + "' has more than one writer", target.pos);
        }
      }
    }
    // W9
    for (std::size_t p = 0; p < c.ports.size(); ++p) {
      if (c.ports[p].direction == Direction::Out && writers.count({std::nullopt, p}) == 0) {
        report("W9", "out-port '" + c.ports[p].name + "' of composed component '" + c.name + "' is not connected",
               c.ports[p].pos);
      }
    }
    // W10
    for (std::size_t s = 0; s < comp.subcomponents.size(); ++s) {
      const ComponentType& sub = model_.components[comp.subcomponents[s].type];
      for (std::size_t p = 0; p < sub.ports.size(); ++p) {
        if (sub.ports[p].direction == Direction::In && writers.count({s, p}) == 0) {
          report("W10", "in-port '" + comp.subcomponents[s].name + "." + sub.ports[p].name + "' is not connected",
                 comp.subcomponents[s].pos, Severity::Warning);
        }
      }
    }
  }

  void checkRecursion() {
    // Colors: 0 unvisited, 1 on stack, 2 done.
    std::vector<int> color(model_.components.size(), 0);
    std::function<void(ComponentId)> visit = [&](ComponentId id) {
      color[id] = 1;
      const ComponentType& c = model_.components[id];
      if (!c.isAtomic()) {
        for (const auto& s : c.composition().subcomponents) {
          if (color[s.type] == 1) {
            if (selected(id)) {
              report("W8", "instance '" + s.name + "' makes '" + model_.components[s.type].name +
                               "' a subcomponent of itself", s.pos);
            }
          } else if (color[s.type] == 0) {
            visit(s.type);
          }
        }
      }
      color[id] = 2;
    };
    for (ComponentId id = 0; id < model_.components.size(); ++id) {
      if (color[id] == 0) visit(id);
    }
  }

  // A1
  void checkBounds(const ComponentType& c) {
    const Automaton& a = c.automaton();
    double configs = static_cast<double>(a.states.size());
    for (const auto& v : a.variables) configs *= static_cast<double>(model_.typedefs[v.type].size());
    double letters = 1;
    for (const auto& p : c.ports) letters *= static_cast<double>(model_.typeOf(p).size() + 1);
    if (configs > static_cast<double>(options_.maxConfigs)) {
      report("A1",
             "'" + c.name + "' has " + std::to_string(static_cast<long double>(configs)) +
                 " configurations, above the limit of " + std::to_string(options_.maxConfigs),
             a.pos);
    }
    if (letters > static_cast<double>(options_.maxLetters)) {
      report("A1",
             "'" + c.name + "' has an alphabet of " + std::to_string(static_cast<long double>(letters)) +
                 " letters, above the limit of " + std::to_string(options_.maxLetters),
             a.pos);
    }
  }

  // E1: at most one enabled transition for every reachable configuration and input.
  void checkDeterminism(const ComponentType& c) {
    Transducer t;
    try {
      t = elaborate(model_, c);
    } catch (const Error& e) {
      report("E1", "determinism of '" + c.name + "' cannot be decided: " + e.what(), c.automaton().pos);
      return;
    }
    const auto live = reachable(t);
    const Automaton& a = c.automaton();
    std::set<std::pair<std::int32_t, std::int32_t>> reported;
    for (std::size_t cfg = 0; cfg < t.configs.size(); ++cfg) {
      if (!live[cfg]) continue;
      for (std::size_t i = 0; i < t.interface.inputCount(); ++i) {
        std::vector<std::int32_t> fired;
        for (const Step& s : t.steps(cfg, static_cast<ValuationIndex>(i))) {
          if (std::find(fired.begin(), fired.end(), s.transition) == fired.end()) fired.push_back(s.transition);
        }
        std::sort(fired.begin(), fired.end());
        for (std::size_t x = 0; x < fired.size(); ++x) {
          for (std::size_t y = x + 1; y < fired.size(); ++y) {
            if (!reported.insert({fired[x], fired[y]}).second) continue;
            const Transition& first = a.transitions[static_cast<std::size_t>(fired[x])];
            const Transition& second = a.transitions[static_cast<std::size_t>(fired[y])];
            std::ostringstream msg;
            msg << "nondeterminism in state '" << a.states[t.configs[cfg].state].name << "' of '" << c.name
                << "': transitions at " << where(first.pos.value) << " and " << where(second.pos.value)
                << " are both enabled for input {";
            const auto inputs = t.interface.decodeInputs(static_cast<ValuationIndex>(i));
            for (std::size_t k = 0; k < inputs.size(); ++k) {
              if (k != 0) msg << ", ";
              msg << t.interface.inputs[k].name << ':' << toString(inputs[k]);
            }
            msg << '}';
            report("E1", msg.str(), first.pos);
          }
        }
      }
    }
  }

  const Model& model_;
  const CheckOptions& options_;
  std::set<std::string> rules_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

std::vector<Diagnostic> check(const Model& model, const Profile& profile, const CheckOptions& options) {
  return Checker(model, profile, options).run();
}

}  // namespace maa
