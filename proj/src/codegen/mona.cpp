#include <algorithm>
#include <map>
#include <regex>
#include <set>

#include "internal.hpp"
#include "maa/codegen/view.hpp"
#include "maa/errors.hpp"

namespace maa::codegen {

namespace {

std::string valueName(const Node& value) {
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  if (value.is_number_integer()) {
    const auto i = value.get<std::int64_t>();
    return i < 0 ? "m" + std::to_string(0 - static_cast<std::uint64_t>(i)) : std::to_string(i);
  }
  return value.get<std::string>();
}

std::string setName(const std::string& port, const Node& value) { return port + "_" + valueName(value); }

class MonaDialect : public Dialect {
 public:
  std::string literal(const std::string& port, const Node&, const Node& value) const override {
    return setName(port, value);
  }
  std::string state(const std::string&, const std::string& state) const override { return state; }
  std::string stateTest(const std::string&, const std::string& state) const override { return "t in " + state; }
  std::string triggerTest(const std::string&, const std::string& literal) const override { return "t in " + literal; }
  std::string expr(const Node&) const override {
    throw TemplateError("guards are resolved per configuration and never rendered in WS1S");
  }
  std::string condition(const std::string& stateTest, const std::vector<std::string>& triggers,
                        const std::optional<std::string>&) const override {
    std::string out = stateTest;
    for (const auto& t : triggers) out += " & " + t;
    return out;
  }
};

const std::set<std::string>& reservedWords() {
  static const std::set<std::string> words = {
      "all0",   "all1",     "all2",    "allpos",   "assert", "const",  "defaultwhere1", "defaultwhere2", "empty",
      "ex0",    "ex1",      "ex2",     "execute",  "export", "false",  "guide",         "import",        "in",
      "inter",  "lastpos",  "let0",    "let1",     "let2",   "macro",  "max",           "min",           "minus",
      "notin",  "pred",     "prefix",  "restrict", "root",   "sub",    "true",          "tree",          "union",
      "universe", "var0",   "var1",    "var2",     "where",  "ws1s",   "ws2s",          "allTime",       "t"};
  return words;
}

Node literalNode(const std::string& port, const Node& type, const Node& value) {
  return {{"port", port}, {"type", type}, {"value", value}};
}

struct Names {
  std::string component;
  std::map<std::string, std::string> seen;  // identifier -> what it names

  void claim(const std::string& id, const std::string& what, const NodePos& pos) {
    static const std::regex identifier("[A-Za-z][A-Za-z0-9_]*");
    std::string problem;
    if (!std::regex_match(id, identifier)) {
      problem = "'" + id + "' (" + what + ") is not a WS1S identifier";
    } else if (reservedWords().count(id)) {
      problem = "'" + id + "' (" + what + ") is reserved in WS1S";
    } else if (auto [it, inserted] = seen.emplace(id, what); !inserted) {
      problem = "'" + id + "' names both " + it->second + " and " + what;
    }
    if (!problem.empty()) {
      throw ProfileViolation("WS1S name collision in '" + component + "'",
                             {{Severity::Error, "G1", "WS1S name collision in '" + component + "': " + problem,
                               pos.value}});
    }
  }
};

Node predicateView(const Model& model, const ComponentType& c, CompletionMode mode, std::size_t maxConfigs) {
  const Transducer t = elaborate(model, c, {maxConfigs});
  const auto live = reachable(t);
  const Automaton& a = c.automaton();
  Names names{c.name, {}};

  auto configName = [&](std::size_t cfg) {
    const Config& config = t.configs[cfg];
    std::string name = a.states[config.state].name;
    for (std::size_t v = 0; v < a.variables.size(); ++v) {
      name += "_" + a.variables[v].name + "_" + valueName(valueView(config.variables[v]));
    }
    return name;
  };
  auto outputLits = [&](ValuationIndex index, Node& set, Node& silent) {
    const auto messages = t.interface.decodeOutputs(index);
    for (std::size_t k = 0; k < messages.size(); ++k) {
      const auto& sig = t.interface.outputs[k];
      const Node type = typeView(sig.type);
      if (messages[k]) {
        set.push_back(literalNode(sig.name, type, valueView(*messages[k])));
      } else {
        for (const auto& value : type["values"]) silent.push_back(literalNode(sig.name, type, value));
      }
    }
  };
  auto triggerLits = [&](const Transition& tr) {
    Node lits = Node::array();
    for (const auto& lit : tr.trigger) {
      lits.push_back(literalNode(c.ports[lit.port].name, typeView(model.typeOf(c.ports[lit.port])), valueView(lit.value)));
    }
    return lits;
  };

  Node v{{"name", c.name}, {"params", Node::array()}, {"outPorts", Node::array()}, {"states", Node::array()},
         {"statePairs", Node::array()}, {"valuePairs", Node::array()}, {"moves", Node::array()}};
  for (const auto& p : c.ports) {
    const Node type = typeView(model.typeOf(p));
    Node values = type["values"];
    if (type["kind"] == "boolean") std::reverse(values.begin(), values.end());  // true first
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto name = setName(p.name, values[i]);
      names.claim(name, "value " + valueName(values[i]) + " of port " + p.name, p.pos);
      v["params"].push_back(name);
      for (std::size_t j = i + 1; j < values.size(); ++j) {
        v["valuePairs"].push_back({{"a", name}, {"b", setName(p.name, values[j])}});
      }
    }
    if (p.direction == Direction::Out) v["outPorts"].push_back({{"name", p.name}, {"type", type}});
  }

  std::vector<std::size_t> configs;
  for (std::size_t cfg = 0; cfg < t.configs.size(); ++cfg) {
    if (live[cfg]) configs.push_back(cfg);
  }
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto name = configName(configs[i]);
    names.claim(name, "state " + name, a.states[t.configs[configs[i]].state].pos);
    Node state{{"name", name}, {"initial", configs[i] == t.initialConfig}, {"initialOutputs", Node::array()}};
    if (configs[i] == t.initialConfig) {
      Node silent = Node::array();
      outputLits(t.initialOutput, state["initialOutputs"], silent);
    }
    v["states"].push_back(std::move(state));
    for (std::size_t j = i + 1; j < configs.size(); ++j) {
      v["statePairs"].push_back({{"a", name}, {"b", configName(configs[j])}});
    }
  }

  for (std::size_t cfg : configs) {
    const auto source = configName(cfg);
    Node blocked = Node::array();
    bool alwaysEnabled = false;
    for (std::size_t tr = 0; tr < a.transitions.size(); ++tr) {
      const Step* found = nullptr;
      for (std::size_t in = 0; in < t.interface.inputCount() && !found; ++in) {
        for (const Step& s : t.steps(cfg, static_cast<ValuationIndex>(in))) {
          if (s.transition == static_cast<std::int32_t>(tr)) {
            found = &s;
            break;
          }
        }
      }
      if (!found) continue;
      Node move{{"component", c.name}, {"source", source},   {"trigger", triggerLits(a.transitions[tr])},
                {"blocked", Node::array()}, {"targets", Node::array({configName(found->target)})},
                {"outputs", Node::array()}, {"silent", Node::array()}};
      outputLits(found->output, move["outputs"], move["silent"]);
      if (a.transitions[tr].trigger.empty()) alwaysEnabled = true;
      const Node block{{"trigger", move["trigger"]}};
      if (std::find(blocked.begin(), blocked.end(), block) == blocked.end()) blocked.push_back(block);
      v["moves"].push_back(std::move(move));
    }
    if (alwaysEnabled || mode == CompletionMode::Reject) continue;
    Node move{{"component", c.name}, {"source", source}, {"trigger", Node::array()}, {"blocked", blocked},
              {"targets", Node::array()}, {"outputs", Node::array()}, {"silent", Node::array()}};
    if (mode == CompletionMode::EpsilonSelfLoop) {
      move["targets"].push_back(source);
      outputLits(0, move["outputs"], move["silent"]);
    }
    v["moves"].push_back(std::move(move));
  }
  return v;
}

void requireSameInterface(const ComponentType& impl, const ComponentType& spec, const Model& model) {
  auto signature = [&](const ComponentType& c) {
    std::map<std::string, std::pair<Direction, TypeDef>> out;
    for (const auto& p : c.ports) out.emplace(p.name, std::pair{p.direction, model.typeOf(p)});
    return out;
  };
  const auto a = signature(impl);
  const auto b = signature(spec);
  bool same = a.size() == b.size();
  for (const auto& [name, sig] : a) {
    auto it = b.find(name);
    same = same && it != b.end() && it->second.first == sig.first && sameType(it->second.second, sig.second);
  }
  if (!same) throw InterfaceMismatch("'" + impl.name + "' and '" + spec.name + "' have different ports");
}

}  // namespace

void addMonaCalculators(CalculatorRegistry& registry) {
  registry.add("mona", {"hasSpec", [](const Node& n, const RenderContext&) -> Node { return !n.at("spec").is_null(); }});
  registry.add("mona", {"hasMoves", [](const Node& n, const RenderContext&) -> Node { return !n.at("moves").empty(); }});
}

GeneratedArtifact emitWs1s(const Model& model, ComponentId impl, std::optional<ComponentId> spec,
                           const GeneratorOptions& options) {
  std::vector<ComponentId> checked{impl};
  if (spec) checked.push_back(*spec);
  requireProfile(model, Profile::analysis(), checked, options, "mona");
  if (spec) requireSameInterface(model.components[impl], model.components[*spec], model);

  const MonaDialect dialect;
  Renderer renderer(options, "mona", dialect);
  Node file{{"impl", predicateView(model, model.components[impl], options.implMode, options.maxConfigs)},
            {"spec", nullptr}};
  if (spec) file["spec"] = predicateView(model, model.components[*spec], options.specMode, options.maxConfigs);
  return {"mona/" + model.components[impl].name + ".mona", renderer.render("mona/file", file)};
}

}  // namespace maa::codegen
