#include "maa/codegen/calculators.hpp"

#include "maa/errors.hpp"

namespace maa::codegen {

namespace {

Node notLast(const Node&, const RenderContext& ctx) { return ctx.inLoopNotLast(); }

Node guardCalculator(const Node& transition, const RenderContext& ctx) {
  const Dialect& d = ctx.dialect();
  std::vector<std::string> triggers;
  for (const auto& lit : transition.at("trigger")) {
    const auto port = lit.at("port").get<std::string>();
    triggers.push_back(d.triggerTest(port, d.literal(port, lit.at("type"), lit.at("value"))));
  }
  std::optional<std::string> guard;
  if (const auto it = transition.find("guard"); it != transition.end() && !it->is_null()) guard = d.expr(*it);
  return d.condition(d.stateTest(transition.at("component").get<std::string>(), transition.at("source").get<std::string>()), triggers, guard);
}

Node initialState(const Node& component, const RenderContext& ctx) {
  const Dialect& d = ctx.dialect();
  const auto name = component.at("name").get<std::string>();
  for (const auto& s : component.at("states")) {
    if (!s.at("initial").get<bool>()) continue;
    Node out{{"state", d.state(name, s.at("name").get<std::string>())},
             {"outputs", Node::array()},
             {"silent", Node::array()}};
    for (const auto& lit : s.at("initialOutputs")) {
      const auto port = lit.at("port").get<std::string>();
      out["outputs"].push_back({{"port", port}, {"literal", d.literal(port, lit.at("type"), lit.at("value"))}});
    }
    for (const auto& p : component.at("outPorts")) {
      const auto port = p.at("name").get<std::string>();
      bool set = false;
      for (const auto& lit : s.at("initialOutputs")) set = set || lit.at("port") == port;
      if (set) continue;
      for (const auto& value : p.at("type").at("values")) {
        out["silent"].push_back({{"port", port}, {"literal", d.literal(port, p.at("type"), value)}});
      }
    }
    return out;
  }
  throw TemplateError("component '" + name + "' has no initial state");
}

Node messageLiteral(const Node& lit, const RenderContext& ctx) {
  const auto port = lit.at("port").get<std::string>();
  return ctx.dialect().literal(port, lit.at("type"), lit.at("value"));
}

}  // namespace

std::vector<Calculator> sharedCalculators() {
  return {{"notLast", notLast},
          {"guardCalculator", guardCalculator},
          {"initialState", initialState},
          {"messageLiteral", messageLiteral}};
}

}  // namespace maa::codegen
