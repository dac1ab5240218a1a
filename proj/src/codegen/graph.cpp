#include "internal.hpp"
#include "maa/codegen/view.hpp"

namespace maa::codegen {

namespace {

class DotDialect : public Dialect {
 public:
  std::string literal(const std::string&, const Node&, const Node& value) const override { return scalarText(value); }
  std::string state(const std::string&, const std::string& state) const override { return state; }
  std::string stateTest(const std::string&, const std::string&) const override { return ""; }
  std::string triggerTest(const std::string& port, const std::string& literal) const override {
    return port + ":" + literal;
  }

  std::string expr(const Node& e) const override { return print(e, false); }

  std::string condition(const std::string&, const std::vector<std::string>& triggers,
                        const std::optional<std::string>& guard) const override {
    std::string out;
    for (std::size_t i = 0; i < triggers.size(); ++i) out += (i ? ", " : "") + triggers[i];
    if (guard) out += (out.empty() ? "[" : " [") + *guard + "]";
    return out;
  }

 private:
  std::string print(const Node& e, bool nested) const {
    const auto kind = e.at("kind").get<std::string>();
    if (kind == "const") return scalarText(e.at("value"));
    if (kind == "port" || kind == "var") return e.at("name").get<std::string>();
    if (kind == "not") return "not " + print(e.at("args")[0], true);
    const std::string text =
        print(e.at("args")[0], true) + " " + e.at("op").get<std::string>() + " " + print(e.at("args")[1], true);
    return nested ? "(" + text + ")" : text;
  }
};

Node actionLabel(const Node& t, const RenderContext& ctx) {
  std::string out;
  for (const auto& o : t.at("outputs")) {
    out += (out.empty() ? "" : ", ") + o.at("port").get<std::string>() + ":" + ctx.dialect().expr(o.at("expr"));
  }
  for (const auto& a : t.at("assignments")) {
    out += (out.empty() ? "" : ", ") + a.at("variable").get<std::string>() + " = " + ctx.dialect().expr(a.at("expr"));
  }
  return out;
}

Node labelSeparator(const Node& t, const RenderContext&) {
  if (t.at("outputs").empty() && t.at("assignments").empty()) return "";
  return t.at("trigger").empty() && t.at("guard").is_null() ? "/ " : " / ";
}

// Own ports are drawn as `in.x` / `out.y` nodes, subcomponents by name.
std::string endpoint(const Node& ref, const Node& component) {
  if (!ref.at("instance").is_null()) return ref.at("instance").get<std::string>();
  for (const auto& p : component.at("ports")) {
    if (p.at("name") == ref.at("port")) return p.at("direction").get<std::string>() + "." + p.at("name").get<std::string>();
  }
  return ref.at("port").get<std::string>();
}

Node edge(const Node& source, const Node& target, const RenderContext& ctx) {
  const Node& component = ctx.lookup("ast");
  std::string label;
  if (!source.at("instance").is_null()) label = source.at("port").get<std::string>();
  if (!target.at("instance").is_null()) {
    label += (label.empty() ? "" : " -> ") + target.at("port").get<std::string>();
  }
  return {{"from", endpoint(source, component)}, {"to", endpoint(target, component)}, {"label", label}};
}

}  // namespace

void addGraphCalculators(CalculatorRegistry& registry) {
  registry.add("graph", {"actionLabel", actionLabel});
  registry.add("graph", {"labelSeparator", labelSeparator});
  registry.add("graph", {"isInitial", [](const Node& s, const RenderContext&) -> Node { return s.at("initial"); }});
  registry.add("graph", {"connectorEdge", [](const Node& target, const RenderContext& ctx) {
                           return edge(ctx.lookup("c.source"), target, ctx);
                         }});
}

std::vector<GeneratedArtifact> emitGraph(const Model& model, const GeneratorOptions& options) {
  std::vector<GeneratedArtifact> out;
  const auto selected = selectComponents(model, options.roots);
  Node whole = modelView(model);
  if (!options.roots.empty()) {
    Node kept = Node::array();
    for (ComponentId id : selected) kept.push_back(whole["components"][id]);
    whole["components"] = kept;
  }
  if (whole["components"].empty() && whole["enums"].empty()) return out;

  const DotDialect dialect;
  Renderer renderer(options, "graph", dialect);
  for (ComponentId id : selected) {
    const ComponentType& c = model.components[id];
    out.push_back({"graph/" + c.name + ".dot",
                   renderer.render(c.isAtomic() ? "graph/automaton" : "graph/architecture", componentView(model, c))});
  }
  out.push_back({"graph/model.json", whole.dump(2) + "\n"});
  return out;
}

}  // namespace maa::codegen
