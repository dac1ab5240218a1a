#include <algorithm>
#include <set>

#include "internal.hpp"
#include "maa/codegen/view.hpp"
#include "maa/errors.hpp"

namespace maa::codegen {

namespace {

// Python keywords get a trailing underscore.
std::string pyName(const std::string& name) {
  static const std::set<std::string> keywords = {
      "False", "None",   "True",    "and",      "as",   "assert", "async",  "await",    "break",
      "class", "continue", "def",   "del",      "elif", "else",   "except", "finally",  "for",
      "from",  "global", "if",      "import",   "in",   "is",     "lambda", "nonlocal", "not",
      "or",    "pass",   "raise",   "return",   "try",  "while",  "with",   "yield"};
  return keywords.count(name) ? name + "_" : name;
}

class PythonDialect : public Dialect {
 public:
  std::string literal(const std::string&, const Node& type, const Node& value) const override {
    if (value.is_boolean()) return value.get<bool>() ? "True" : "False";
    if (value.is_number_integer()) return value.dump();
    return pyName(type.at("name").get<std::string>()) + "." + pyName(value.get<std::string>());
  }

  std::string state(const std::string& component, const std::string& state) const override {
    return pyName(component) + "State." + pyName(state);
  }

  std::string stateTest(const std::string& component, const std::string& s) const override {
    return "self._state == " + state(component, s);
  }

  std::string triggerTest(const std::string& port, const std::string& literal) const override {
    return "self._" + port + ".getCurrentValue() == " + literal;
  }

  std::string expr(const Node& e) const override {
    const auto kind = e.at("kind").get<std::string>();
    if (kind == "const") return literal("", e.at("type"), e.at("value"));
    if (kind == "port") return "self._" + e.at("name").get<std::string>() + ".getCurrentValue()";
    if (kind == "var") return "self._" + e.at("name").get<std::string>();
    if (kind == "not") return "(not " + expr(e.at("args")[0]) + ")";
    return "(" + expr(e.at("args")[0]) + " " + e.at("op").get<std::string>() + " " + expr(e.at("args")[1]) + ")";
  }

  std::string condition(const std::string& stateTest, const std::vector<std::string>& triggers,
                        const std::optional<std::string>& guard) const override {
    std::string out = stateTest;
    for (const auto& t : triggers) out += " and " + t;
    if (guard) out += " and " + *guard;
    return out;
  }
};

// Outputs and assignments; bounded integers saturate at their range.
Node execValue(const Node& action, const RenderContext& ctx) {
  const Node& type = action.at("type");
  const Node& e = action.at("expr");
  if (type.at("kind") != "int") return ctx.dialect().expr(e);
  const auto lo = type.at("lo").get<std::int64_t>();
  const auto hi = type.at("hi").get<std::int64_t>();
  if (e.at("kind") == "const") return std::to_string(std::clamp(e.at("value").get<std::int64_t>(), lo, hi));
  return "min(max(" + ctx.dialect().expr(e) + ", " + std::to_string(lo) + "), " + std::to_string(hi) + ")";
}

Node targetState(const Node& transition, const RenderContext& ctx) {
  return ctx.dialect().state(transition.at("component").get<std::string>(), transition.at("target").get<std::string>());
}

Node portRef(const Node& ref) {
  if (ref.at("instance").is_null()) return "self._" + ref.at("port").get<std::string>();
  return "self.sub(\"" + ref.at("instance").get<std::string>() + "\").port(\"" + ref.at("port").get<std::string>() +
         "\")";
}

Node hasTransitions(const Node& component, const RenderContext&) { return !component.at("transitions").empty(); }

Node execView(const Model& model, const ComponentType& c) {
  Node v = componentView(model, c);
  v["py"] = pyName(c.name);
  if (c.isAtomic()) {
    for (auto& s : v["states"]) s["py"] = pyName(s["name"].get<std::string>());
    for (auto& var : v["variables"]) {
      var["port"] = var["name"];
      var["value"] = var["initial"];
    }
  }
  return v;
}

}  // namespace

void addExecCalculators(CalculatorRegistry& registry) {
  registry.add("exec", {"execValue", execValue});
  registry.add("exec", {"targetState", targetState});
  registry.add("exec", {"sourceRef", [](const Node& c, const RenderContext&) { return portRef(c.at("source")); }});
  registry.add("exec", {"portRef", [](const Node& r, const RenderContext&) { return portRef(r); }});
  registry.add("exec", {"hasTransitions", hasTransitions});
}

std::vector<GeneratedArtifact> emitExec(const Model& model, const GeneratorOptions& options) {
  const auto selected = selectComponents(model, options.roots);
  requireProfile(model, Profile::executable(), selected, options, "exec");
  std::vector<GeneratedArtifact> out;
  if (selected.empty()) return out;
  const PythonDialect dialect;
  Renderer renderer(options, "exec", dialect);

  Node types{{"enums", Node::array()}};
  const Node whole = modelView(model);
  for (const auto& e : whole["enums"]) {
    Node members = Node::array();
    for (const auto& value : e["values"]) {
      members.push_back({{"name", value}, {"py", pyName(value.get<std::string>())}});
    }
    types["enums"].push_back({{"name", e["name"]}, {"py", pyName(e["name"].get<std::string>())}, {"members", members}});
  }
  out.push_back({"exec/maa_types.py", renderer.render("exec/types", types)});

  Node main{{"components", Node::array()}};
  for (ComponentId id : selected) {
    const ComponentType& c = model.components[id];
    const Node view = execView(model, c);
    out.push_back({"exec/" + c.name + ".py", renderer.render(c.isAtomic() ? "exec/atomic" : "exec/composed", view)});
    main["components"].push_back({{"name", c.name}, {"py", pyName(c.name)}});
  }
  out.push_back({"exec/main.py", renderer.render("exec/main", main)});
  return out;
}

}  // namespace maa::codegen
