#include "maa/codegen/view.hpp"

namespace maa::codegen {

namespace {

const char* kindName(TypeDef::Kind k) {
  switch (k) {
    case TypeDef::Kind::Boolean: return "boolean";
    case TypeDef::Kind::BoundedInt: return "int";
    case TypeDef::Kind::Enumeration: return "enum";
  }
  return "";
}

Node literalView(const Model& model, const ComponentType& c, const PortLiteral& lit) {
  return {{"port", c.ports[lit.port].name}, {"type", typeView(model.typeOf(c.ports[lit.port]))},
          {"value", valueView(lit.value)}};
}

Node portView(const Model& model, const PortDecl& p) {
  return {{"name", p.name}, {"direction", p.direction == Direction::In ? "in" : "out"},
          {"type", typeView(model.typeOf(p))}};
}

Node refView(const ComponentType& c, const Model& model, const PortRef& r) {
  Node v;
  if (r.instance) {
    const auto& inst = c.composition().subcomponents[*r.instance];
    v["instance"] = inst.name;
    v["port"] = model.components[inst.type].ports[r.port].name;
    v["ref"] = inst.name + "." + v["port"].get<std::string>();
  } else {
    v["instance"] = nullptr;
    v["port"] = c.ports[r.port].name;
    v["ref"] = c.ports[r.port].name;
  }
  return v;
}

}  // namespace

Node valueView(const Value& v) {
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  return std::get<std::string>(v);
}

Node typeView(const TypeDef& t) {
  Node v{{"name", t.name}, {"kind", kindName(t.kind)}};
  if (t.kind == TypeDef::Kind::BoundedInt) {
    v["lo"] = t.lo;
    v["hi"] = t.hi;
  }
  v["values"] = Node::array();
  for (const auto& value : messageDomain(t)) v["values"].push_back(valueView(value));
  return v;
}

Node exprView(const Model& model, const ComponentType& c, const Expr& e) {
  Node v;
  switch (e.kind) {
    case Expr::Kind::Const: {
      v["kind"] = "const";
      v["value"] = valueView(e.constant);
      if (e.type == Expr::Type::Enum) {
        v["type"] = typeView(model.typedefs[*e.enumType]);
      } else {
        v["type"] = Node{{"name", e.type == Expr::Type::Bool ? "Boolean" : "Int"},
                         {"kind", e.type == Expr::Type::Bool ? "boolean" : "int"}};
      }
      break;
    }
    case Expr::Kind::Port:
      v["kind"] = "port";
      v["name"] = c.ports[e.index].name;
      break;
    case Expr::Kind::Var:
      v["kind"] = "var";
      v["name"] = c.automaton().variables[e.index].name;
      break;
    case Expr::Kind::Not:
      v["kind"] = "not";
      break;
    case Expr::Kind::Binary:
      v["kind"] = "binary";
      v["op"] = spelling(e.op);
      break;
  }
  v["args"] = Node::array();
  for (const auto& arg : e.args) v["args"].push_back(exprView(model, c, arg));
  return v;
}

Node componentView(const Model& model, const ComponentType& c) {
  Node v{{"name", c.name}, {"atomic", c.isAtomic()}};
  v["ports"] = Node::array();
  v["inPorts"] = Node::array();
  v["outPorts"] = Node::array();
  for (const auto& p : c.ports) {
    v["ports"].push_back(portView(model, p));
    v[p.direction == Direction::In ? "inPorts" : "outPorts"].push_back(portView(model, p));
  }
  if (c.isAtomic()) {
    const Automaton& a = c.automaton();
    v["variables"] = Node::array();
    for (const auto& var : a.variables) {
      v["variables"].push_back({{"name", var.name}, {"type", typeView(model.typedefs[var.type])},
                                {"initial", valueView(var.initial)}});
    }
    v["states"] = Node::array();
    for (const auto& s : a.states) {
      Node state{{"name", s.name}, {"initial", s.isInitial}, {"initialOutputs", Node::array()}};
      for (const auto& lit : s.initialOutputs) state["initialOutputs"].push_back(literalView(model, c, lit));
      v["states"].push_back(std::move(state));
    }
    v["transitions"] = Node::array();
    for (std::size_t i = 0; i < a.transitions.size(); ++i) {
      const Transition& t = a.transitions[i];
      Node tv{{"index", i}, {"component", c.name}, {"source", a.states[t.source].name}, {"target", a.states[t.target].name},
              {"line", t.pos.value.line}};
      tv["trigger"] = Node::array();
      for (const auto& lit : t.trigger) tv["trigger"].push_back(literalView(model, c, lit));
      tv["guard"] = t.guard ? exprView(model, c, *t.guard) : Node();
      tv["outputs"] = Node::array();
      for (const auto& o : t.outputs) {
        tv["outputs"].push_back({{"port", c.ports[o.port].name}, {"type", typeView(model.typeOf(c.ports[o.port]))},
                                 {"expr", exprView(model, c, o.value)}});
      }
      tv["assignments"] = Node::array();
      for (const auto& as : t.assignments) {
        const auto& var = a.variables[as.variable];
        tv["assignments"].push_back({{"variable", var.name}, {"type", typeView(model.typedefs[var.type])},
                                     {"expr", exprView(model, c, as.value)}});
      }
      v["transitions"].push_back(std::move(tv));
    }
  } else {
    const Composition& comp = c.composition();
    v["instances"] = Node::array();
    for (const auto& s : comp.subcomponents) {
      v["instances"].push_back({{"name", s.name}, {"type", model.components[s.type].name}});
    }
    v["connectors"] = Node::array();
    for (const auto& con : comp.connectors) {
      Node cv{{"source", refView(c, model, con.source)}, {"targets", Node::array()}};
      for (const auto& t : con.targets) cv["targets"].push_back(refView(c, model, t));
      v["connectors"].push_back(std::move(cv));
    }
  }
  return v;
}

Node modelView(const Model& model) {
  Node v{{"enums", Node::array()}, {"components", Node::array()}};
  for (const auto& t : model.typedefs) {
    if (t.kind == TypeDef::Kind::Enumeration && !t.builtin) {
      v["enums"].push_back({{"name", t.name}, {"values", t.values}});
    }
  }
  for (const auto& c : model.components) v["components"].push_back(componentView(model, c));
  return v;
}

}  // namespace maa::codegen
