#include <algorithm>
#include <map>
#include <set>

#include "maa/model.hpp"

namespace maa {
namespace {

Expr::Type exprTypeOf(const TypeDef& t) {
  switch (t.kind) {
    case TypeDef::Kind::Boolean: return Expr::Type::Bool;
    case TypeDef::Kind::BoundedInt: return Expr::Type::Int;
    case TypeDef::Kind::Enumeration: return Expr::Type::Enum;
  }
  return Expr::Type::Bool;
}

const char* typeKindName(Expr::Type t) {
  switch (t) {
    case Expr::Type::Bool: return "Boolean";
    case Expr::Type::Int: return "integer";
    case Expr::Type::Enum: return "enumeration";
  }
  return "?";
}

struct ExprFailure {};

class Resolver {
 public:
  ResolveResult run(const syntax::Model& tree) {
    declareTypes(tree);
    declareComponents(tree);
    for (std::size_t i = 0; i < componentSyntax_.size(); ++i) resolvePorts(i);
    for (std::size_t i = 0; i < componentSyntax_.size(); ++i) resolveBody(i);

    ResolveResult result;
    if (diags_.empty()) {
      result.model = std::move(model_);
    } else {
      sortByPosition(diags_);
      result.diagnostics = std::move(diags_);
    }
    return result;
  }

 private:
  void error(const char* code, std::string message, const NodePos& pos) {
    diags_.push_back({Severity::Error, code, std::move(message), pos.value});
  }

  void declareTypes(const syntax::Model& tree) {
    for (const auto& decl : tree.declarations) {
      const auto* e = std::get_if<syntax::Enum>(&decl);
      if (!e) continue;
      if (typeIds_.count(e->name) != 0) {
        error("R005", "duplicate type '" + e->name + "'", e->pos);
        continue;
      }
      std::set<std::string> seen;
      for (const auto& v : e->values) {
        if (!seen.insert(v).second) error("R005", "duplicate value '" + v + "' in enumeration '" + e->name + "'", e->pos);
      }
      TypeDef t;
      t.name = e->name;
      t.kind = TypeDef::Kind::Enumeration;
      t.values = e->values;
      t.pos = e->pos;
      typeIds_[t.name] = model_.typedefs.size();
      model_.symbols.add(t.name, {Symbol::Kind::Type, 0, model_.typedefs.size(), e->pos});
      model_.typedefs.push_back(std::move(t));
    }
  }

  void declareComponents(const syntax::Model& tree) {
    for (const auto& decl : tree.declarations) {
      const auto* c = std::get_if<syntax::Component>(&decl);
      if (!c) continue;
      if (componentIds_.count(c->name) != 0) {
        error("R005", "duplicate component '" + c->name + "'", c->pos);
        continue;
      }
      componentIds_[c->name] = model_.components.size();
      model_.symbols.add(c->name, {Symbol::Kind::Component, 0, model_.components.size(), c->pos});
      ComponentType ct;
      ct.name = c->name;
      ct.pos = c->pos;
      model_.components.push_back(std::move(ct));
      componentSyntax_.push_back(c);
    }
  }

  std::optional<TypeId> resolveType(const syntax::TypeRef& ref) {
    std::string name;
    TypeDef t;
    t.builtin = true;
    t.pos = ref.pos;
    switch (ref.kind) {
      case syntax::TypeRef::Kind::Boolean:
        name = "Boolean";
        t.kind = TypeDef::Kind::Boolean;
        break;
      case syntax::TypeRef::Kind::Int:
        if (ref.lo > ref.hi) {
          error("R007", "empty integer range Int(" + std::to_string(ref.lo) + ".." + std::to_string(ref.hi) + ")",
                ref.pos);
          return std::nullopt;
        }
        name = "Int(" + std::to_string(ref.lo) + ".." + std::to_string(ref.hi) + ")";
        t.kind = TypeDef::Kind::BoundedInt;
        t.lo = ref.lo;
        t.hi = ref.hi;
        break;
      case syntax::TypeRef::Kind::Named: {
        const auto it = typeIds_.find(ref.name);
        if (it == typeIds_.end()) {
          error("R001", "unknown type '" + ref.name + "'", ref.pos);
          return std::nullopt;
        }
        return it->second;
      }
    }
    if (const auto it = typeIds_.find(name); it != typeIds_.end()) return it->second;
    t.name = name;
    typeIds_[name] = model_.typedefs.size();
    model_.typedefs.push_back(std::move(t));
    return model_.typedefs.size() - 1;
  }

  void resolvePorts(std::size_t ci) {
    ComponentType& c = model_.components[ci];
    for (const auto& element : componentSyntax_[ci]->elements) {
      const auto* decl = std::get_if<syntax::PortDecl>(&element);
      if (!decl) continue;
      for (const auto& item : decl->items) {
        const auto type = resolveType(item.type);
        PortDecl p;
        p.name = item.name;
        p.direction = item.isInput ? Direction::In : Direction::Out;
        p.type = type.value_or(0);
        p.pos = item.pos;
        model_.symbols.add(c.name + "." + p.name, {Symbol::Kind::Port, ci, c.ports.size(), item.pos});
        c.ports.push_back(std::move(p));
      }
    }
  }

  void resolveBody(std::size_t ci) {
    const syntax::Component& src = *componentSyntax_[ci];
    const syntax::Automaton* automaton = nullptr;
    bool composed = false;
    for (const auto& element : src.elements) {
      if (const auto* a = std::get_if<syntax::Automaton>(&element)) {
        if (automaton) error("R007", "component '" + src.name + "' declares more than one automaton", a->pos);
        automaton = a;
      } else if (std::holds_alternative<syntax::Instance>(element) || std::holds_alternative<syntax::Connect>(element)) {
        composed = true;
      }
    }
    if (automaton && composed) {
      error("R007", "component '" + src.name + "' has both an automaton and subcomponents or connectors",
            automaton->pos);
      return;
    }
    if (automaton) {
      model_.components[ci].body = resolveAutomaton(ci, *automaton);
    } else {
      model_.components[ci].body = resolveComposition(ci, src);
    }
  }

  Composition resolveComposition(std::size_t ci, const syntax::Component& src) {
    Composition comp;
    const std::string& owner = src.name;
    std::map<std::string, std::size_t> instances;
    for (const auto& element : src.elements) {
      const auto* inst = std::get_if<syntax::Instance>(&element);
      if (!inst) continue;
      const auto it = componentIds_.find(inst->componentType);
      if (it == componentIds_.end()) {
        error("R002", "unknown component '" + inst->componentType + "'", inst->pos);
        continue;
      }
      instances.emplace(inst->name, comp.subcomponents.size());
      model_.symbols.add(owner + "." + inst->name, {Symbol::Kind::Instance, ci, comp.subcomponents.size(), inst->pos});
      comp.subcomponents.push_back({inst->name, it->second, inst->pos});
    }
    for (const auto& element : src.elements) {
      const auto* con = std::get_if<syntax::Connect>(&element);
      if (!con) continue;
      Connector c;
      c.pos = con->pos;
      bool ok = true;
      auto bind = [&](const syntax::PortRef& ref) -> PortRef {
        PortRef r;
        r.pos = ref.pos;
        const ComponentType* owning = &model_.components[ci];
        if (ref.instance) {
          const auto it = instances.find(*ref.instance);
          if (it == instances.end()) {
            error("R006", "unknown subcomponent instance '" + *ref.instance + "'", ref.pos);
            ok = false;
            return r;
          }
          r.instance = it->second;
          owning = &model_.components[comp.subcomponents[it->second].type];
        }
        const auto port = owning->findPort(ref.port);
        if (!port) {
          error("R003", "unknown port '" + ref.port + "' of component '" + owning->name + "'", ref.pos);
          ok = false;
          return r;
        }
        r.port = *port;
        return r;
      };
      c.source = bind(con->source);
      for (const auto& t : con->targets) c.targets.push_back(bind(t));
      if (ok) comp.connectors.push_back(std::move(c));
    }
    return comp;
  }

  // Literal as written; domain membership is checked by the context rules.
  Value literalValue(const syntax::Literal& l) { return l.value; }

  Automaton resolveAutomaton(std::size_t ci, const syntax::Automaton& src) {
    Automaton a;
    a.pos = src.pos;
    ComponentType& c = model_.components[ci];
    const std::string& owner = c.name;

    for (const auto& v : src.variables) {
      const auto type = resolveType(v.type);
      VariableDecl decl;
      decl.name = v.name;
      decl.type = type.value_or(0);
      decl.initial = literalValue(v.initial);
      decl.pos = v.pos;
      if (type && !model_.typedefs[*type].indexOf(decl.initial)) {
        error("R007",
              "initial value " + toString(decl.initial) + " of variable '" + v.name + "' is not a value of type " +
                  model_.typedefs[*type].name,
              v.initial.pos);
      }
      if (!varIndex(a, v.name)) {
        model_.symbols.add(owner + "." + v.name, {Symbol::Kind::Variable, ci, a.variables.size(), v.pos});
      }
      a.variables.push_back(std::move(decl));
    }

    std::map<std::string, std::size_t> stateIds;
    for (const auto& s : src.states) {
      StateDecl st;
      st.name = s.name;
      st.isInitial = s.initial;
      st.pos = s.pos;
      st.initialOutputs = portLiterals(c, s.initialOutputs, Direction::Out);
      if (stateIds.emplace(s.name, a.states.size()).second) {
        model_.symbols.add(owner + "." + s.name, {Symbol::Kind::State, ci, a.states.size(), s.pos});
      }
      a.states.push_back(std::move(st));
    }

    for (const auto& t : src.transitions) {
      Transition tr;
      tr.pos = t.pos;
      bool ok = true;
      auto state = [&](const std::string& name) -> std::size_t {
        const auto it = stateIds.find(name);
        if (it == stateIds.end()) {
          error("R004", "unknown state '" + name + "'", t.pos);
          ok = false;
          return 0;
        }
        return it->second;
      };
      tr.source = state(t.source);
      tr.target = state(t.target);
      tr.trigger = portLiterals(c, t.trigger, Direction::In);
      try {
        if (t.guard) {
          tr.guard = expr(c, a, *t.guard, std::nullopt);
          requireType(*tr.guard, Expr::Type::Bool, std::nullopt, "guard");
        }
        std::set<std::string> targets;
        for (const auto& act : t.actions) {
          if (!targets.insert(act.target).second) {
            error("R005", "'" + act.target + "' is set more than once in one transition", act.pos);
            continue;
          }
          if (act.isAssignment) {
            const auto v = varIndex(a, act.target);
            if (!v) {
              if (c.findPort(act.target)) {
                error("R008", "port '" + act.target + "' is written with ':' not '='", act.pos);
              } else {
                error("R006", "unknown variable '" + act.target + "'", act.pos);
              }
              continue;
            }
            const TypeDef& vt = model_.typedefs[a.variables[*v].type];
            Expr e = expr(c, a, act.value, enumHint(vt));
            requireType(e, exprTypeOf(vt), enumHint(vt), "assignment to '" + act.target + "'");
            tr.assignments.push_back({*v, std::move(e), act.pos});
          } else {
            const auto p = c.findPort(act.target);
            if (!p) {
              if (varIndex(a, act.target)) {
                error("R008", "variable '" + act.target + "' is assigned with '=' not ':'", act.pos);
              } else {
                error("R003", "unknown port '" + act.target + "'", act.pos);
              }
              continue;
            }
            if (c.ports[*p].direction != Direction::Out) {
              error("R008", "output to input port '" + act.target + "'", act.pos);
              continue;
            }
            const TypeDef& pt = model_.typedefs[c.ports[*p].type];
            Expr e = expr(c, a, act.value, enumHint(pt));
            requireType(e, exprTypeOf(pt), enumHint(pt), "output on '" + act.target + "'");
            tr.outputs.push_back({*p, std::move(e), act.pos});
          }
        }
      } catch (const ExprFailure&) {
        ok = false;
      }
      if (ok) a.transitions.push_back(std::move(tr));
    }
    return a;
  }

  std::optional<std::size_t> varIndex(const Automaton& a, const std::string& name) const {
    for (std::size_t i = 0; i < a.variables.size(); ++i) {
      if (a.variables[i].name == name) return i;
    }
    return std::nullopt;
  }

  std::optional<TypeId> enumHint(const TypeDef& t) const {
    if (t.kind != TypeDef::Kind::Enumeration) return std::nullopt;
    return typeIds_.at(t.name);
  }

  std::vector<PortLiteral> portLiterals(const ComponentType& c, const std::vector<syntax::Pair>& pairs, Direction dir) {
    std::vector<PortLiteral> out;
    std::set<std::size_t> seen;
    for (const auto& pair : pairs) {
      const auto p = c.findPort(pair.name);
      if (!p) {
        error("R003", "unknown port '" + pair.name + "' of component '" + c.name + "'", pair.pos);
        continue;
      }
      if (c.ports[*p].direction != dir) {
        error("R008",
              std::string(dir == Direction::In ? "trigger on output port '" : "initial output on input port '") +
                  pair.name + "'",
              pair.pos);
        continue;
      }
      if (!seen.insert(*p).second) {
        error("R005", "port '" + pair.name + "' appears more than once", pair.pos);
        continue;
      }
      out.push_back({*p, literalValue(pair.value), pair.pos});
    }
    return out;
  }

  void requireType(const Expr& e, Expr::Type want, std::optional<TypeId> wantEnum, const std::string& what) {
    if (e.type != want || (want == Expr::Type::Enum && e.enumType != wantEnum)) {
      std::string expected = typeKindName(want);
      if (wantEnum) expected = model_.typedefs[*wantEnum].name;
      error("R007", what + " expects " + expected + " but the expression is " + describe(e), e.pos);
      throw ExprFailure{};
    }
  }

  std::string describe(const Expr& e) const {
    if (e.type == Expr::Type::Enum && e.enumType) return model_.typedefs[*e.enumType].name;
    return typeKindName(e.type);
  }

  static bool isBareEnumName(const syntax::Expr& e, const ComponentType& c, const Automaton& a,
                             const Resolver& self) {
    return e.kind == syntax::Expr::Kind::Name && !c.findPort(e.name) && !self.varIndex(a, e.name);
  }

  Expr expr(const ComponentType& c, const Automaton& a, const syntax::Expr& src, std::optional<TypeId> hint) {
    Expr e;
    e.pos = src.pos;
    switch (src.kind) {
      case syntax::Expr::Kind::Literal:
        e.kind = Expr::Kind::Const;
        e.constant = src.literal;
        e.type = isBool(src.literal) ? Expr::Type::Bool : Expr::Type::Int;
        return e;
      case syntax::Expr::Kind::Name: {
        if (const auto p = c.findPort(src.name)) {
          if (c.ports[*p].direction != Direction::In) {
            error("R008", "output port '" + src.name + "' cannot be read", src.pos);
            throw ExprFailure{};
          }
          const TypeDef& t = model_.typedefs[c.ports[*p].type];
          e.kind = Expr::Kind::Port;
          e.index = *p;
          e.type = exprTypeOf(t);
          e.enumType = enumHint(t);
          return e;
        }
        if (const auto v = varIndex(a, src.name)) {
          const TypeDef& t = model_.typedefs[a.variables[*v].type];
          e.kind = Expr::Kind::Var;
          e.index = *v;
          e.type = exprTypeOf(t);
          e.enumType = enumHint(t);
          return e;
        }
        e.kind = Expr::Kind::Const;
        e.type = Expr::Type::Enum;
        e.constant = src.name;
        if (hint && model_.typedefs[*hint].indexOf(Value{src.name})) {
          e.enumType = hint;
          return e;
        }
        std::vector<TypeId> owners;
        for (std::size_t i = 0; i < model_.typedefs.size(); ++i) {
          if (model_.typedefs[i].kind == TypeDef::Kind::Enumeration && model_.typedefs[i].indexOf(Value{src.name})) {
            owners.push_back(i);
          }
        }
        if (owners.size() == 1) {
          e.enumType = owners.front();
          return e;
        }
        if (owners.empty()) {
          error("R006", "unknown name '" + src.name + "'", src.pos);
        } else {
          error("R007", "enumeration value '" + src.name + "' is ambiguous here", src.pos);
        }
        throw ExprFailure{};
      }
      case syntax::Expr::Kind::Unary: {
        e.kind = Expr::Kind::Not;
        e.args.push_back(expr(c, a, src.args[0], std::nullopt));
        requireType(e.args[0], Expr::Type::Bool, std::nullopt, "operand of 'not'");
        e.type = Expr::Type::Bool;
        return e;
      }
      case syntax::Expr::Kind::Binary: break;
    }
    e.kind = Expr::Kind::Binary;
    e.op = src.op;
    switch (src.op) {
      case ExprOp::And:
      case ExprOp::Or:
        for (const auto& arg : src.args) {
          e.args.push_back(expr(c, a, arg, std::nullopt));
          requireType(e.args.back(), Expr::Type::Bool, std::nullopt, std::string("operand of '") + spelling(src.op) + "'");
        }
        e.type = Expr::Type::Bool;
        return e;
      case ExprOp::Eq:
      case ExprOp::Ne: {
        // Type the side that is not a bare enumeration value first so the
        // other side can be disambiguated by it.
        const bool leftFirst = !isBareEnumName(src.args[0], c, a, *this);
        const std::size_t first = leftFirst ? 0 : 1;
        Expr one = expr(c, a, src.args[first], std::nullopt);
        Expr other = expr(c, a, src.args[1 - first], one.enumType);
        requireType(other, one.type, one.enumType, std::string("operand of '") + spelling(src.op) + "'");
        if (leftFirst) {
          e.args.push_back(std::move(one));
          e.args.push_back(std::move(other));
        } else {
          e.args.push_back(std::move(other));
          e.args.push_back(std::move(one));
        }
        e.type = Expr::Type::Bool;
        return e;
      }
      case ExprOp::Lt:
      case ExprOp::Le:
      case ExprOp::Gt:
      case ExprOp::Ge:
      case ExprOp::Add:
      case ExprOp::Sub:
        for (const auto& arg : src.args) {
          e.args.push_back(expr(c, a, arg, std::nullopt));
          requireType(e.args.back(), Expr::Type::Int, std::nullopt, std::string("operand of '") + spelling(src.op) + "'");
        }
        e.type = (src.op == ExprOp::Add || src.op == ExprOp::Sub) ? Expr::Type::Int : Expr::Type::Bool;
        return e;
      case ExprOp::Not: break;
    }
    throw ExprFailure{};
  }

  Model model_;
  std::vector<Diagnostic> diags_;
  std::map<std::string, TypeId> typeIds_;
  std::map<std::string, ComponentId> componentIds_;
  std::vector<const syntax::Component*> componentSyntax_;
};

// Back to syntax.

syntax::TypeRef typeRef(const TypeDef& t) {
  syntax::TypeRef r;
  switch (t.kind) {
    case TypeDef::Kind::Boolean: r.kind = syntax::TypeRef::Kind::Boolean; break;
    case TypeDef::Kind::BoundedInt:
      r.kind = syntax::TypeRef::Kind::Int;
      r.lo = t.lo;
      r.hi = t.hi;
      break;
    case TypeDef::Kind::Enumeration:
      r.kind = syntax::TypeRef::Kind::Named;
      r.name = t.name;
      break;
  }
  return r;
}

syntax::Expr exprSyntax(const ComponentType& c, const Expr& e) {
  syntax::Expr s;
  switch (e.kind) {
    case Expr::Kind::Const:
      if (isEnum(e.constant)) {
        s.kind = syntax::Expr::Kind::Name;
        s.name = std::get<std::string>(e.constant);
      } else {
        s.kind = syntax::Expr::Kind::Literal;
        s.literal = e.constant;
      }
      break;
    case Expr::Kind::Port:
      s.kind = syntax::Expr::Kind::Name;
      s.name = c.ports[e.index].name;
      break;
    case Expr::Kind::Var:
      s.kind = syntax::Expr::Kind::Name;
      s.name = c.automaton().variables[e.index].name;
      break;
    case Expr::Kind::Not:
      s.kind = syntax::Expr::Kind::Unary;
      s.op = ExprOp::Not;
      s.args.push_back(exprSyntax(c, e.args[0]));
      break;
    case Expr::Kind::Binary:
      s.kind = syntax::Expr::Kind::Binary;
      s.op = e.op;
      s.args.push_back(exprSyntax(c, e.args[0]));
      s.args.push_back(exprSyntax(c, e.args[1]));
      break;
  }
  return s;
}

std::vector<syntax::Pair> pairs(const ComponentType& c, const std::vector<PortLiteral>& lits) {
  std::vector<syntax::Pair> out;
  for (const auto& l : lits) out.push_back({c.ports[l.port].name, {l.value, {}}, {}});
  return out;
}

}  // namespace

ResolveResult resolve(const syntax::Model& tree) { return Resolver{}.run(tree); }

syntax::Model toSyntax(const Model& model) {
  syntax::Model out;
  for (const auto& t : model.typedefs) {
    if (t.builtin) continue;
    out.declarations.emplace_back(syntax::Enum{t.name, t.values, {}});
  }
  for (const auto& c : model.components) {
    syntax::Component sc;
    sc.name = c.name;
    if (!c.ports.empty()) {
      syntax::PortDecl decl;
      for (const auto& p : c.ports) {
        decl.items.push_back({p.direction == Direction::In, typeRef(model.typeOf(p)), p.name, {}});
      }
      sc.elements.emplace_back(std::move(decl));
    }
    if (c.isAtomic()) {
      const Automaton& a = c.automaton();
      syntax::Automaton sa;
      for (const auto& v : a.variables) {
        sa.variables.push_back({typeRef(model.typedefs[v.type]), v.name, {v.initial, {}}, {}});
      }
      for (const auto& s : a.states) sa.states.push_back({s.name, s.isInitial, pairs(c, s.initialOutputs), {}});
      for (const auto& t : a.transitions) {
        syntax::Transition st;
        st.source = a.states[t.source].name;
        st.target = a.states[t.target].name;
        st.trigger = pairs(c, t.trigger);
        if (t.guard) st.guard = exprSyntax(c, *t.guard);
        // Outputs then assignments; resolution does not depend on the order.
        for (const auto& o : t.outputs) st.actions.push_back({false, c.ports[o.port].name, exprSyntax(c, o.value), {}});
        for (const auto& as : t.assignments) {
          st.actions.push_back({true, a.variables[as.variable].name, exprSyntax(c, as.value), {}});
        }
        sa.transitions.push_back(std::move(st));
      }
      sc.elements.emplace_back(std::move(sa));
    } else {
      const Composition& comp = c.composition();
      for (const auto& s : comp.subcomponents) {
        sc.elements.emplace_back(syntax::Instance{model.components[s.type].name, s.name, {}});
      }
      auto ref = [&](const PortRef& r) {
        syntax::PortRef out;
        if (r.instance) {
          const auto& inst = comp.subcomponents[*r.instance];
          out.instance = inst.name;
          out.port = model.components[inst.type].ports[r.port].name;
        } else {
          out.port = c.ports[r.port].name;
        }
        return out;
      };
      for (const auto& con : comp.connectors) {
        syntax::Connect sc2;
        sc2.source = ref(con.source);
        for (const auto& t : con.targets) sc2.targets.push_back(ref(t));
        sc.elements.emplace_back(std::move(sc2));
      }
    }
    out.declarations.emplace_back(std::move(sc));
  }
  return out;
}

}  // namespace maa
