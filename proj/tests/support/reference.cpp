#include "reference.hpp"

#include <algorithm>
#include <stdexcept>

namespace testing {

namespace {

using maa::Message;
using maa::Value;

struct Inst {
  maa::ComponentId type = 0;
  std::vector<std::size_t> children;  // instance index per subcomponent
  std::vector<Message> cur;           // per port of the component type
  std::vector<Message> next;
  std::size_t state = 0;
  std::vector<Value> vars;
};

class Reference {
 public:
  Reference(const maa::Model& model, maa::ComponentId root) : m_(model) { build(root); }

  maa::StreamBundle run(const maa::StreamBundle& inputs, std::size_t ticks) {
    const auto& rootType = m_.components[insts_[0].type];
    maa::StreamBundle out;
    out.ticks = ticks;
    for (const auto& p : rootType.ports) {
      if (p.direction == maa::Direction::Out) out.ports[p.name] = {};
    }
    for (std::size_t t = 0; t < ticks; ++t) {
      settle(inputs, t);
      for (std::size_t p = 0; p < rootType.ports.size(); ++p) {
        if (rootType.ports[p].direction == maa::Direction::Out) {
          out.ports[rootType.ports[p].name].push_back(insts_[0].cur[p]);
        }
      }
      for (auto& inst : insts_) {
        if (m_.components[inst.type].isAtomic()) compute(inst);
      }
      for (auto& inst : insts_) {
        const auto& c = m_.components[inst.type];
        if (!c.isAtomic()) continue;
        for (std::size_t p = 0; p < c.ports.size(); ++p) {
          if (c.ports[p].direction == maa::Direction::Out) inst.cur[p] = inst.next[p];
        }
      }
    }
    return out;
  }

 private:
  std::size_t build(maa::ComponentId type) {
    const std::size_t index = insts_.size();
    insts_.push_back({});
    const auto& c = m_.components[type];
    insts_[index].type = type;
    insts_[index].cur.assign(c.ports.size(), std::nullopt);
    insts_[index].next.assign(c.ports.size(), std::nullopt);
    if (c.isAtomic()) {
      const auto& a = c.automaton();
      for (std::size_t s = 0; s < a.states.size(); ++s) {
        if (a.states[s].isInitial) {
          insts_[index].state = s;
          for (const auto& lit : a.states[s].initialOutputs) insts_[index].cur[lit.port] = lit.value;
          break;
        }
      }
      for (const auto& v : a.variables) insts_[index].vars.push_back(v.initial);
    } else {
      for (const auto& sub : c.composition().subcomponents) {
        const std::size_t child = build(sub.type);
        insts_[index].children.push_back(child);
      }
    }
    return index;
  }

  // Clears every port not held by an atomic out-port, loads the external
  // inputs and copies along connectors until nothing changes.
  void settle(const maa::StreamBundle& inputs, std::size_t tick) {
    for (auto& inst : insts_) {
      const auto& c = m_.components[inst.type];
      for (std::size_t p = 0; p < c.ports.size(); ++p) {
        if (!c.isAtomic() || c.ports[p].direction == maa::Direction::In) inst.cur[p] = std::nullopt;
      }
    }
    const auto& rootType = m_.components[insts_[0].type];
    for (std::size_t p = 0; p < rootType.ports.size(); ++p) {
      if (rootType.ports[p].direction == maa::Direction::In) {
        insts_[0].cur[p] = inputs.ports.at(rootType.ports[p].name).at(tick);
      }
    }
    for (bool changed = true; changed;) {
      changed = false;
      for (auto& inst : insts_) {
        const auto& c = m_.components[inst.type];
        if (c.isAtomic()) continue;
        for (const auto& con : c.composition().connectors) {
          const Message value = portOf(inst, con.source);
          for (const auto& target : con.targets) {
            Message& slot = portOf(inst, target);
            if (slot != value) {
              slot = value;
              changed = true;
            }
          }
        }
      }
    }
  }

  Message& portOf(Inst& owner, const maa::PortRef& ref) {
    if (!ref.instance) return owner.cur[ref.port];
    return insts_[owner.children[*ref.instance]].cur[ref.port];
  }

  Value eval(const Inst& inst, const maa::Expr& e) const { return referenceEval(e, inst.cur, inst.vars); }

  Value fit(const maa::TypeDef& type, Value v) const {
    if (type.kind == maa::TypeDef::Kind::BoundedInt) return std::clamp(std::get<std::int64_t>(v), type.lo, type.hi);
    return v;
  }

  void compute(Inst& inst) {
    const auto& c = m_.components[inst.type];
    const auto& a = c.automaton();
    std::fill(inst.next.begin(), inst.next.end(), std::nullopt);
    const maa::Transition* chosen = nullptr;
    for (const auto& t : a.transitions) {
      if (t.source != inst.state) continue;
      bool enabled = true;
      for (const auto& lit : t.trigger) enabled = enabled && inst.cur[lit.port] == Message(lit.value);
      if (enabled && t.guard) enabled = std::get<bool>(eval(inst, *t.guard));
      if (!enabled) continue;
      if (chosen) throw std::runtime_error("two transitions enabled in component '" + c.name + "'");
      chosen = &t;
    }
    if (!chosen) return;
    for (const auto& o : chosen->outputs) inst.next[o.port] = fit(m_.typeOf(c.ports[o.port]), eval(inst, o.value));
    std::vector<Value> vars = inst.vars;
    for (const auto& as : chosen->assignments) {
      vars[as.variable] = fit(m_.typedefs[a.variables[as.variable].type], eval(inst, as.value));
    }
    inst.vars = std::move(vars);
    inst.state = chosen->target;
  }

  const maa::Model& m_;
  std::vector<Inst> insts_;
};

}  // namespace

Value referenceEval(const maa::Expr& e, const std::vector<Message>& ports, const std::vector<Value>& vars) {
  switch (e.kind) {
    case maa::Expr::Kind::Const: return e.constant;
    case maa::Expr::Kind::Port: {
      const Message& msg = ports[e.index];
      if (!msg) throw std::runtime_error("expression reads an absent message");
      return *msg;
    }
    case maa::Expr::Kind::Var: return vars[e.index];
    case maa::Expr::Kind::Not: return !std::get<bool>(referenceEval(e.args[0], ports, vars));
    case maa::Expr::Kind::Binary: break;
  }
  if (e.op == maa::ExprOp::And) {
    return std::get<bool>(referenceEval(e.args[0], ports, vars)) && std::get<bool>(referenceEval(e.args[1], ports, vars));
  }
  if (e.op == maa::ExprOp::Or) {
    return std::get<bool>(referenceEval(e.args[0], ports, vars)) || std::get<bool>(referenceEval(e.args[1], ports, vars));
  }
  const Value l = referenceEval(e.args[0], ports, vars);
  const Value r = referenceEval(e.args[1], ports, vars);
  switch (e.op) {
    case maa::ExprOp::Eq: return l == r;
    case maa::ExprOp::Ne: return l != r;
    default: break;
  }
  const auto a = std::get<std::int64_t>(l);
  const auto b = std::get<std::int64_t>(r);
  switch (e.op) {
    case maa::ExprOp::Lt: return a < b;
    case maa::ExprOp::Le: return a <= b;
    case maa::ExprOp::Gt: return a > b;
    case maa::ExprOp::Ge: return a >= b;
    case maa::ExprOp::Add: return a + b;
    case maa::ExprOp::Sub: return a - b;
    default: throw std::logic_error("operator");
  }
}

maa::StreamBundle referenceRun(const maa::Model& model, maa::ComponentId root, const maa::StreamBundle& inputs,
                               std::size_t ticks) {
  return Reference(model, root).run(inputs, ticks);
}

}  // namespace testing
