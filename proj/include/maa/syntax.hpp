#pragma once

// Unresolved syntax tree of a `.maa` source file. Names are plain strings;
// binding them to declarations is the job of resolve().

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "maa/diagnostics.hpp"
#include "maa/value.hpp"

namespace maa {

enum class ExprOp { Or, And, Not, Eq, Ne, Lt, Le, Gt, Ge, Add, Sub };

const char* spelling(ExprOp op);

namespace syntax {

struct Literal {
  Value value;
  NodePos pos;
  bool operator==(const Literal&) const = default;
};

struct TypeRef {
  enum class Kind { Boolean, Int, Named };
  Kind kind = Kind::Boolean;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::string name;
  NodePos pos;
  bool operator==(const TypeRef&) const = default;
};

struct Expr {
  enum class Kind { Literal, Name, Unary, Binary };
  Kind kind = Kind::Literal;
  Value literal = false;
  std::string name;
  ExprOp op = ExprOp::Not;
  std::vector<Expr> args;
  NodePos pos;
  bool operator==(const Expr&) const = default;
};

struct PortItem {
  bool isInput = true;
  TypeRef type;
  std::string name;
  NodePos pos;
  bool operator==(const PortItem&) const = default;
};

struct PortDecl {
  std::vector<PortItem> items;
  NodePos pos;
  bool operator==(const PortDecl&) const = default;
};

struct Instance {
  std::string componentType;
  std::string name;
  NodePos pos;
  bool operator==(const Instance&) const = default;
};

// `port` alone refers to the enclosing component; `instance.port` otherwise.
struct PortRef {
  std::optional<std::string> instance;
  std::string port;
  NodePos pos;
  bool operator==(const PortRef&) const = default;
};

struct Connect {
  PortRef source;
  std::vector<PortRef> targets;
  NodePos pos;
  bool operator==(const Connect&) const = default;
};

struct VarDecl {
  TypeRef type;
  std::string name;
  Literal initial;
  NodePos pos;
  bool operator==(const VarDecl&) const = default;
};

struct Pair {
  std::string name;
  Literal value;
  NodePos pos;
  bool operator==(const Pair&) const = default;
};

struct StateItem {
  std::string name;
  bool initial = false;
  std::vector<Pair> initialOutputs;
  NodePos pos;
  bool operator==(const StateItem&) const = default;
};

struct Action {
  bool isAssignment = false;  // `v = e` vs `port: e`
  std::string target;
  Expr value;
  NodePos pos;
  bool operator==(const Action&) const = default;
};

struct Transition {
  std::string source;
  std::string target;
  std::vector<Pair> trigger;
  std::optional<Expr> guard;
  std::vector<Action> actions;
  NodePos pos;
  bool operator==(const Transition&) const = default;
};

struct Automaton {
  std::vector<VarDecl> variables;
  std::vector<StateItem> states;
  std::vector<Transition> transitions;
  NodePos pos;
  bool operator==(const Automaton&) const = default;
};

using Element = std::variant<PortDecl, Instance, Connect, Automaton>;

struct Component {
  std::string name;
  std::vector<Element> elements;
  NodePos pos;
  bool operator==(const Component&) const = default;
};

struct Enum {
  std::string name;
  std::vector<std::string> values;
  NodePos pos;
  bool operator==(const Enum&) const = default;
};

using Declaration = std::variant<Enum, Component>;

struct Model {
  std::vector<Declaration> declarations;
  bool operator==(const Model&) const = default;
};

}  // namespace syntax
}  // namespace maa
