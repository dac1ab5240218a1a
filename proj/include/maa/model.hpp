#pragma once

// Resolved, name-bound architecture model. Cross-references are indices into
// the owning containers; nothing is looked up by string after resolve().

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "maa/diagnostics.hpp"
#include "maa/syntax.hpp"
#include "maa/value.hpp"

namespace maa {

using TypeId = std::size_t;
using ComponentId = std::size_t;

struct TypeDef {
  enum class Kind { Boolean, BoundedInt, Enumeration };

  std::string name;
  Kind kind = Kind::Boolean;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::vector<std::string> values;
  bool builtin = false;  // Boolean and Int(lo..hi) are interned, not declared
  NodePos pos;

  /// Number of values in the message domain.
  std::size_t size() const;
  /// Position of `v` in messageDomain(*this), if it belongs to the domain.
  std::optional<std::size_t> indexOf(const Value& v) const;
  Value valueAt(std::size_t index) const;
  /// Booleans as 0/1, integers as themselves, enumeration values as ordinals.
  std::int64_t toRaw(const Value& v) const;
  Value fromRaw(std::int64_t raw) const;

  bool operator==(const TypeDef&) const = default;
};

/// All values of `t`: declaration order for enumerations, {false, true} for
/// booleans, lo..hi ascending for bounded integers.
std::vector<Value> messageDomain(const TypeDef& t);

/// Same kind and same domain; names of builtin types are not significant.
bool sameType(const TypeDef& a, const TypeDef& b);

enum class Direction { In, Out };

struct PortDecl {
  std::string name;
  Direction direction = Direction::In;
  TypeId type = 0;
  NodePos pos;
  bool operator==(const PortDecl&) const = default;
};

struct VariableDecl {
  std::string name;
  TypeId type = 0;
  Value initial = false;
  NodePos pos;
  bool operator==(const VariableDecl&) const = default;
};

struct PortLiteral {
  std::size_t port = 0;
  Value value = false;
  NodePos pos;
  bool operator==(const PortLiteral&) const = default;
};

struct StateDecl {
  std::string name;
  bool isInitial = false;
  std::vector<PortLiteral> initialOutputs;
  NodePos pos;
  bool operator==(const StateDecl&) const = default;
};

struct Expr {
  enum class Kind { Const, Port, Var, Not, Binary };
  enum class Type { Bool, Int, Enum };

  Kind kind = Kind::Const;
  ExprOp op = ExprOp::Not;     // Binary only
  Value constant = false;      // Const only
  std::size_t index = 0;       // Port / Var: index into ports / variables
  Type type = Type::Bool;
  std::optional<TypeId> enumType;  // Type::Enum only
  std::vector<Expr> args;
  NodePos pos;

  bool operator==(const Expr&) const = default;
};

struct Output {
  std::size_t port = 0;
  Expr value;
  NodePos pos;
  bool operator==(const Output&) const = default;
};

struct Assignment {
  std::size_t variable = 0;
  Expr value;
  NodePos pos;
  bool operator==(const Assignment&) const = default;
};

struct Transition {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<PortLiteral> trigger;
  std::optional<Expr> guard;
  std::vector<Output> outputs;
  std::vector<Assignment> assignments;
  NodePos pos;
  bool operator==(const Transition&) const = default;
};

struct Automaton {
  std::vector<VariableDecl> variables;
  std::vector<StateDecl> states;
  std::vector<Transition> transitions;
  NodePos pos;

  /// First state marked initial.
  std::optional<std::size_t> initialState() const;
  bool operator==(const Automaton&) const = default;
};

struct SubcomponentInstance {
  std::string name;
  ComponentId type = 0;
  NodePos pos;
  bool operator==(const SubcomponentInstance&) const = default;
};

struct PortRef {
  std::optional<std::size_t> instance;  // nullopt: the enclosing component
  std::size_t port = 0;
  NodePos pos;
  bool operator==(const PortRef&) const = default;
};

struct Connector {
  PortRef source;
  std::vector<PortRef> targets;
  NodePos pos;
  bool operator==(const Connector&) const = default;
};

struct Composition {
  std::vector<SubcomponentInstance> subcomponents;
  std::vector<Connector> connectors;
  bool operator==(const Composition&) const = default;
};

struct ComponentType {
  std::string name;
  std::vector<PortDecl> ports;
  std::variant<Automaton, Composition> body;
  NodePos pos;

  bool isAtomic() const { return std::holds_alternative<Automaton>(body); }
  const Automaton& automaton() const { return std::get<Automaton>(body); }
  const Composition& composition() const { return std::get<Composition>(body); }
  std::optional<std::size_t> findPort(const std::string& name) const;
  std::vector<std::size_t> portsWith(Direction d) const;

  bool operator==(const ComponentType&) const = default;
};

struct Symbol {
  enum class Kind { Type, Component, Port, State, Variable, Instance };
  Kind kind = Kind::Type;
  std::size_t owner = 0;  // component index for members, unused otherwise
  std::size_t index = 0;
  NodePos pos;
  bool operator==(const Symbol&) const = default;
};

/// Qualified names (`MotorCmd`, `BumpControl`, `BumpControl.idle`, ...)
/// mapped to declarations.
class SymbolTable {
 public:
  void add(const std::string& qualifiedName, Symbol symbol);
  const Symbol* find(const std::string& qualifiedName) const;
  const std::map<std::string, Symbol>& entries() const { return entries_; }
  bool operator==(const SymbolTable&) const = default;

 private:
  std::map<std::string, Symbol> entries_;
};

struct Model {
  std::vector<TypeDef> typedefs;
  std::vector<ComponentType> components;
  SymbolTable symbols;

  const TypeDef& typeOf(const PortDecl& p) const { return typedefs[p.type]; }
  std::optional<ComponentId> findComponent(const std::string& name) const;
  const ComponentType& component(const std::string& name) const;

  bool operator==(const Model&) const = default;
};

struct ResolveResult {
  std::optional<Model> model;
  std::vector<Diagnostic> diagnostics;
};

/// Binds every name of the tree. Diagnostics: R001 UnknownType,
/// R002 UnknownComponent, R003 UnknownPort, R004 UnknownState,
/// R005 DuplicateName, R006 UnknownName, R007 TypeMismatch,
/// R008 IllegalPortUse. Either a model or diagnostics, never both.
ResolveResult resolve(const syntax::Model& tree);

/// The tree a model was resolved from, up to positions and formatting.
syntax::Model toSyntax(const Model& model);

}  // namespace maa
