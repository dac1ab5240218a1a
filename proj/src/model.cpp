#include "maa/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace maa {

std::size_t TypeDef::size() const {
  switch (kind) {
    case Kind::Boolean: return 2;
    case Kind::BoundedInt: return static_cast<std::size_t>(hi - lo + 1);
    case Kind::Enumeration: return values.size();
  }
  return 0;
}

std::optional<std::size_t> TypeDef::indexOf(const Value& v) const {
  switch (kind) {
    case Kind::Boolean:
      if (const auto* b = std::get_if<bool>(&v)) return *b ? 1 : 0;
      return std::nullopt;
    case Kind::BoundedInt:
      if (const auto* i = std::get_if<std::int64_t>(&v); i && *i >= lo && *i <= hi) {
        return static_cast<std::size_t>(*i - lo);
      }
      return std::nullopt;
    case Kind::Enumeration:
      if (const auto* s = std::get_if<std::string>(&v)) {
        const auto it = std::find(values.begin(), values.end(), *s);
        if (it != values.end()) return static_cast<std::size_t>(it - values.begin());
      }
      return std::nullopt;
  }
  return std::nullopt;
}

Value TypeDef::valueAt(std::size_t index) const {
  switch (kind) {
    case Kind::Boolean: return index != 0;
    case Kind::BoundedInt: return lo + static_cast<std::int64_t>(index);
    case Kind::Enumeration: return values.at(index);
  }
  return false;
}

std::int64_t TypeDef::toRaw(const Value& v) const {
  if (kind == Kind::BoundedInt) return std::get<std::int64_t>(v);
  const auto i = indexOf(v);
  if (!i) throw std::invalid_argument("value " + toString(v) + " is not in type " + name);
  return static_cast<std::int64_t>(*i);
}

Value TypeDef::fromRaw(std::int64_t raw) const {
  if (kind == Kind::BoundedInt) return raw;
  return valueAt(static_cast<std::size_t>(raw));
}

std::vector<Value> messageDomain(const TypeDef& t) {
  std::vector<Value> out;
  out.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out.push_back(t.valueAt(i));
  return out;
}

bool sameType(const TypeDef& a, const TypeDef& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case TypeDef::Kind::Boolean: return true;
    case TypeDef::Kind::BoundedInt: return a.lo == b.lo && a.hi == b.hi;
    case TypeDef::Kind::Enumeration: return a.name == b.name && a.values == b.values;
  }
  return false;
}

std::optional<std::size_t> Automaton::initialState() const {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].isInitial) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> ComponentType::findPort(const std::string& portName) const {
  for (std::size_t i = 0; i < ports.size(); ++i) {
    if (ports[i].name == portName) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> ComponentType::portsWith(Direction d) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ports.size(); ++i) {
    if (ports[i].direction == d) out.push_back(i);
  }
  return out;
}

void SymbolTable::add(const std::string& qualifiedName, Symbol symbol) {
  entries_.emplace(qualifiedName, std::move(symbol));
}

const Symbol* SymbolTable::find(const std::string& qualifiedName) const {
  const auto it = entries_.find(qualifiedName);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<ComponentId> Model::findComponent(const std::string& componentName) const {
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].name == componentName) return i;
  }
  return std::nullopt;
}

const ComponentType& Model::component(const std::string& componentName) const {
  const auto id = findComponent(componentName);
  if (!id) throw std::out_of_range("unknown component " + componentName);
  return components[*id];
}

}  // namespace maa
