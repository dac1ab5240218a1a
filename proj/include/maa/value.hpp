#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace maa {

// A message payload: boolean, integer or enumeration constant (by name).
using Value = std::variant<bool, std::int64_t, std::string>;

// std::nullopt is epsilon, the absence of a message at a tick.
using Message = std::optional<Value>;

std::string toString(const Value& v);
std::string toString(const Message& m);

inline bool isBool(const Value& v) { return std::holds_alternative<bool>(v); }
inline bool isInt(const Value& v) { return std::holds_alternative<std::int64_t>(v); }
inline bool isEnum(const Value& v) { return std::holds_alternative<std::string>(v); }

}  // namespace maa
