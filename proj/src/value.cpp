#include "maa/value.hpp"

namespace maa {

std::string toString(const Value& v) {
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  return std::get<std::string>(v);
}

std::string toString(const Message& m) { return m ? toString(*m) : "eps"; }

}  // namespace maa
