#pragma once

// JSON views of the model that templates and calculators read.

#include "maa/codegen/template.hpp"
#include "maa/model.hpp"

namespace maa::codegen {

Node valueView(const Value& v);
/// {name, kind: boolean|int|enum, lo, hi, values}
Node typeView(const TypeDef& t);
/// {kind: const|port|var|not|binary, op, args, name, type, value}
Node exprView(const Model& model, const ComponentType& component, const Expr& e);
/// Ports, states, variables and transitions of an atomic component, or
/// instances and connectors of a composed one.
Node componentView(const Model& model, const ComponentType& component);
/// {enums, components}
Node modelView(const Model& model);

}  // namespace maa::codegen
