#pragma once

// Independent syntax checkers for generated WS1S and DOT text.

#include <map>
#include <string>
#include <vector>

namespace testing {

/// Empty if `text` is a well-formed WS1S program in the subset the mona
/// backend emits: a `ws1s;` header, predicate definitions over var2
/// parameters and top-level formulas. Every variable must be bound and every
/// predicate call must match its definition's arity. Otherwise the first
/// problem found.
std::string validateWs1s(const std::string& text);

struct DotGraph {
  struct Node {
    std::string id;
    std::map<std::string, std::string> attributes;
  };
  struct Edge {
    std::string source;
    std::string target;
    std::map<std::string, std::string> attributes;
  };
  std::string name;
  std::map<std::string, std::string> graphAttributes;
  std::vector<Node> nodes;  // explicitly declared, in order
  std::vector<Edge> edges;

  const Node* node(const std::string& id) const;
};

/// Parses a single `digraph`. Throws std::runtime_error on malformed input
/// or an edge between undeclared nodes.
DotGraph parseDot(const std::string& text);

}  // namespace testing
