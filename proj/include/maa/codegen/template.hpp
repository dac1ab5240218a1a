#pragma once

// A small template language over JSON views of the model.
//
//   ${a.b.c}                  interpolate a path; the first segment is a
//                             loop variable, `ast` (the rendered node) or
//                             `op` (values stored by calculators)
//   <#calc name>              run a calculator on the current node and store
//                             its result as op.name
//   <#if name>..<#else>..</#if>
//                             run a calculator and branch on its result
//   <#foreach x in path>..</#foreach>
//   <#include "name" path>    render another template on a node
//   <#-- comment -->
//
// The current node is the innermost loop variable, or `ast` outside loops.
// A line holding nothing but directives produces no output of its own.

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

namespace maa::codegen {

using Node = nlohmann::json;

struct Directive {
  enum class Kind { Text, Interp, If, Foreach, Include, Calc };
  Kind kind = Kind::Text;
  std::size_t index = 0;    // position among the template's directives
  std::string text;         // Text: raw text; Interp/Foreach/Include: path
  std::string name;         // If/Calc: calculator; Foreach: variable; Include: template
  std::vector<Directive> body;
  std::vector<Directive> elseBody;
};

struct Template {
  std::string name;
  std::vector<Directive> body;
};

/// Throws TemplateError on malformed directives.
Template parseTemplate(const std::string& name, const std::string& text);

class TemplateSet {
 public:
  /// Loads every `*.tmpl` below `dir`; names are relative paths without the
  /// extension, e.g. `exec/atomic`.
  static TemplateSet load(const std::string& dir);

  void add(Template t);
  /// Throws TemplateError (unknown template).
  const Template& get(const std::string& name) const;

 private:
  std::map<std::string, Template> templates_;
};

class Dialect;
class RenderContext;

struct Calculator {
  std::string name;
  std::function<Node(const Node& node, const RenderContext& context)> compute;
};

// Calculators shared by every backend plus the ones a backend adds.
class CalculatorRegistry {
 public:
  void addShared(Calculator c);
  void add(const std::string& backend, Calculator c);
  bool removeShared(const std::string& name);
  std::vector<std::string> sharedNames() const;

  /// Calculators visible to `backend`, keyed by name. Throws TemplateError
  /// if a name is defined twice.
  std::map<std::string, Calculator> view(const std::string& backend) const;

 private:
  std::vector<Calculator> shared_;
  std::map<std::string, std::vector<Calculator>> perBackend_;
};

class RenderContext {
 public:
  RenderContext(const TemplateSet& templates, const std::map<std::string, Calculator>& calculators,
                const Dialect& dialect)
      : templates_(templates), calculators_(calculators), dialect_(dialect) {}

  const Dialect& dialect() const { return dialect_; }
  /// Resolves a path against the innermost frame. Throws TemplateError.
  const Node& lookup(const std::string& path) const;
  /// Whether the innermost loop is not at its last element.
  bool inLoopNotLast() const;

  std::string render(const std::string& templateName, const Node& node);

 private:
  struct Loop {
    std::string variable;
    const Node* item;
    std::size_t index;
    std::size_t size;
  };
  struct Frame {
    const Template* tmpl;
    const Node* ast;
    Node op = Node::object();
    std::vector<Loop> loops;
  };

  void renderBody(const std::vector<Directive>& body, std::string& out);
  const Node& current() const;
  Node runCalculator(const std::string& name, const Directive& d);
  [[noreturn]] void fail(const Directive& d, const std::string& message) const;

  const TemplateSet& templates_;
  const std::map<std::string, Calculator>& calculators_;
  const Dialect& dialect_;
  std::deque<Frame> frames_;  // stable addresses while nested renders push
};

/// Text of a JSON scalar as it is interpolated.
std::string scalarText(const Node& value);

}  // namespace maa::codegen
