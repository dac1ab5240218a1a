#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "corpus.hpp"
#include "maa/loader.hpp"
#include "maa/parser.hpp"

using namespace maa;

namespace {

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> codes(const std::vector<Diagnostic>& diagnostics) {
  std::vector<std::string> out;
  for (const auto& d : diagnostics) out.push_back(d.code);
  return out;
}

// Random trees built only from constructs the grammar can express.
class TreeGenerator {
 public:
  explicit TreeGenerator(std::uint64_t seed) : rng_(seed) {}

  syntax::Model model() {
    syntax::Model m;
    const int n = pick(1, 4);
    for (int i = 0; i < n; ++i) {
      if (pick(0, 2) == 0) {
        syntax::Enum e;
        e.name = name("E");
        for (int k = pick(1, 3); k > 0; --k) e.values.push_back(name("V"));
        m.declarations.push_back(e);
      } else {
        m.declarations.push_back(component());
      }
    }
    return m;
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::string name(const std::string& prefix) { return prefix + std::to_string(counter_++); }

  syntax::TypeRef type() {
    syntax::TypeRef t;
    switch (pick(0, 2)) {
      case 0: t.kind = syntax::TypeRef::Kind::Boolean; break;
      case 1:
        t.kind = syntax::TypeRef::Kind::Int;
        t.lo = pick(-5, 5);
        t.hi = t.lo + pick(0, 5);
        break;
      default:
        t.kind = syntax::TypeRef::Kind::Named;
        t.name = name("T");
    }
    return t;
  }

  syntax::Literal literal() {
    switch (pick(0, 2)) {
      case 0: return {pick(0, 1) == 1, {}};
      case 1: return {static_cast<std::int64_t>(pick(-20, 20)), {}};
      default: return {name("L"), {}};
    }
  }

  syntax::Pair pair() { return {name("p"), literal(), {}}; }

  syntax::Expr expr(int depth) {
    syntax::Expr e;
    const int choice = depth == 0 ? pick(0, 1) : pick(0, 4);
    if (choice == 0) {
      e.kind = syntax::Expr::Kind::Literal;
      e.literal = pick(0, 1) ? Value(pick(0, 1) == 1) : Value(static_cast<std::int64_t>(pick(-9, 9)));
    } else if (choice == 1) {
      e.kind = syntax::Expr::Kind::Name;
      e.name = name("x");
    } else if (choice == 2) {
      e.kind = syntax::Expr::Kind::Unary;
      e.op = ExprOp::Not;
      e.args = {expr(depth - 1)};
    } else {
      static const ExprOp kBinary[] = {ExprOp::Or, ExprOp::And, ExprOp::Eq, ExprOp::Ne, ExprOp::Lt,
                                       ExprOp::Le, ExprOp::Gt,  ExprOp::Ge, ExprOp::Add, ExprOp::Sub};
      e.kind = syntax::Expr::Kind::Binary;
      e.op = kBinary[pick(0, 9)];
      e.args = {expr(depth - 1), expr(depth - 1)};
    }
    return e;
  }

  syntax::Component component() {
    syntax::Component c;
    c.name = name("C");
    syntax::PortDecl ports;
    for (int k = pick(1, 3); k > 0; --k) ports.items.push_back({pick(0, 1) == 1, type(), name("q"), {}});
    c.elements.push_back(ports);
    if (pick(0, 1) == 0) {
      for (int k = pick(0, 2); k > 0; --k) c.elements.push_back(syntax::Instance{name("C"), name("i"), {}});
      for (int k = pick(0, 2); k > 0; --k) {
        syntax::Connect connect;
        connect.source = {pick(0, 1) ? std::optional<std::string>(name("i")) : std::nullopt, name("q"), {}};
        for (int t = pick(1, 2); t > 0; --t) connect.targets.push_back({std::nullopt, name("q"), {}});
        c.elements.push_back(connect);
      }
      return c;
    }
    syntax::Automaton a;
    for (int k = pick(0, 2); k > 0; --k) a.variables.push_back({type(), name("v"), literal(), {}});
    for (int k = pick(1, 3); k > 0; --k) {
      syntax::StateItem s{name("s"), pick(0, 1) == 1, {}, {}};
      if (s.initial) {
        for (int o = pick(0, 2); o > 0; --o) s.initialOutputs.push_back(pair());
      }
      a.states.push_back(s);
    }
    for (int k = pick(0, 3); k > 0; --k) {
      syntax::Transition t;
      t.source = name("s");
      t.target = name("s");
      for (int o = pick(0, 2); o > 0; --o) t.trigger.push_back(pair());
      if (pick(0, 1)) t.guard = expr(3);
      for (int o = pick(0, 2); o > 0; --o) t.actions.push_back({pick(0, 1) == 1, name("y"), expr(2), {}});
      a.transitions.push_back(t);
    }
    c.elements.push_back(a);
    return c;
  }

  std::mt19937_64 rng_;
  int counter_ = 0;
};

}  // namespace

TEST_CASE("every corpus file parses without diagnostics and round-trips") {
  const auto files = testing::corpusFiles();
  CHECK(files.size() >= 6);
  for (const auto& f : files) {
    CAPTURE(f);
    const auto first = parse(readFile(testing::corpusPath(f)), f);
    CHECK(first.diagnostics.empty());
    const std::string printed = prettyPrint(first.tree);
    const auto second = parse(printed, f);
    CHECK(second.diagnostics.empty());
    CHECK(second.tree == first.tree);
    CHECK(prettyPrint(second.tree) == printed);
  }
}

TEST_CASE("printing and reparsing random trees is the identity") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    CAPTURE(seed);
    const auto tree = TreeGenerator(seed).model();
    const std::string printed = prettyPrint(tree);
    CAPTURE(printed);
    const auto reparsed = parse(printed, "random.maa");
    REQUIRE(reparsed.diagnostics.empty());
    CHECK(reparsed.tree == tree);
  }
}

TEST_CASE("expression precedence") {
  const auto parsed = parse("component C { automaton { state s [initial]; s -> s [not a or b and c == 1 + 2 - 3]; } }",
                            "t.maa");
  REQUIRE(parsed.diagnostics.empty());
  const auto& c = std::get<syntax::Component>(parsed.tree.declarations[0]);
  const auto& a = std::get<syntax::Automaton>(c.elements[0]);
  CHECK(prettyPrint(*a.transitions[0].guard) == "not a or b and c == 1 + 2 - 3");
  const auto& g = *a.transitions[0].guard;
  CHECK(g.op == ExprOp::Or);
  CHECK(g.args[0].op == ExprOp::Not);
  CHECK(g.args[1].op == ExprOp::And);
  CHECK(g.args[1].args[1].op == ExprOp::Eq);
  CHECK(g.args[1].args[1].args[1].op == ExprOp::Sub);

  syntax::Expr sub;
  sub.kind = syntax::Expr::Kind::Binary;
  sub.op = ExprOp::Sub;
  syntax::Expr one;
  one.kind = syntax::Expr::Kind::Literal;
  one.literal = std::int64_t{1};
  sub.args = {one, sub};
  sub.args[1].args = {one, one};
  CHECK(prettyPrint(sub) == "1 - (1 - 1)");
}

TEST_CASE("lexical and syntax errors carry their codes and positions") {
  SUBCASE("unknown character") {
    const auto r = parse("component C { port in Boolean a @ ; }", "t.maa");
    REQUIRE(!r.diagnostics.empty());
    CHECK(r.diagnostics[0].code == "P001");
    CHECK(r.diagnostics[0].pos.line == 1);
    CHECK(r.diagnostics[0].pos.column == 33);
    CHECK(r.diagnostics[0].pos.file == "t.maa");
  }
  SUBCASE("missing separator") {
    const auto r = parse("component C {\n  port in Boolean a\n}", "t.maa");
    REQUIRE(!r.diagnostics.empty());
    CHECK(r.diagnostics[0].code == "P002");
    CHECK(r.diagnostics[0].pos.line == 3);
  }
  SUBCASE("unterminated comment") {
    const auto r = parse("enum E { A }\n/* open", "t.maa");
    CHECK(codes(r.diagnostics) == std::vector<std::string>{"P003"});
    CHECK(r.tree.declarations.size() == 1);
  }
  SUBCASE("integer out of range") {
    const auto r = parse("component C { port in Int(0..99999999999999999999) a; }", "t.maa");
    REQUIRE(!r.diagnostics.empty());
    CHECK(r.diagnostics[0].code == "P004");
  }
  SUBCASE("unreadable file") {
    const auto r = loadModel({testing::corpusPath("does_not_exist.maa")});
    CHECK(!r.model);
    CHECK(codes(r.diagnostics) == std::vector<std::string>{"P000"});
  }
}

TEST_CASE("parsing recovers after an error") {
  const std::string text =
      "component Broken {\n"
      "  port in Boolean a, out ;\n"
      "  automaton { state s [initial]; s -> s {a:true} / {b:true}; }\n"
      "}\n"
      "component Fine {\n"
      "  port in Boolean a;\n"
      "}\n";
  const auto r = parse(text, "t.maa");
  CHECK(r.diagnostics.size() >= 1);
  CHECK(r.diagnostics[0].code == "P002");
  bool sawFine = false;
  bool brokenKeptAutomaton = false;
  for (const auto& d : r.tree.declarations) {
    if (const auto* c = std::get_if<syntax::Component>(&d)) {
      if (c->name == "Fine") sawFine = true;
      if (c->name == "Broken") {
        for (const auto& e : c->elements) brokenKeptAutomaton |= std::holds_alternative<syntax::Automaton>(e);
      }
    }
  }
  CHECK(sawFine);
  CHECK(brokenKeptAutomaton);
}

TEST_CASE("the parser never throws on garbage") {
  std::mt19937_64 rng(7);
  const std::string alphabet = "component{}[]();:,->/ automaton state initial port in out Boolean Int(0..3) a b 12 -";
  for (int round = 0; round < 500; ++round) {
    std::string text;
    const int length = std::uniform_int_distribution<int>(0, 80)(rng);
    for (int i = 0; i < length; ++i) {
      text += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
    }
    CHECK_NOTHROW(parse(text, "garbage.maa"));
  }
}

TEST_CASE("merge concatenates declarations") {
  const auto a = parse("enum E { X }", "a.maa");
  const auto b = parse("component C { port in E p; }", "b.maa");
  const auto merged = merge({a.tree, b.tree});
  CHECK(merged.declarations.size() == 2);
  CHECK(std::holds_alternative<syntax::Enum>(merged.declarations[0]));
}
