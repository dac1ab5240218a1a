#include <doctest.h>

#include "corpus.hpp"
#include "maa/loader.hpp"
#include "maa/parser.hpp"

using namespace maa;

namespace {

const char* kTypes = "enum MotorCmd { STOP, FORWARD, BACKWARD }\nenum Flag { UP }\n";

std::vector<std::string> codesOf(const std::string& body) {
  const auto r = loadSources({{"t.maa", std::string(kTypes) + body}});
  CHECK(!r.model);
  std::vector<std::string> out;
  for (const auto& d : r.diagnostics) out.push_back(d.code);
  return out;
}

bool has(const std::vector<std::string>& codes, const std::string& code) {
  return std::find(codes.begin(), codes.end(), code) != codes.end();
}

}  // namespace

TEST_CASE("each resolution failure has its code") {
  CHECK(has(codesOf("component C { port in Speed s; }"), "R001"));
  CHECK(has(codesOf("component C { instance Missing m; }"), "R002"));
  CHECK(has(codesOf("component A { port in Boolean x; }\n"
                    "component C { port in Boolean a; instance A i; connect a -> i.y; }"),
            "R003"));
  CHECK(has(codesOf("component C { port in Boolean a; automaton { state s [initial]; s -> t {a:true}; } }"), "R004"));
  CHECK(has(codesOf("component C { port in Boolean a; } component C { port in Boolean b; }"), "R005"));
  CHECK(has(codesOf("enum MotorCmd { X }"), "R005"));
  CHECK(has(codesOf("component C { port in Boolean a; instance C c; connect a -> z.a; }"), "R006"));
  CHECK(has(codesOf("component C { port in Boolean a; automaton { state s [initial]; s -> s [mystery]; } }"),
            "R006"));
  CHECK(has(codesOf("component C { port in Boolean a, out MotorCmd m; automaton { state s [initial]; "
                    "s -> s {a:true} / {m:a}; } }"),
            "R007"));
  CHECK(has(codesOf("component C { port in Int(0..3) n; automaton { state s [initial]; s -> s [n and true]; } }"),
            "R007"));
  CHECK(has(codesOf("component C { port in Boolean a, out Boolean b; automaton { state s [initial]; "
                    "s -> s {b:true}; } }"),
            "R008"));
  CHECK(has(codesOf("component C { port in Boolean a, out Boolean b; automaton { state s [initial]; "
                    "s -> s [b]; } }"),
            "R008"));
  CHECK(has(codesOf("component C { port in Boolean a; automaton { var Boolean v = false; state s [initial]; "
                    "s -> s / {v:true}; } }"),
            "R008"));
}

TEST_CASE("resolution reports every problem, not just the first") {
  const auto codes = codesOf("component C { port in Speed s, in Size z; instance Missing m; }");
  CHECK(std::count(codes.begin(), codes.end(), "R001") == 2);
  CHECK(has(codes, "R002"));
}

TEST_CASE("a resolved model binds names to indices") {
  const auto model = testing::loadCorpus({"bumpcontrol.maa"});
  const auto& c = model.component("BumpControl");
  REQUIRE(c.isAtomic());
  const auto& a = c.automaton();
  CHECK(a.states.size() == 4);
  CHECK(a.initialState() == 0u);
  CHECK(a.transitions.size() == 4);
  const auto& first = a.transitions[0];
  CHECK(a.states[first.source].name == "idle");
  CHECK(a.states[first.target].name == "driving");
  REQUIRE(first.trigger.size() == 1);
  CHECK(c.ports[first.trigger[0].port].name == "bump");
  CHECK(first.trigger[0].value == Value(true));
  CHECK(model.symbols.find("BumpControl.idle") != nullptr);
  CHECK(model.symbols.find("MotorCmd")->kind == Symbol::Kind::Type);
  CHECK(model.symbols.find("BumpControl.rMotor")->kind == Symbol::Kind::Port);
}

TEST_CASE("enumeration constants take the expected type") {
  const auto model = testing::loadText(std::string(kTypes) +
                                       "component C { port in MotorCmd m, out Boolean moving;\n"
                                       "  automaton { state s [initial];\n"
                                       "    s -> s {m:FORWARD} [m != STOP] / {moving:m == FORWARD}; } }");
  const auto& t = model.component("C").automaton().transitions[0];
  REQUIRE(t.guard);
  CHECK(t.guard->args[1].type == Expr::Type::Enum);
  CHECK(model.typedefs[*t.guard->args[1].enumType].name == "MotorCmd");
}

TEST_CASE("toSyntax inverts resolution on the corpus") {
  for (const auto& files : std::vector<std::vector<std::string>>{{"bumpcontrol.maa"},
                                                                 {"bumpcontrol.maa", "slamrobot.maa"},
                                                                 {"counter.maa"},
                                                                 {"pipeline.maa"},
                                                                 {"blinker.maa"}}) {
    const auto model = testing::loadCorpus(files);
    const auto again = resolve(toSyntax(model));
    REQUIRE(again.model);
    CHECK(*again.model == model);
  }
}
