#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "maa/codegen/backends.hpp"
#include "maa/codegen/calculators.hpp"
#include "maa/codegen/view.hpp"
#include "maa/errors.hpp"
#include "maa/semantics.hpp"
#include "validators.hpp"

using namespace maa;
using namespace maa::codegen;

namespace {

const std::vector<std::string> kAllFiles = {"bumpcontrol.maa", "slamrobot.maa", "counter.maa", "pipeline.maa",
                                            "blinker.maa"};

class PlainDialect : public Dialect {
 public:
  std::string literal(const std::string&, const Node&, const Node& value) const override { return scalarText(value); }
  std::string state(const std::string&, const std::string& s) const override { return s; }
  std::string triggerTest(const std::string& port, const std::string& literal) const override {
    return port + "=" + literal;
  }
  std::string expr(const Node&) const override { return "e"; }
  std::string condition(const std::string& stateTest, const std::vector<std::string>& triggers,
                        const std::optional<std::string>& guard) const override {
    std::string out = stateTest;
    for (const auto& t : triggers) out += " " + t;
    if (guard) out += " [" + *guard + "]";
    return out;
  }
  std::string stateTest(const std::string&, const std::string& s) const override { return "@" + s; }
};

class Harness {
 public:
  Harness() : calculators_(standardRegistry().view("graph")) {}

  void add(const std::string& name, const std::string& text) { templates_.add(parseTemplate(name, text)); }

  std::string render(const std::string& name, const Node& node) {
    RenderContext context(templates_, calculators_, dialect_);
    return context.render(name, node);
  }

 private:
  TemplateSet templates_;
  std::map<std::string, Calculator> calculators_;
  PlainDialect dialect_;
};

const GeneratedArtifact& artifact(const std::vector<GeneratedArtifact>& all, const std::string& path) {
  for (const auto& a : all) {
    if (a.path == path) return a;
  }
  FAIL("no artifact " << path);
  throw std::logic_error("unreachable");
}

std::string squeeze(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

std::string readFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("template text, paths, loops and conditionals") {
  const auto model = testing::loadCorpus({"bumpcontrol.maa"});
  const Node view = componentView(model, model.component("BumpControl"));
  Harness h;
  h.add("plain", "x");
  CHECK(h.render("plain", view) == "x");
  h.add("name", "${ast.name}");
  CHECK(h.render("name", view) == "BumpControl");
  h.add("states", "<#foreach s in ast.states>${s.name},</#foreach>");
  CHECK(h.render("states", view) == "idle,driving,backing,turning,");
  h.add("joined", "<#foreach s in ast.states>${s.name}<#if notLast>, <#else>.</#if></#foreach>");
  CHECK(h.render("joined", view) == "idle, driving, backing, turning.");
  h.add("lines", "<#-- header -->\n<#foreach s in ast.states>\n- ${s.name}\n</#foreach>\n");
  CHECK(h.render("lines", view) == "- idle\n- driving\n- backing\n- turning\n");
  h.add("state", "[${ast.name}]");
  h.add("include", "<#foreach s in ast.states><#include \"state\" s></#foreach>");
  CHECK(h.render("include", view) == "[idle][driving][backing][turning]");
  h.add("calc", "<#calc initialState>${op.initialState.state}");
  CHECK(h.render("calc", view) == "idle");
  h.add("guard", "<#foreach t in ast.transitions><#calc guardCalculator>${op.guardCalculator};</#foreach>");
  CHECK(h.render("guard", view) == "@idle bump=true;@driving bump=true;@backing ts=ALERT;@turning ts=ALERT;");
}

TEST_CASE("template errors") {
  const auto model = testing::loadCorpus({"bumpcontrol.maa"});
  const Node view = componentView(model, model.component("BumpControl"));
  Harness h;
  CHECK_THROWS_AS(h.render("missing", view), TemplateError);
  h.add("badPath", "a ${ast.nothing.here}");
  CHECK_THROWS_AS(h.render("badPath", view), TemplateError);
  h.add("badCalc", "<#calc noSuchCalculator>");
  try {
    h.render("badCalc", view);
    FAIL("expected TemplateError");
  } catch (const TemplateError& e) {
    CHECK(std::string(e.what()).find("badCalc") != std::string::npos);
    CHECK(std::string(e.what()).find("noSuchCalculator") != std::string::npos);
  }
  h.add("badInclude", "<#include \"nowhere\" ast>");
  CHECK_THROWS_AS(h.render("badInclude", view), TemplateError);
  CHECK_THROWS_AS(parseTemplate("open", "<#foreach s in ast.states>x"), TemplateError);
  CHECK_THROWS_AS(parseTemplate("stray", "</#if>"), TemplateError);
  CHECK_THROWS_AS(parseTemplate("unclosed", "${ast.name"), TemplateError);

  CalculatorRegistry twice = standardRegistry();
  twice.add("graph", {"notLast", [](const Node&, const RenderContext&) { return Node(true); }});
  CHECK_THROWS_AS(twice.view("graph"), TemplateError);
}

TEST_CASE("removing any shared calculator breaks every backend") {
  const auto model = testing::loadCorpus({"bumpcontrol.maa", "slamrobot.maa", "counter.maa"});
  const auto counter = *model.findComponent("PulseCounter");
  const auto names = standardRegistry().sharedNames();
  CHECK(names == std::vector<std::string>{"notLast", "guardCalculator", "initialState", "messageLiteral"});
  for (const auto& name : names) {
    CAPTURE(name);
    auto registry = standardRegistry();
    REQUIRE(registry.removeShared(name));
    GeneratorOptions options;
    options.registry = &registry;
    CHECK_THROWS_AS(emitExec(model, options), TemplateError);
    CHECK_THROWS_AS(emitGraph(model, options), TemplateError);
    CHECK_THROWS_AS(emitWs1s(model, counter, std::nullopt, options), TemplateError);
  }
}

TEST_CASE("generation is deterministic") {
  const auto model = testing::loadCorpus(kAllFiles);
  const auto again = testing::loadCorpus(kAllFiles);
  CHECK(emitExec(model) == emitExec(again));
  CHECK(emitGraph(model) == emitGraph(again));
  const auto bc = *model.findComponent("BumpControl");
  CHECK(emitWs1s(model, bc) == emitWs1s(again, bc));
}

TEST_CASE("exec output for BumpControl") {
  const auto model = testing::loadCorpus({"bumpcontrol.maa"});
  const auto all = emitExec(model);
  const auto& py = artifact(all, "exec/BumpControl.py").content;
  CHECK(py.find("self._state = BumpControlState.idle") != std::string::npos);
  CHECK(py.find("self._rMotor.setCurrentValue(MotorCmd.STOP)") != std::string::npos);
  CHECK(py.find("self._lMotor.setCurrentValue(MotorCmd.STOP)") != std::string::npos);
  CHECK(py.find("if self._state == BumpControlState.idle and self._bump.getCurrentValue() == True:") !=
        std::string::npos);
  CHECK(py.find("self._rMotor.setNextValue(MotorCmd.FORWARD)") != std::string::npos);
  CHECK(py.find("self._state = BumpControlState.driving") != std::string::npos);
  CHECK(artifact(all, "exec/maa_types.py").content.find("class MotorCmd:") != std::string::npos);
  CHECK(artifact(all, "exec/main.py").content.find("\"BumpControl\": BumpControl") != std::string::npos);
}

TEST_CASE("exec refuses components outside the executable profile") {
  const auto model = testing::loadCorpus({"bumpcontrol.maa", "bumpcontrol_spec.maa"});
  GeneratorOptions options;
  options.roots = {*model.findComponent("BumpControlSpec")};
  try {
    emitExec(model, options);
    FAIL("expected ProfileViolation");
  } catch (const ProfileViolation& e) {
    REQUIRE(!e.diagnostics().empty());
    CHECK(e.diagnostics()[0].code == "E1");
  }
  options.roots = {*model.findComponent("BumpControl")};
  CHECK_NOTHROW(emitExec(model, options));
}

TEST_CASE("WS1S output") {
  const auto model = testing::loadCorpus({"bumpcontrol.maa", "bumpcontrol_spec.maa", "bumpcontrol_mutant.maa",
                                          "counter.maa", "slamrobot.maa"});
  const auto bc = *model.findComponent("BumpControl");
  const auto text = emitWs1s(model, bc);
  CHECK(text.path == "mona/BumpControl.mona");
  CHECK(testing::validateWs1s(text.content) == "");
  const auto flat = squeeze(text.content);
  CHECK(flat.find(squeeze("0 in idle & 0 in rMotor_STOP & 0 in lMotor_STOP")) != std::string::npos);
  CHECK(flat.find(squeeze("(t in idle & t in bump_true & t+1 in driving & t+1 in rMotor_FORWARD")) !=
        std::string::npos);

  for (const auto& [impl, spec] : std::vector<std::pair<std::string, std::string>>{
           {"BumpControl", "BumpControlSpec"}, {"BumpControlMutant", "BumpControl"}}) {
    for (auto implMode : {CompletionMode::EpsilonSelfLoop, CompletionMode::Chaos, CompletionMode::Reject}) {
      for (auto specMode : {CompletionMode::EpsilonSelfLoop, CompletionMode::Chaos, CompletionMode::Reject}) {
        GeneratorOptions o;
        o.implMode = implMode;
        o.specMode = specMode;
        const auto a = emitWs1s(model, *model.findComponent(impl), model.findComponent(spec), o);
        CAPTURE(a.content);
        CHECK(testing::validateWs1s(a.content) == "");
        CHECK(a.content.find("=> " + spec + "(") != std::string::npos);
      }
    }
  }
  const auto counter = emitWs1s(model, *model.findComponent("PulseCounter"));
  CHECK(testing::validateWs1s(counter.content) == "");
  CHECK(counter.content.find("counting_n_0") != std::string::npos);

  CHECK_THROWS_AS(emitWs1s(model, bc, model.findComponent("PulseCounter")), InterfaceMismatch);
  CHECK_THROWS_AS(emitWs1s(model, *model.findComponent("SLAMRobot")), ProfileViolation);
}

TEST_CASE("the WS1S validator rejects broken programs") {
  CHECK(testing::validateWs1s("ws1s;\npred P(var2 X) = all1 t: t in X;\nall2 Y: P(Y);") == "");
  CHECK(testing::validateWs1s("pred P(var2 X) = true;") != "");
  CHECK(testing::validateWs1s("ws1s;\npred P(var2 X) = all1 t: t in Y;") != "");
  CHECK(testing::validateWs1s("ws1s;\npred P(var2 X) = all1 t: (t in X;") != "");
  CHECK(testing::validateWs1s("ws1s;\npred P(var2 X) = true;\nall2 Y, Z: P(Y, Z);") != "");
  CHECK(testing::validateWs1s("ws1s;\nall2 X: X in X;") != "");
  CHECK(testing::validateWs1s("ws1s;\nall2 X: Q(X);") != "");
}

TEST_CASE("graph output") {
  const auto model = testing::loadCorpus({"bumpcontrol.maa", "slamrobot.maa"});
  const auto all = emitGraph(model);
  const auto bump = testing::parseDot(artifact(all, "graph/BumpControl.dot").content);
  std::size_t stateNodes = 0;
  for (const auto& n : bump.nodes) stateNodes += n.attributes.count("shape") && n.attributes.at("shape") == "ellipse";
  CHECK(stateNodes == 4);
  REQUIRE(bump.node("idle"));
  CHECK(bump.node("idle")->attributes.at("peripheries") == "2");
  CHECK(bump.node("idle")->attributes.at("xlabel") == "rMotor:STOP, lMotor:STOP");
  CHECK(bump.edges.size() == 5);
  bool sawLabel = false;
  for (const auto& e : bump.edges) {
    if (e.source == "idle" && e.target == "driving") {
      sawLabel = e.attributes.at("label") == "bump:true / rMotor:FORWARD, lMotor:FORWARD";
    }
  }
  CHECK(sawLabel);

  const auto slam = testing::parseDot(artifact(all, "graph/SLAMRobot.dot").content);
  std::size_t instances = 0;
  for (const auto& n : slam.nodes) instances += n.attributes.count("shape") && n.attributes.at("shape") == "box";
  CHECK(instances == 7);
  CHECK(slam.edges.size() == 13);

  for (const auto& a : all) {
    if (a.path.ends_with(".dot")) CHECK_NOTHROW(testing::parseDot(a.content));
  }
  const auto json = nlohmann::json::parse(artifact(all, "graph/model.json").content);
  CHECK(json == modelView(model));
}

TEST_CASE("the DOT checker rejects broken graphs") {
  CHECK_NOTHROW(testing::parseDot("digraph g { a; b [label=\"x\"]; a -> b; }"));
  CHECK_THROWS(testing::parseDot("digraph g { a -> b; }"));
  CHECK_THROWS(testing::parseDot("digraph g { a; a; }"));
  CHECK_THROWS(testing::parseDot("digraph g { a [label=\"x\"; }"));
  CHECK_THROWS(testing::parseDot("graph g { }"));
}

TEST_CASE("an empty model yields no graph artifacts") {
  const auto model = resolve(syntax::Model{}).model.value();
  CHECK(emitGraph(model).empty());
}

TEST_CASE("artifacts are written below the output directory") {
  const auto model = testing::loadCorpus({"counter.maa"});
  const auto dir = std::filesystem::temp_directory_path() / "maa_codegen_write";
  std::filesystem::remove_all(dir);
  const auto all = emitGraph(model);
  writeArtifacts(all, dir.string());
  for (const auto& a : all) CHECK(readFile(dir / a.path) == a.content);
  std::filesystem::remove_all(dir);
}

#if defined(MAA_PYTHON) && defined(MAA_PY_RUNTIME)
TEST_CASE("generated Python reproduces the simulator") {
  const std::string python = MAA_PYTHON;
  if (python.empty()) return;
  const auto dir = std::filesystem::temp_directory_path() / "maa_codegen_python";
  for (const auto& sc : testing::simulationCases()) {
    CAPTURE(sc.bundle);
    std::filesystem::remove_all(dir);
    const auto model = testing::loadCorpus(sc.files);
    const auto root = *model.findComponent(sc.root);
    GeneratorOptions options;
    options.roots = {root};
    writeArtifacts(emitExec(model, options), dir.string());
    std::filesystem::copy_file(std::filesystem::path(MAA_PY_RUNTIME) / "runtime.py", dir / "exec" / "runtime.py");
    const auto inputs = testing::loadBundle(sc.bundle);
    const auto out = dir / "out.json";
    const std::string command = "\"" + python + "\" \"" + (dir / "exec" / "main.py").string() + "\" --root " +
                                sc.root + " --inputs \"" + testing::corpusPath("bundles/" + sc.bundle) +
                                "\" --ticks " + std::to_string(inputs.ticks) + " --out \"" + out.string() + "\"";
    REQUIRE(std::system(command.c_str()) == 0);
    const auto expected = simulate(model, root, inputs, {.ticks = inputs.ticks}).outputs;
    CHECK(readFile(out) == canonicalJson(expected) + "\n");
  }
  std::filesystem::remove_all(dir);
}
#endif
