#include "maa/codegen/template.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "maa/errors.hpp"

namespace maa::codegen {

namespace {

// Drops the indentation and line break of lines made only of directives.
std::string stripDirectiveLines(const std::string& text) {
  static const std::regex directiveOnly(R"(^[ \t]*((<#--.*?-->|<#[^>]*>|</#[a-z]+>)[ \t]*)+$)");
  static const std::regex padding(R"(^[ \t]+|[ \t]+$)");
  std::string out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    const bool newline = end != std::string::npos;
    if (!newline) end = text.size();
    const std::string line = text.substr(start, end - start);
    if (std::regex_match(line, directiveOnly)) {
      out += std::regex_replace(line, padding, "");
    } else {
      out += line;
      if (newline) out += '\n';
    }
    start = end + 1;
  }
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

class TemplateParser {
 public:
  TemplateParser(std::string name, std::string text) : name_(std::move(name)), text_(stripDirectiveLines(text)) {}

  Template run() {
    Template t{name_, {}};
    std::vector<Open> stack;
    std::vector<Directive>* target = &t.body;
    std::string pending;
    auto flush = [&] {
      if (pending.empty()) return;
      Directive d;
      d.kind = Directive::Kind::Text;
      d.index = next_++;
      d.text = std::move(pending);
      pending.clear();
      target->push_back(std::move(d));
    };
    std::size_t i = 0;
    while (i < text_.size()) {
      if (text_.compare(i, 4, "<#--") == 0) {
        const std::size_t end = text_.find("-->", i + 4);
        if (end == std::string::npos) fail("unterminated comment");
        i = end + 3;
        continue;
      }
      if (text_.compare(i, 2, "${") == 0) {
        const std::size_t end = text_.find('}', i + 2);
        if (end == std::string::npos) fail("unterminated interpolation");
        flush();
        Directive d;
        d.kind = Directive::Kind::Interp;
        d.index = next_++;
        d.text = trim(text_.substr(i + 2, end - i - 2));
        if (d.text.empty()) fail("empty interpolation");
        target->push_back(std::move(d));
        i = end + 1;
        continue;
      }
      const bool open = text_.compare(i, 2, "<#") == 0;
      const bool close = text_.compare(i, 3, "</#") == 0;
      if (!open && !close) {
        pending += text_[i++];
        continue;
      }
      const std::size_t begin = i + (open ? 2 : 3);
      const std::size_t end = text_.find('>', begin);
      if (end == std::string::npos) fail("unterminated directive");
      const std::string tag = text_.substr(begin, end - begin);
      i = end + 1;
      flush();
      const auto w = words(tag);
      if (w.empty()) fail("empty directive");
      if (close) {
        if (stack.empty() || stack.back().keyword != w[0] || w.size() != 1) fail("unexpected </#" + tag + ">");
        stack.pop_back();
        target = stack.empty() ? &t.body : stack.back().body;
        continue;
      }
      Directive d;
      d.index = next_++;
      if (w[0] == "else") {
        if (w.size() != 1 || stack.empty() || stack.back().keyword != "if" || stack.back().inElse) {
          fail("<#else> outside <#if>");
        }
        stack.back().inElse = true;
        stack.back().body = &stack.back().node->elseBody;
        target = stack.back().body;
        continue;
      }
      if (w[0] == "calc" && w.size() == 2) {
        d.kind = Directive::Kind::Calc;
        d.name = w[1];
        target->push_back(std::move(d));
      } else if (w[0] == "include" && w.size() == 3 && w[1].size() >= 2 && w[1].front() == '"' &&
                 w[1].back() == '"') {
        d.kind = Directive::Kind::Include;
        d.name = w[1].substr(1, w[1].size() - 2);
        d.text = w[2];
        target->push_back(std::move(d));
      } else if (w[0] == "if" && w.size() == 2) {
        d.kind = Directive::Kind::If;
        d.name = w[1];
        target->push_back(std::move(d));
        stack.push_back({"if", &target->back(), &target->back().body, false});
        target = stack.back().body;
      } else if (w[0] == "foreach" && w.size() == 4 && w[2] == "in") {
        d.kind = Directive::Kind::Foreach;
        d.name = w[1];
        d.text = w[3];
        target->push_back(std::move(d));
        stack.push_back({"foreach", &target->back(), &target->back().body, false});
        target = stack.back().body;
      } else {
        fail("malformed directive <#" + tag + ">");
      }
    }
    flush();
    if (!stack.empty()) fail("missing </#" + stack.back().keyword + ">");
    return t;
  }

 private:
  struct Open {
    std::string keyword;
    Directive* node;
    std::vector<Directive>* body;
    bool inElse;
  };

  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw TemplateError("template '" + name_ + "': " + message);
  }

  std::string name_;
  std::string text_;
  std::size_t next_ = 0;
};

bool truthy(const Node& v) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_null()) return false;
  if (v.is_string() || v.is_array() || v.is_object()) return !v.empty();
  return true;
}

}  // namespace

Template parseTemplate(const std::string& name, const std::string& text) {
  return TemplateParser(name, text).run();
}

TemplateSet TemplateSet::load(const std::string& dir) {
  namespace fs = std::filesystem;
  TemplateSet set;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw TemplateError("template directory '" + dir + "' not found");
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".tmpl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    auto name = fs::relative(path, dir).replace_extension().generic_string();
    set.add(parseTemplate(name, text.str()));
  }
  return set;
}

void TemplateSet::add(Template t) {
  auto name = t.name;
  templates_[name] = std::move(t);
}

const Template& TemplateSet::get(const std::string& name) const {
  auto it = templates_.find(name);
  if (it == templates_.end()) throw TemplateError("unknown template '" + name + "'");
  return it->second;
}

void CalculatorRegistry::addShared(Calculator c) { shared_.push_back(std::move(c)); }

void CalculatorRegistry::add(const std::string& backend, Calculator c) { perBackend_[backend].push_back(std::move(c)); }

bool CalculatorRegistry::removeShared(const std::string& name) {
  const auto before = shared_.size();
  std::erase_if(shared_, [&](const Calculator& c) { return c.name == name; });
  return shared_.size() != before;
}

std::vector<std::string> CalculatorRegistry::sharedNames() const {
  std::vector<std::string> names;
  for (const auto& c : shared_) names.push_back(c.name);
  return names;
}

std::map<std::string, Calculator> CalculatorRegistry::view(const std::string& backend) const {
  std::map<std::string, Calculator> out;
  auto put = [&](const Calculator& c) {
    if (!out.emplace(c.name, c).second) {
      throw TemplateError("calculator '" + c.name + "' is defined twice for backend '" + backend + "'");
    }
  };
  for (const auto& c : shared_) put(c);
  if (auto it = perBackend_.find(backend); it != perBackend_.end()) {
    for (const auto& c : it->second) put(c);
  }
  return out;
}

std::string scalarText(const Node& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  if (value.is_null()) return "";
  return value.dump();
}

const Node& RenderContext::current() const {
  const Frame& f = frames_.back();
  return f.loops.empty() ? *f.ast : *f.loops.back().item;
}

const Node& RenderContext::lookup(const std::string& path) const {
  const Frame& f = frames_.back();
  std::vector<std::string> segments;
  std::stringstream in(path);
  for (std::string s; std::getline(in, s, '.');) segments.push_back(s);
  auto unknown = [&]() -> TemplateError {
    return TemplateError("template '" + f.tmpl->name + "': unknown path '" + path + "'");
  };
  if (segments.empty()) throw unknown();
  const Node* node = nullptr;
  for (auto it = f.loops.rbegin(); it != f.loops.rend() && !node; ++it) {
    if (it->variable == segments[0]) node = it->item;
  }
  if (!node && segments[0] == "ast") node = f.ast;
  if (!node && segments[0] == "op") node = &f.op;
  if (!node) throw unknown();
  for (std::size_t i = 1; i < segments.size(); ++i) {
    if (node->is_object()) {
      auto it = node->find(segments[i]);
      if (it == node->end()) throw unknown();
      node = &*it;
    } else if (node->is_array() && !segments[i].empty() &&
               std::all_of(segments[i].begin(), segments[i].end(), [](char c) { return c >= '0' && c <= '9'; })) {
      const auto index = std::stoul(segments[i]);
      if (index >= node->size()) throw unknown();
      node = &(*node)[index];
    } else {
      throw unknown();
    }
  }
  return *node;
}

bool RenderContext::inLoopNotLast() const {
  const Frame& f = frames_.back();
  return !f.loops.empty() && f.loops.back().index + 1 < f.loops.back().size;
}

void RenderContext::fail(const Directive& d, const std::string& message) const {
  throw TemplateError("template '" + frames_.back().tmpl->name + "', directive " + std::to_string(d.index) + ": " +
                      message);
}

Node RenderContext::runCalculator(const std::string& name, const Directive& d) {
  auto it = calculators_.find(name);
  if (it == calculators_.end()) fail(d, "unknown calculator '" + name + "'");
  Node value = it->second.compute(current(), *this);
  frames_.back().op[name] = value;
  return value;
}

std::string RenderContext::render(const std::string& templateName, const Node& node) {
  const Template& t = templates_.get(templateName);
  frames_.push_back({&t, &node, Node::object(), {}});
  std::string out;
  try {
    renderBody(t.body, out);
  } catch (...) {
    frames_.pop_back();
    throw;
  }
  frames_.pop_back();
  return out;
}

void RenderContext::renderBody(const std::vector<Directive>& body, std::string& out) {
  for (const Directive& d : body) {
    switch (d.kind) {
      case Directive::Kind::Text: out += d.text; break;
      case Directive::Kind::Interp: {
        const Node* value = nullptr;
        try {
          value = &lookup(d.text);
        } catch (const TemplateError&) {
          fail(d, "unknown path '" + d.text + "'");
        }
        if (value->is_object() || value->is_array()) fail(d, "path '" + d.text + "' is not a scalar");
        out += scalarText(*value);
        break;
      }
      case Directive::Kind::Calc: runCalculator(d.name, d); break;
      case Directive::Kind::If:
        renderBody(truthy(runCalculator(d.name, d)) ? d.body : d.elseBody, out);
        break;
      case Directive::Kind::Foreach: {
        const Node* coll = nullptr;
        try {
          coll = &lookup(d.text);
        } catch (const TemplateError&) {
          fail(d, "unknown path '" + d.text + "'");
        }
        if (!coll->is_array()) fail(d, "path '" + d.text + "' is not a list");
        for (std::size_t i = 0; i < coll->size(); ++i) {
          frames_.back().loops.push_back({d.name, &(*coll)[i], i, coll->size()});
          renderBody(d.body, out);
          frames_.back().loops.pop_back();
        }
        break;
      }
      case Directive::Kind::Include: {
        const Node* arg = nullptr;
        try {
          arg = &lookup(d.text);
        } catch (const TemplateError&) {
          fail(d, "unknown path '" + d.text + "'");
        }
        try {
          templates_.get(d.name);
        } catch (const TemplateError&) {
          fail(d, "unknown template '" + d.name + "'");
        }
        out += render(d.name, *arg);
        break;
      }
    }
  }
}

}  // namespace maa::codegen
