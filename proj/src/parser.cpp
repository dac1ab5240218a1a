#include "maa/parser.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <set>
#include <sstream>

namespace maa {

const char* spelling(ExprOp op) {
  switch (op) {
    case ExprOp::Or: return "or";
    case ExprOp::And: return "and";
    case ExprOp::Not: return "not";
    case ExprOp::Eq: return "==";
    case ExprOp::Ne: return "!=";
    case ExprOp::Lt: return "<";
    case ExprOp::Le: return "<=";
    case ExprOp::Gt: return ">";
    case ExprOp::Ge: return ">=";
    case ExprOp::Add: return "+";
    case ExprOp::Sub: return "-";
  }
  return "?";
}

namespace {

enum class Tok { Ident, Int, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t number = 0;
  SourcePos pos;
};

const std::set<std::string, std::less<>> kReserved = {
    "enum", "component", "port",  "in",    "out", "instance", "connect", "automaton", "var",
    "state", "initial",  "true",  "false", "and", "or",       "not",     "Boolean",   "Int"};

class Lexer {
 public:
  Lexer(std::string_view text, const std::string& file, std::vector<Diagnostic>& diags)
      : text_(text), file_(file), diags_(diags) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skipTrivia();
      Token t;
      t.pos = here();
      if (at_ >= text_.size()) {
        t.kind = Tok::End;
        out.push_back(std::move(t));
        return out;
      }
      const char c = text_[at_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const std::size_t start = at_;
        while (at_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[at_])) || text_[at_] == '_')) {
          advance();
        }
        t.kind = Tok::Ident;
        t.text = std::string(text_.substr(start, at_ - start));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        const std::size_t start = at_;
        while (at_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[at_]))) advance();
        t.kind = Tok::Int;
        t.text = std::string(text_.substr(start, at_ - start));
        const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
        if (ec != std::errc()) {
          diags_.push_back({Severity::Error, "P004", "integer literal '" + t.text + "' is out of range", t.pos});
          t.number = 0;
        }
      } else if (auto p = punct(); !p.empty()) {
        t.kind = Tok::Punct;
        t.text = p;
        for (std::size_t i = 0; i < p.size(); ++i) advance();
      } else {
        std::string shown(1, c);
        if (static_cast<unsigned char>(c) >= 0x80) {
          // Report a whole UTF-8 sequence once.
          std::size_t len = 1;
          while (at_ + len < text_.size() && (static_cast<unsigned char>(text_[at_ + len]) & 0xC0) == 0x80) ++len;
          shown = std::string(text_.substr(at_, len));
          for (std::size_t i = 1; i < len; ++i) advance();
        }
        diags_.push_back({Severity::Error, "P001", "unknown character '" + shown + "'", t.pos});
        advance();
        continue;
      }
      out.push_back(std::move(t));
    }
  }

 private:
  SourcePos here() const { return {file_, line_, column_}; }

  void advance() {
    if (text_[at_] == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(text_[at_]) & 0xC0) != 0x80) {
      ++column_;
    }
    ++at_;
  }

  void skipTrivia() {
    while (at_ < text_.size()) {
      const char c = text_[at_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (text_.substr(at_, 2) == "//") {
        while (at_ < text_.size() && text_[at_] != '\n') advance();
      } else if (text_.substr(at_, 2) == "/*") {
        const SourcePos start = here();
        advance();
        advance();
        while (at_ < text_.size() && text_.substr(at_, 2) != "*/") advance();
        if (at_ >= text_.size()) {
          diags_.push_back({Severity::Error, "P003", "unterminated block comment", start});
          return;
        }
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  std::string punct() const {
    static const char* const kTwo[] = {"->", "..", "==", "!=", "<=", ">="};
    for (const char* p : kTwo) {
      if (text_.substr(at_, 2) == p) return p;
    }
    static const std::string_view kOne = "{}[](),;:./=<>+-";
    if (kOne.find(text_[at_]) != std::string_view::npos) return std::string(1, text_[at_]);
    return {};
  }

  std::string_view text_;
  std::string file_;
  std::vector<Diagnostic>& diags_;
  std::size_t at_ = 0;
  int line_ = 1;
  int column_ = 1;
};

struct SyntaxFailure {};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Int: return "integer '" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diags) : toks_(std::move(tokens)), diags_(diags) {}

  syntax::Model model() {
    syntax::Model m;
    while (!atEnd()) {
      const std::size_t before = at_;
      try {
        if (is("enum")) {
          m.declarations.emplace_back(enumDecl());
        } else if (is("component")) {
          m.declarations.emplace_back(component());
        } else {
          fail("'enum' or 'component'");
        }
      } catch (const SyntaxFailure&) {
        // Skip to the next top-level keyword.
        if (at_ == before) next();
        while (!atEnd() && !((is("enum") || is("component")) && depth_ == 0)) next();
        depth_ = 0;
      }
    }
    return m;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(at_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  bool atEnd() const { return peek().kind == Tok::End; }
  bool is(std::string_view text) const {
    return (peek().kind == Tok::Punct || peek().kind == Tok::Ident) && peek().text == text;
  }

  Token next() {
    Token t = peek();
    if (t.kind != Tok::End) ++at_;
    if (t.kind == Tok::Punct && t.text == "{") ++depth_;
    if (t.kind == Tok::Punct && t.text == "}") --depth_;
    return t;
  }

  [[noreturn]] void fail(const std::string& expected) {
    diags_.push_back({Severity::Error, "P002", "expected " + expected + ", found " + describe(peek()), peek().pos});
    throw SyntaxFailure{};
  }

  Token expect(std::string_view text) {
    if (!is(text)) fail("'" + std::string(text) + "'");
    return next();
  }

  bool accept(std::string_view text) {
    if (!is(text)) return false;
    next();
    return true;
  }

  // Statement terminator. A missing `;` right before `}` or a keyword that
  // starts the next statement is reported without losing the statement.
  void terminator() {
    if (accept(";")) return;
    diags_.push_back({Severity::Error, "P002", "expected ';', found " + describe(peek()), peek().pos});
    if (is("}") || is("port") || is("instance") || is("connect") || is("automaton") || is("var") || is("state") ||
        atEnd()) {
      return;
    }
    throw SyntaxFailure{};
  }

  std::string ident(const char* what = "identifier") {
    if (peek().kind != Tok::Ident || kReserved.count(peek().text) != 0) fail(what);
    return next().text;
  }

  std::int64_t integer() {
    const bool negative = accept("-");
    if (peek().kind != Tok::Int) fail("integer");
    const std::int64_t v = next().number;
    return negative ? -v : v;
  }

  // Resynchronize after a failed statement: stop after `;` or before the `}`
  // that closes the enclosing block.
  void sync(int depth) {
    while (!atEnd()) {
      if (depth_ == depth && is(";")) {
        next();
        return;
      }
      if (depth_ == depth && is("}")) return;
      next();
    }
  }

  syntax::Enum enumDecl() {
    syntax::Enum e;
    e.pos.value = expect("enum").pos;
    e.name = ident("enumeration name");
    expect("{");
    e.values.push_back(ident("enumeration value"));
    while (accept(",")) e.values.push_back(ident("enumeration value"));
    expect("}");
    return e;
  }

  syntax::Component component() {
    syntax::Component c;
    c.pos.value = expect("component").pos;
    c.name = ident("component name");
    expect("{");
    const int depth = depth_;
    while (!is("}") && !atEnd()) {
      const std::size_t before = at_;
      try {
        if (is("port")) {
          c.elements.emplace_back(portDecl());
        } else if (is("instance")) {
          c.elements.emplace_back(instance());
        } else if (is("connect")) {
          c.elements.emplace_back(connect());
        } else if (is("automaton")) {
          c.elements.emplace_back(automaton());
        } else {
          fail("'port', 'instance', 'connect', 'automaton' or '}'");
        }
      } catch (const SyntaxFailure&) {
        if (at_ == before && !is("}")) next();
        sync(depth);
      }
    }
    expect("}");
    return c;
  }

  syntax::TypeRef typeRef() {
    syntax::TypeRef t;
    t.pos.value = peek().pos;
    if (accept("Boolean")) {
      t.kind = syntax::TypeRef::Kind::Boolean;
    } else if (accept("Int")) {
      t.kind = syntax::TypeRef::Kind::Int;
      expect("(");
      t.lo = integer();
      expect("..");
      t.hi = integer();
      expect(")");
    } else {
      t.kind = syntax::TypeRef::Kind::Named;
      t.name = ident("type");
    }
    return t;
  }

  syntax::PortDecl portDecl() {
    syntax::PortDecl d;
    d.pos.value = expect("port").pos;
    do {
      syntax::PortItem item;
      item.pos.value = peek().pos;
      if (accept("in")) {
        item.isInput = true;
      } else if (accept("out")) {
        item.isInput = false;
      } else {
        fail("'in' or 'out'");
      }
      item.type = typeRef();
      item.name = ident("port name");
      d.items.push_back(std::move(item));
    } while (accept(","));
    terminator();
    return d;
  }

  syntax::Instance instance() {
    syntax::Instance i;
    i.pos.value = expect("instance").pos;
    i.componentType = ident("component type");
    i.name = ident("instance name");
    terminator();
    return i;
  }

  syntax::PortRef portRef() {
    syntax::PortRef r;
    r.pos.value = peek().pos;
    std::string first = ident("port reference");
    if (accept(".")) {
      r.instance = std::move(first);
      r.port = ident("port name");
    } else {
      r.port = std::move(first);
    }
    return r;
  }

  syntax::Connect connect() {
    syntax::Connect c;
    c.pos.value = expect("connect").pos;
    c.source = portRef();
    expect("->");
    c.targets.push_back(portRef());
    while (accept(",")) c.targets.push_back(portRef());
    terminator();
    return c;
  }

  syntax::Literal literal() {
    syntax::Literal l;
    l.pos.value = peek().pos;
    if (accept("true")) {
      l.value = true;
    } else if (accept("false")) {
      l.value = false;
    } else if (peek().kind == Tok::Int || is("-")) {
      l.value = integer();
    } else {
      l.value = ident("literal");
    }
    return l;
  }

  syntax::Pair pair() {
    syntax::Pair p;
    p.pos.value = peek().pos;
    p.name = ident("port name");
    expect(":");
    p.value = literal();
    return p;
  }

  syntax::Automaton automaton() {
    syntax::Automaton a;
    a.pos.value = expect("automaton").pos;
    expect("{");
    const int depth = depth_;
    bool seenStates = false;
    while (!is("}") && !atEnd()) {
      const std::size_t before = at_;
      try {
        if (is("var")) {
          if (seenStates) fail("transition");
          a.variables.push_back(varDecl());
        } else if (is("state")) {
          if (seenStates) fail("transition");
          seenStates = true;
          stateSection(a);
        } else if (!seenStates) {
          fail("'var' or 'state'");
        } else {
          a.transitions.push_back(transition());
        }
      } catch (const SyntaxFailure&) {
        if (at_ == before && !is("}")) next();
        sync(depth);
      }
    }
    if (!seenStates && is("}")) {
      diags_.push_back({Severity::Error, "P002", "expected 'state', found " + describe(peek()), peek().pos});
    }
    expect("}");
    return a;
  }

  syntax::VarDecl varDecl() {
    syntax::VarDecl v;
    v.pos.value = expect("var").pos;
    v.type = typeRef();
    v.name = ident("variable name");
    expect("=");
    v.initial = literal();
    terminator();
    return v;
  }

  void stateSection(syntax::Automaton& a) {
    expect("state");
    do {
      syntax::StateItem s;
      s.pos.value = peek().pos;
      s.name = ident("state name");
      if (accept("[")) {
        expect("initial");
        s.initial = true;
        if (accept("{")) {
          s.initialOutputs.push_back(pair());
          while (accept(",")) s.initialOutputs.push_back(pair());
          expect("}");
        }
        expect("]");
      }
      a.states.push_back(std::move(s));
    } while (accept(","));
    terminator();
  }

  syntax::Transition transition() {
    syntax::Transition t;
    t.pos.value = peek().pos;
    t.source = ident("state name");
    expect("->");
    t.target = ident("state name");
    if (accept("{")) {
      t.trigger.push_back(pair());
      while (accept(",")) t.trigger.push_back(pair());
      expect("}");
    }
    if (accept("[")) {
      t.guard = expr();
      expect("]");
    }
    if (accept("/")) {
      expect("{");
      t.actions.push_back(action());
      while (accept(",")) t.actions.push_back(action());
      expect("}");
    }
    terminator();
    return t;
  }

  syntax::Action action() {
    syntax::Action a;
    a.pos.value = peek().pos;
    a.target = ident("port or variable name");
    if (accept("=")) {
      a.isAssignment = true;
    } else if (accept(":")) {
      a.isAssignment = false;
    } else {
      fail("':' or '='");
    }
    a.value = expr();
    return a;
  }

  static syntax::Expr node(ExprOp op, SourcePos pos, std::vector<syntax::Expr> args) {
    syntax::Expr e;
    e.kind = args.size() == 1 ? syntax::Expr::Kind::Unary : syntax::Expr::Kind::Binary;
    e.op = op;
    e.args = std::move(args);
    e.pos.value = std::move(pos);
    return e;
  }

  syntax::Expr expr() {
    syntax::Expr lhs = conjunction();
    while (is("or")) {
      const SourcePos pos = next().pos;
      lhs = node(ExprOp::Or, pos, {std::move(lhs), conjunction()});
    }
    return lhs;
  }

  syntax::Expr conjunction() {
    syntax::Expr lhs = negation();
    while (is("and")) {
      const SourcePos pos = next().pos;
      lhs = node(ExprOp::And, pos, {std::move(lhs), negation()});
    }
    return lhs;
  }

  syntax::Expr negation() {
    if (is("not")) {
      const SourcePos pos = next().pos;
      return node(ExprOp::Not, pos, {negation()});
    }
    return comparison();
  }

  syntax::Expr comparison() {
    syntax::Expr lhs = additive();
    static const std::pair<const char*, ExprOp> kOps[] = {{"==", ExprOp::Eq}, {"!=", ExprOp::Ne},
                                                           {"<=", ExprOp::Le}, {">=", ExprOp::Ge},
                                                           {"<", ExprOp::Lt},  {">", ExprOp::Gt}};
    for (const auto& [text, op] : kOps) {
      if (is(text)) {
        const SourcePos pos = next().pos;
        return node(op, pos, {std::move(lhs), additive()});
      }
    }
    return lhs;
  }

  syntax::Expr additive() {
    syntax::Expr lhs = primary();
    while (is("+") || is("-")) {
      const Token op = next();
      lhs = node(op.text == "+" ? ExprOp::Add : ExprOp::Sub, op.pos, {std::move(lhs), primary()});
    }
    return lhs;
  }

  syntax::Expr primary() {
    syntax::Expr e;
    e.pos.value = peek().pos;
    if (accept("(")) {
      e = expr();
      expect(")");
      return e;
    }
    if (is("true") || is("false") || is("-") || peek().kind == Tok::Int) {
      e.kind = syntax::Expr::Kind::Literal;
      e.literal = literal().value;
      return e;
    }
    e.kind = syntax::Expr::Kind::Name;
    e.name = ident("expression");
    return e;
  }

  std::vector<Token> toks_;
  std::vector<Diagnostic>& diags_;
  std::size_t at_ = 0;
  int depth_ = 0;
};

// Printing.

int precedence(const syntax::Expr& e) {
  if (e.kind == syntax::Expr::Kind::Literal || e.kind == syntax::Expr::Kind::Name) return 6;
  switch (e.op) {
    case ExprOp::Or: return 1;
    case ExprOp::And: return 2;
    case ExprOp::Not: return 3;
    case ExprOp::Add:
    case ExprOp::Sub: return 5;
    default: return 4;
  }
}

void printExpr(std::ostream& out, const syntax::Expr& e, int minPrecedence) {
  const int p = precedence(e);
  const bool parens = p < minPrecedence;
  if (parens) out << '(';
  switch (e.kind) {
    case syntax::Expr::Kind::Literal: out << toString(e.literal); break;
    case syntax::Expr::Kind::Name: out << e.name; break;
    case syntax::Expr::Kind::Unary:
      out << "not ";
      printExpr(out, e.args[0], 3);
      break;
    case syntax::Expr::Kind::Binary: {
      // Left-associative chains keep their shape; comparisons do not chain.
      const bool cmp = p == 4;
      printExpr(out, e.args[0], cmp ? 5 : p);
      out << ' ' << spelling(e.op) << ' ';
      printExpr(out, e.args[1], p + 1);
      break;
    }
  }
  if (parens) out << ')';
}

void printType(std::ostream& out, const syntax::TypeRef& t) {
  switch (t.kind) {
    case syntax::TypeRef::Kind::Boolean: out << "Boolean"; break;
    case syntax::TypeRef::Kind::Int: out << "Int(" << t.lo << ".." << t.hi << ')'; break;
    case syntax::TypeRef::Kind::Named: out << t.name; break;
  }
}

void printPairs(std::ostream& out, const std::vector<syntax::Pair>& pairs) {
  out << '{';
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i != 0) out << ", ";
    out << pairs[i].name << ':' << toString(pairs[i].value.value);
  }
  out << '}';
}

void printRef(std::ostream& out, const syntax::PortRef& r) {
  if (r.instance) out << *r.instance << '.';
  out << r.port;
}

struct ElementPrinter {
  std::ostream& out;

  void operator()(const syntax::PortDecl& d) const {
    out << "  port ";
    for (std::size_t i = 0; i < d.items.size(); ++i) {
      if (i != 0) out << ", ";
      out << (d.items[i].isInput ? "in " : "out ");
      printType(out, d.items[i].type);
      out << ' ' << d.items[i].name;
    }
    out << ";\n";
  }

  void operator()(const syntax::Instance& i) const { out << "  instance " << i.componentType << ' ' << i.name << ";\n"; }

  void operator()(const syntax::Connect& c) const {
    out << "  connect ";
    printRef(out, c.source);
    out << " -> ";
    for (std::size_t i = 0; i < c.targets.size(); ++i) {
      if (i != 0) out << ", ";
      printRef(out, c.targets[i]);
    }
    out << ";\n";
  }

  void operator()(const syntax::Automaton& a) const {
    out << "  automaton {\n";
    for (const auto& v : a.variables) {
      out << "    var ";
      printType(out, v.type);
      out << ' ' << v.name << " = " << toString(v.initial.value) << ";\n";
    }
    if (!a.states.empty()) {
      out << "    state ";
      for (std::size_t i = 0; i < a.states.size(); ++i) {
        const auto& s = a.states[i];
        if (i != 0) out << ", ";
        out << s.name;
        if (s.initial) {
          out << " [initial";
          if (!s.initialOutputs.empty()) {
            out << ' ';
            printPairs(out, s.initialOutputs);
          }
          out << ']';
        }
      }
      out << ";\n";
    }
    for (const auto& t : a.transitions) {
      out << "    " << t.source << " -> " << t.target;
      if (!t.trigger.empty()) {
        out << ' ';
        printPairs(out, t.trigger);
      }
      if (t.guard) {
        out << " [";
        printExpr(out, *t.guard, 0);
        out << ']';
      }
      if (!t.actions.empty()) {
        out << " / {";
        for (std::size_t i = 0; i < t.actions.size(); ++i) {
          if (i != 0) out << ", ";
          out << t.actions[i].target << (t.actions[i].isAssignment ? " = " : ":");
          printExpr(out, t.actions[i].value, 0);
        }
        out << '}';
      }
      out << ";\n";
    }
    out << "  }\n";
  }
};

}  // namespace

ParseResult parse(std::string_view text, const std::string& file) {
  ParseResult result;
  Lexer lexer(text, file, result.diagnostics);
  Parser parser(lexer.run(), result.diagnostics);
  result.tree = parser.model();
  sortByPosition(result.diagnostics);
  return result;
}

std::string prettyPrint(const syntax::Expr& expr) {
  std::ostringstream out;
  printExpr(out, expr, 0);
  return out.str();
}

std::string prettyPrint(const syntax::Model& tree) {
  std::ostringstream out;
  bool first = true;
  for (const auto& decl : tree.declarations) {
    if (!first) out << '\n';
    first = false;
    if (const auto* e = std::get_if<syntax::Enum>(&decl)) {
      out << "enum " << e->name << " { ";
      for (std::size_t i = 0; i < e->values.size(); ++i) {
        if (i != 0) out << ", ";
        out << e->values[i];
      }
      out << " }\n";
    } else {
      const auto& c = std::get<syntax::Component>(decl);
      out << "component " << c.name << " {\n";
      for (const auto& element : c.elements) std::visit(ElementPrinter{out}, element);
      out << "}\n";
    }
  }
  return out.str();
}

syntax::Model merge(const std::vector<syntax::Model>& trees) {
  syntax::Model merged;
  for (const auto& t : trees) {
    merged.declarations.insert(merged.declarations.end(), t.declarations.begin(), t.declarations.end());
  }
  return merged;
}

}  // namespace maa
