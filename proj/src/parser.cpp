#include "tickmc/parser.hpp"

#include <algorithm>
#include <set>

#include "tickmc/lexer.hpp"

namespace tickmc {

namespace {

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "domain", "var",      "const",    "horizon",  "machine", "initial",
      "state",  "from",     "when",     "goto",     "or",      "set",
      "true",   "and",      "not",      "probability", "count", "ratio",
      "config", "import",   "prob",     "property", "of",      "with",
      "constants", "constant", "Exists", "Finally",  "deadlock", "ticks",
      "t",      "Prob",
  };
  return words;
}

class Parser {
 public:
  Parser(std::string_view source, const std::string& filename, DiagnosticBag& bag)
      : bag_(bag) {
    tokens_ = tokenize(source, filename, bag);
  }

 protected:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    if (i >= tokens_.size()) i = tokens_.size() - 1;
    return tokens_[i];
  }
  const Token& advance() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool at(TokenKind kind) const { return peek().kind == kind; }
  bool at_word(const char* word) const {
    return peek().kind == TokenKind::identifier && peek().text == word;
  }
  bool at_end() const { return at(TokenKind::end_of_file); }

  bool accept(TokenKind kind) {
    if (!at(kind)) return false;
    advance();
    return true;
  }
  bool accept_word(const char* word) {
    if (!at_word(word)) return false;
    advance();
    return true;
  }

  // Reports "expected X, found Y" and leaves the cursor in place.
  void expected(const std::string& what) {
    const Token& t = peek();
    std::string found =
        t.kind == TokenKind::identifier || t.kind == TokenKind::number
            ? "'" + t.text + "'"
            : token_kind_name(t.kind);
    bag_.error("expected " + what + ", found " + found, t.span);
  }

  bool expect(TokenKind kind, const std::string& what) {
    if (accept(kind)) return true;
    expected(what);
    return false;
  }
  bool expect_word(const char* word) {
    if (accept_word(word)) return true;
    expected(std::string("'") + word + "'");
    return false;
  }

  // A usable name: an identifier that is not a reserved word.
  std::optional<Token> expect_name(const std::string& what) {
    if (at(TokenKind::identifier)) {
      if (reserved_words().count(peek().text)) {
        bag_.error("reserved word '" + peek().text + "' cannot be used as " + what,
                   peek().span);
        return std::nullopt;  // cursor stays put; caller recovers
      }
      return advance();
    }
    expected(what);
    return std::nullopt;
  }

  std::optional<Rational> expect_number() {
    if (!at(TokenKind::number)) {
      expected("number");
      return std::nullopt;
    }
    Token t = advance();
    auto r = Rational::parse_decimal(t.text);
    if (!r) bag_.error("number literal '" + t.text + "' is malformed or out of range", t.span);
    return r;
  }

  // Panic-mode recovery: skip to just past the next ';' or to a '}' /
  // top-level keyword / end of file.
  void sync_statement() {
    while (!at_end()) {
      if (accept(TokenKind::semicolon)) return;
      if (at(TokenKind::rbrace)) return;
      if (at_word("machine") || at_word("domain") || at_word("var") || at_word("const") ||
          at_word("horizon") || at_word("config") || at_word("prob") || at_word("import")) {
        return;
      }
      advance();
    }
  }

  DiagnosticBag& bag_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Model files (.psm)

class ModelParser : public Parser {
 public:
  using Parser::Parser;

  Network run() {
    Network net;
    while (!at_end()) {
      if (at_word("domain")) {
        parse_domain(net);
      } else if (at_word("var")) {
        parse_var(net);
      } else if (at_word("const")) {
        parse_const(net);
      } else if (at_word("horizon")) {
        parse_horizon(net);
      } else if (at_word("machine")) {
        parse_machine(net);
      } else {
        expected("a declaration (domain, const, var, horizon or machine)");
        advance();
        sync_statement();
      }
    }
    for (auto& m : net.machines) m.writes = derive_writes(m);
    return net;
  }

 private:
  void parse_domain(Network& net) {
    Token kw = advance();
    auto name = expect_name("domain name");
    if (!name) return sync_statement();
    EnumDomain d;
    d.name = name->text;
    d.span = kw.span;
    if (!expect(TokenKind::lbrace, "'{'")) return sync_statement();
    do {
      auto value = expect_name("domain value");
      if (!value) return sync_statement();
      d.values.push_back(value->text);
    } while (accept(TokenKind::comma));
    if (!expect(TokenKind::rbrace, "'}'")) return sync_statement();
    net.domains.push_back(std::move(d));
  }

  void parse_var(Network& net) {
    Token kw = advance();
    auto name = expect_name("shared variable name");
    if (!name) return sync_statement();
    SharedVar v;
    v.name = name->text;
    v.span = kw.span;
    if (!expect(TokenKind::colon, "':'")) return sync_statement();
    auto domain = expect_name("domain name");
    if (!domain) return sync_statement();
    v.domain = domain->text;
    if (!expect(TokenKind::eq, "'='")) return sync_statement();
    auto initial = expect_name("initial value");
    if (!initial) return sync_statement();
    v.initial = initial->text;
    expect(TokenKind::semicolon, "';'");
    net.shared_vars.push_back(std::move(v));
  }

  void parse_const(Network& net) {
    Token kw = advance();
    auto name = expect_name("constant name");
    if (!name) return sync_statement();
    ConstantDef c;
    c.name = name->text;
    c.span = kw.span;
    if (!expect(TokenKind::colon, "':'")) return sync_statement();
    if (accept_word("probability")) {
      c.kind = ConstKind::probability;
    } else if (accept_word("count")) {
      c.kind = ConstKind::count;
    } else if (accept_word("ratio")) {
      c.kind = ConstKind::ratio;
    } else {
      expected("'probability', 'count' or 'ratio'");
      return sync_statement();
    }
    if (accept(TokenKind::eq)) {
      auto value = expect_number();
      if (!value) return sync_statement();
      c.value = *value;
    }
    expect(TokenKind::semicolon, "';'");
    net.constants.push_back(std::move(c));
  }

  void parse_horizon(Network& net) {
    Token kw = advance();
    auto name = expect_name("horizon constant name");
    if (!name) return sync_statement();
    if (!net.tick_horizon.empty()) {
      bag_.error("duplicate horizon declaration", kw.span);
    } else {
      net.tick_horizon = name->text;
    }
    expect(TokenKind::semicolon, "';'");
  }

  void parse_machine(Network& net) {
    Token kw = advance();
    auto name = expect_name("machine name");
    if (!name) return sync_statement();
    MachineDef m;
    m.name = name->text;
    m.span = kw.span;
    if (!expect(TokenKind::lbrace, "'{'")) return sync_statement();
    bool saw_initial = false;
    while (!at(TokenKind::rbrace) && !at_end()) {
      if (at_word("initial")) {
        Token ikw = advance();
        auto s = expect_name("initial state name");
        if (!s) {
          sync_statement();
          continue;
        }
        if (saw_initial) {
          bag_.error("duplicate initial declaration in machine '" + m.name + "'", ikw.span);
        } else {
          m.initial = s->text;
          saw_initial = true;
        }
        expect(TokenKind::semicolon, "';'");
      } else if (at_word("state")) {
        advance();
        do {
          auto s = expect_name("state name");
          if (!s) {
            sync_statement();
            break;
          }
          m.states.push_back(s->text);
        } while (accept(TokenKind::comma));
        accept(TokenKind::semicolon);
      } else if (at_word("from")) {
        parse_transition(m);
      } else {
        expected("'initial', 'state', 'from' or '}'");
        advance();
        sync_statement();
      }
    }
    expect(TokenKind::rbrace, "'}'");
    if (!saw_initial) {
      bag_.error("machine '" + m.name + "' declares no initial state", m.span);
    }
    net.machines.push_back(std::move(m));
  }

  void parse_transition(MachineDef& m) {
    Token kw = advance();
    auto source = expect_name("source state name");
    if (!source) return sync_statement();
    Transition t;
    t.source = source->text;
    t.span = kw.span;
    if (accept_word("when")) {
      auto guard = parse_guard();
      if (!guard) return sync_statement();
      t.guard = guard;
    } else {
      t.guard = GuardExpr::truth(kw.span);
    }
    if (!expect_word("goto")) return sync_statement();
    do {
      auto branch = parse_branch();
      if (!branch) return sync_statement();
      t.branches.push_back(std::move(*branch));
    } while (accept_word("or"));
    expect(TokenKind::semicolon, "';'");
    m.transitions.push_back(std::move(t));
  }

  std::optional<Branch> parse_branch() {
    Branch b;
    b.span = peek().span;
    if (!expect(TokenKind::lbracket, "'['")) return std::nullopt;
    auto weight = parse_prob_expr();
    if (!weight) return std::nullopt;
    b.weight = weight;
    if (!expect(TokenKind::rbracket, "']'")) return std::nullopt;
    auto target = expect_name("target state name");
    if (!target) return std::nullopt;
    b.target = target->text;
    if (accept_word("set")) {
      do {
        auto var = expect_name("shared variable name");
        if (!var) return std::nullopt;
        if (!expect(TokenKind::assign, "':='")) return std::nullopt;
        auto value = expect_name("value name");
        if (!value) return std::nullopt;
        b.updates.push_back({var->text, value->text, var->span});
      } while (accept(TokenKind::comma));
    }
    return b;
  }

  // guard := andChain ("or" andChain)*, where "or" binds looser than "and".
  GuardExpr::Ptr parse_guard() {
    auto lhs = parse_guard_and();
    if (!lhs) return nullptr;
    while (at_word("or")) {
      // Branch separators also use "or": a guard ends before "goto", so only
      // treat "or" as disjunction while we are still inside the guard.
      Token op = advance();
      auto rhs = parse_guard_and();
      if (!rhs) return nullptr;
      lhs = GuardExpr::binary(GuardExpr::Op::disj, lhs, rhs, op.span);
    }
    return lhs;
  }

  GuardExpr::Ptr parse_guard_and() {
    auto lhs = parse_guard_not();
    if (!lhs) return nullptr;
    while (at_word("and")) {
      Token op = advance();
      auto rhs = parse_guard_not();
      if (!rhs) return nullptr;
      lhs = GuardExpr::binary(GuardExpr::Op::conj, lhs, rhs, op.span);
    }
    return lhs;
  }

  GuardExpr::Ptr parse_guard_not() {
    if (at_word("not")) {
      Token op = advance();
      auto inner = parse_guard_not();
      if (!inner) return nullptr;
      return GuardExpr::negate(inner, op.span);
    }
    return parse_guard_primary();
  }

  GuardExpr::Ptr parse_guard_primary() {
    if (at_word("true")) {
      Token t = advance();
      return GuardExpr::truth(t.span);
    }
    if (accept(TokenKind::lparen)) {
      auto inner = parse_guard();
      if (!inner) return nullptr;
      if (!expect(TokenKind::rparen, "')'")) return nullptr;
      return inner;
    }
    auto var = expect_name("shared variable name");
    if (!var) return nullptr;
    GuardExpr::Op op;
    if (accept(TokenKind::eqeq)) {
      op = GuardExpr::Op::eq;
    } else if (accept(TokenKind::neq)) {
      op = GuardExpr::Op::ne;
    } else {
      expected("'==' or '!='");
      return nullptr;
    }
    auto value = expect_name("value name");
    if (!value) return nullptr;
    return GuardExpr::atom(op, var->text, value->text, var->span);
  }

  ProbExpr::Ptr parse_prob_expr() {
    auto lhs = parse_prob_mul();
    if (!lhs) return nullptr;
    while (at(TokenKind::plus) || at(TokenKind::minus)) {
      Token op = advance();
      auto rhs = parse_prob_mul();
      if (!rhs) return nullptr;
      lhs = ProbExpr::binary(
          op.kind == TokenKind::plus ? ProbExpr::Op::add : ProbExpr::Op::sub, lhs, rhs,
          op.span);
    }
    return lhs;
  }

  ProbExpr::Ptr parse_prob_mul() {
    auto lhs = parse_prob_primary();
    if (!lhs) return nullptr;
    while (at(TokenKind::star) || at(TokenKind::slash)) {
      Token op = advance();
      auto rhs = parse_prob_primary();
      if (!rhs) return nullptr;
      lhs = ProbExpr::binary(
          op.kind == TokenKind::star ? ProbExpr::Op::mul : ProbExpr::Op::div, lhs, rhs,
          op.span);
    }
    return lhs;
  }

  ProbExpr::Ptr parse_prob_primary() {
    if (at(TokenKind::number)) {
      Token t = peek();
      auto value = expect_number();
      if (!value) return nullptr;
      return ProbExpr::lit(*value, t.span);
    }
    if (accept(TokenKind::lparen)) {
      auto inner = parse_prob_expr();
      if (!inner) return nullptr;
      if (!expect(TokenKind::rparen, "')'")) return nullptr;
      return inner;
    }
    auto name = expect_name("constant name or number");
    if (!name) return nullptr;
    return ProbExpr::cref(name->text, name->span);
  }
};

// ---------------------------------------------------------------------------
// Property files (.pprop)

class PropertyParser : public Parser {
 public:
  using Parser::Parser;

  PropertyFile run() {
    PropertyFile file;
    std::set<std::string> ids;
    while (!at_end()) {
      if (at_word("import")) {
        parse_import(file);
      } else if (at_word("prob")) {
        parse_property(file, ids);
      } else {
        expected("'import' or 'prob property'");
        advance();
        sync_statement();
      }
    }
    return file;
  }

 private:
  void parse_import(PropertyFile& file) {
    advance();
    auto name = expect_name("config module name");
    if (!name) return sync_statement();
    if (!expect(TokenKind::coloncolon, "'::'")) return sync_statement();
    if (!expect(TokenKind::star, "'*'")) return sync_statement();
    file.imports.push_back(name->text);
  }

  void parse_property(PropertyFile& file, std::set<std::string>& ids) {
    Token kw = advance();
    if (!expect_word("property")) return sync_statement();
    auto id = expect_name("property identifier");
    if (!id) return sync_statement();
    Query q;
    q.id = id->text;
    q.span = kw.span;
    if (!expect(TokenKind::colon, "':'")) return sync_statement();

    if (accept_word("not")) {
      // not Exists [ Finally deadlock ]
      if (!expect_word("Exists")) return sync_statement();
      if (!expect(TokenKind::lbracket, "'['")) return sync_statement();
      if (!expect_word("Finally")) return sync_statement();
      if (!expect_word("deadlock")) return sync_statement();
      if (!expect(TokenKind::rbracket, "']'")) return sync_statement();
      q.kind = QueryKind::deadlock_freedom;
    } else {
      // Prob =? of [ Finally pred ]
      if (!expect_word("Prob")) return sync_statement();
      if (!expect(TokenKind::prob_query, "'=?'")) return sync_statement();
      if (!expect_word("of")) return sync_statement();
      if (!expect(TokenKind::lbracket, "'['")) return sync_statement();
      if (!expect_word("Finally")) return sync_statement();
      q.kind = QueryKind::probability;
      if (!parse_predicate(q)) return sync_statement();
      if (!expect(TokenKind::rbracket, "']'")) return sync_statement();
    }

    if (!expect_word("with")) return sync_statement();
    if (!accept_word("constants") && !accept_word("constant")) {
      expected("'constants'");
      return sync_statement();
    }
    auto config = expect_name("config name");
    if (!config) return sync_statement();
    q.config = config->text;

    if (!ids.insert(q.id).second) {
      bag_.error("duplicate property '" + q.id + "'", q.span);
      return;
    }
    file.queries.push_back(std::move(q));
  }

  bool parse_predicate(Query& q) {
    bool saw_ticks = false;
    do {
      if (at_word("ticks")) {
        Token tk = advance();
        if (saw_ticks) {
          bag_.error("predicate constrains 'ticks' more than once", tk.span);
          return false;
        }
        saw_ticks = true;
        TickMode mode;
        if (accept(TokenKind::eqeq)) {
          mode = TickMode::exact;
        } else if (accept(TokenKind::le)) {
          mode = TickMode::cumulative;
        } else {
          expected("'==' or '<='");
          return false;
        }
        q.tick_mode = mode;
        if (at_word("t")) {
          advance();
          q.symbolic_t = true;
        } else {
          auto n = expect_number();
          if (!n) return false;
          if (!n->is_integer() || n->num < 0) {
            bag_.error("tick bound must be a non-negative integer", tk.span);
            return false;
          }
          q.tick_value = static_cast<int>(n->num);
        }
      } else {
        auto var = expect_name("shared variable name or 'ticks'");
        if (!var) return false;
        PredAtom atom;
        atom.var = var->text;
        if (accept(TokenKind::eqeq)) {
          atom.negated = false;
        } else if (accept(TokenKind::neq)) {
          atom.negated = true;
        } else {
          expected("'==' or '!='");
          return false;
        }
        auto value = expect_name("value name");
        if (!value) return false;
        atom.value = value->text;
        q.predicate.push_back(std::move(atom));
      }
    } while (accept(TokenKind::pred_and));
    return true;
  }
};

// ---------------------------------------------------------------------------
// Config files (.pcfg)

class ConfigParser : public Parser {
 public:
  using Parser::Parser;

  std::vector<ScenarioConfig> run() {
    std::vector<ScenarioConfig> configs;
    std::set<std::string> names;
    while (!at_end()) {
      if (!at_word("config")) {
        expected("'config'");
        advance();
        sync_statement();
        continue;
      }
      Token kw = advance();
      auto name = expect_name("config name");
      if (!name) {
        sync_statement();
        continue;
      }
      ScenarioConfig cfg;
      cfg.name = name->text;
      if (!expect(TokenKind::lbrace, "'{'")) {
        sync_statement();
        continue;
      }
      std::set<std::string> bound;
      while (!at(TokenKind::rbrace) && !at_end()) {
        auto cname = expect_name("constant name");
        if (!cname) {
          sync_statement();
          continue;
        }
        if (!expect(TokenKind::eq, "'='")) {
          sync_statement();
          continue;
        }
        auto value = expect_number();
        if (!value) {
          sync_statement();
          continue;
        }
        expect(TokenKind::semicolon, "';'");
        if (!bound.insert(cname->text).second) {
          bag_.error("config '" + cfg.name + "' binds constant '" + cname->text +
                         "' more than once",
                     cname->span);
          continue;
        }
        cfg.bindings.emplace_back(cname->text, *value);
      }
      expect(TokenKind::rbrace, "'}'");
      if (!names.insert(cfg.name).second) {
        bag_.error("duplicate config '" + cfg.name + "'", kw.span);
        continue;
      }
      std::sort(cfg.bindings.begin(), cfg.bindings.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      configs.push_back(std::move(cfg));
    }
    return configs;
  }
};

}  // namespace

ModelParse parse_model(std::string_view source, const std::string& filename) {
  ModelParse result;
  ModelParser parser(source, filename, result.diagnostics);
  result.network = parser.run();
  return result;
}

PropertyParse parse_properties(std::string_view source, const std::string& filename) {
  PropertyParse result;
  PropertyParser parser(source, filename, result.diagnostics);
  result.properties = parser.run();
  return result;
}

ConfigParse parse_config(std::string_view source, const std::string& filename) {
  ConfigParse result;
  ConfigParser parser(source, filename, result.diagnostics);
  result.configs = parser.run();
  return result;
}

}  // namespace tickmc
