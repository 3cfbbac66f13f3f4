#include "awn/parser.hpp"

#include <map>
#include <set>
#include <sstream>

namespace awn {

ParseError::ParseError(int line, int column, const std::string& msg)
    : ModelError(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line), column_(column) {}

namespace {

enum class Tok : std::uint8_t {
  End,
  Ident,
  Number,
  AddrNum,  // #k
  Dot,
  Comma,
  Colon,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LDBracket,  // [[
  RDBracket,  // ]]
  Lt,
  Gt,
  Le,
  Ge,
  Eq,
  Ne,
  Assign,  // :=
  Arrow,   // <-
  Plus,
  Oplus,   // ⊕ or (+)
  UniOk,   // |>
  UniFail, // <|
  At,
  Star,
  Prime,
  DotDot,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::uint32_t number = 0;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.pos = {line_, col_};
      if (at_end()) {
        out.push_back(t);
        return out;
      }
      const char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string id;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) id += get();
        t.kind = Tok::Ident;
        t.text = id;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Tok::Number;
        t.number = read_number(t.pos);
      } else if (c == '#') {
        get();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
          throw ParseError(t.pos.line, t.pos.column, "expected digits after '#'");
        t.kind = Tok::AddrNum;
        t.number = read_number(t.pos);
      } else if (starts("\xE2\x8A\x95")) {  // ⊕
        advance(3);
        t.kind = Tok::Oplus;
      } else if (starts("\xE2\x89\xA4")) {  // ≤
        advance(3);
        t.kind = Tok::Le;
      } else if (starts("\xE2\x89\xA5")) {  // ≥
        advance(3);
        t.kind = Tok::Ge;
      } else if (starts("(+)")) {
        advance(3);
        t.kind = Tok::Oplus;
      } else if (starts("[[")) {
        advance(2);
        t.kind = Tok::LDBracket;
      } else if (starts("]]")) {
        advance(2);
        t.kind = Tok::RDBracket;
      } else if (starts(":=")) {
        advance(2);
        t.kind = Tok::Assign;
      } else if (starts("<-")) {
        advance(2);
        t.kind = Tok::Arrow;
      } else if (starts("<|")) {
        advance(2);
        t.kind = Tok::UniFail;
      } else if (starts("|>")) {
        advance(2);
        t.kind = Tok::UniOk;
      } else if (starts("<=")) {
        advance(2);
        t.kind = Tok::Le;
      } else if (starts(">=")) {
        advance(2);
        t.kind = Tok::Ge;
      } else if (starts("!=")) {
        advance(2);
        t.kind = Tok::Ne;
      } else if (starts("..")) {
        advance(2);
        t.kind = Tok::DotDot;
      } else {
        get();
        switch (c) {
          case '.': t.kind = Tok::Dot; break;
          case ',': t.kind = Tok::Comma; break;
          case ':': t.kind = Tok::Colon; break;
          case '(': t.kind = Tok::LParen; break;
          case ')': t.kind = Tok::RParen; break;
          case '{': t.kind = Tok::LBrace; break;
          case '}': t.kind = Tok::RBrace; break;
          case '<': t.kind = Tok::Lt; break;
          case '>': t.kind = Tok::Gt; break;
          case '=': t.kind = Tok::Eq; break;
          case '+': t.kind = Tok::Plus; break;
          case '@': t.kind = Tok::At; break;
          case '*': t.kind = Tok::Star; break;
          case '\'': t.kind = Tok::Prime; break;
          default:
            throw ParseError(t.pos.line, t.pos.column, std::string("unexpected character '") + c + "'");
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  bool at_end() const { return i_ >= src_.size(); }
  char peek() const { return src_[i_]; }
  bool starts(std::string_view s) const { return src_.substr(i_, s.size()) == s; }
  char get() {
    const char c = src_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++col_;
    }
    return c;
  }
  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) get();
  }
  void skip_space() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        get();
      } else if (starts("--")) {
        while (!at_end() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }
  std::uint32_t read_number(SourcePos pos) {
    std::uint64_t n = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      n = n * 10 + static_cast<std::uint64_t>(get() - '0');
      if (n > 0xFFFFFFFFull) throw ParseError(pos.line, pos.column, "numeric literal too large");
    }
    return static_cast<std::uint32_t>(n);
  }

  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

const std::set<std::string> kKeywords = {"process", "var", "abbrev", "invariant", "step", "call", "receive",
                                         "broadcast", "groupcast", "unicast", "send", "deliver", "max",
                                         "pkt", "newpkt", "if", "then", "else", "and", "or", "not", "in",
                                         "none", "true", "false", "is_pkt", "is_newpkt", "self", "any", "at"};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Specification parse_model() {
    Specification spec;
    std::map<std::string, TermPtr> abbrevs;
    std::map<std::string, SourcePos> process_pos;
    while (!is(Tok::End)) {
      const Token& t = expect(Tok::Ident, "declaration keyword");
      if (t.text == "var") {
        parse_var(spec.schema);
      } else if (t.text == "abbrev") {
        const Token name = expect(Tok::Ident, "abbreviation name");
        expect(Tok::LParen, "'('");
        expect(Tok::RParen, "')'");
        expect(Tok::Eq, "'='");
        if (abbrevs.count(name.text)) fail(name.pos, "duplicate abbreviation '" + name.text + "'");
        abbrevs[name.text] = parse_term();
      } else if (t.text == "process") {
        const Token name = expect(Tok::Ident, "process name");
        check_name(name);
        expect(Tok::Colon, "':'");
        if (spec.find(name.text)) fail(name.pos, "duplicate process name '" + name.text + "'");
        process_pos[name.text] = name.pos;
        spec.processes.push_back({name.text, parse_term()});
      } else if (t.text == "invariant" || t.text == "step") {
        spec.predicates.push_back(parse_predicate(t.text == "step", spec));
      } else {
        fail(t.pos, "expected 'var', 'abbrev', 'process', 'invariant' or 'step', found '" + t.text + "'");
      }
    }
    if (spec.processes.empty()) fail(toks_.back().pos, "model declares no process");

    for (auto& p : spec.processes) p.body = expand(p.body, abbrevs, {});
    for (auto& p : spec.processes) resolve_term(p.body, spec);
    for (auto& pd : spec.predicates) resolve_predicate(pd, spec);
    return spec;
  }

  Expr parse_standalone_expr() {
    Expr e = parse_expr();
    if (!is(Tok::End)) fail(cur().pos, "unexpected trailing input");
    return e;
  }

 private:
  // --- token helpers
  const Token& cur() const { return toks_[k_]; }
  const Token& lookahead(std::size_t n = 1) const { return toks_[std::min(k_ + n, toks_.size() - 1)]; }
  bool is(Tok t) const { return cur().kind == t; }
  bool is_ident(std::string_view s) const { return is(Tok::Ident) && cur().text == s; }
  const Token& advance() { return toks_[k_ < toks_.size() - 1 ? k_++ : k_]; }
  [[noreturn]] void fail(SourcePos p, const std::string& msg) const { throw ParseError(p.line, p.column, msg); }
  const Token& expect(Tok t, const std::string& what) {
    if (!is(t)) fail(cur().pos, "expected " + what + describe_found());
    return advance();
  }
  void expect_ident(std::string_view s) {
    if (!is_ident(s)) fail(cur().pos, "expected '" + std::string(s) + "'" + describe_found());
    advance();
  }
  std::string describe_found() const {
    if (is(Tok::End)) return ", found end of input";
    if (is(Tok::Ident)) return ", found '" + cur().text + "'";
    if (is(Tok::Number)) return ", found " + std::to_string(cur().number);
    return "";
  }
  void check_name(const Token& t) const {
    if (kKeywords.count(t.text)) fail(t.pos, "'" + t.text + "' is a reserved word");
  }

  // --- declarations
  void parse_var(StateSchema& schema) {
    const Token name = expect(Tok::Ident, "variable name");
    check_name(name);
    if (schema.find(name.text)) fail(name.pos, "duplicate variable '" + name.text + "'");
    expect(Tok::Colon, "':'");
    const Token ty = expect(Tok::Ident, "type");
    VarDecl d;
    d.name = name.text;
    if (ty.text == "nat") d.type = Type::Nat;
    else if (ty.text == "addr") d.type = Type::Addr;
    else if (ty.text == "msg") d.type = Type::Msg;
    else if (ty.text == "addrset") d.type = Type::AddrSet;
    else if (ty.text == "bool") d.type = Type::Bool;
    else fail(ty.pos, "unknown type '" + ty.text + "'");
    expect(Tok::Eq, "'='");
    if (is_ident("self")) {
      advance();
      if (d.type != Type::Addr) fail(name.pos, "'self' initialiser requires an addr variable");
      d.init = InitKind::Self;
    } else if (is_ident("any")) {
      advance();
      d.init = InitKind::Any;
    } else {
      const SourcePos p = cur().pos;
      d.init = InitKind::Literal;
      d.literal = parse_expr();
      StateSchema empty;
      Type t = Type::Nat;
      try {
        t = type_check(d.literal, empty);
      } catch (const ModelError& e) {
        fail(p, std::string("initialiser must be a literal: ") + e.what());
      }
      if (t != d.type) fail(p, "initialiser of '" + d.name + "' has type " + to_string(t));
    }
    schema.vars.push_back(std::move(d));
  }

  PredicateDecl parse_predicate(bool step, const Specification&) {
    PredicateDecl pd;
    pd.step = step;
    const Token name = expect(Tok::Ident, "predicate name");
    pd.name = name.text;
    if (!step && is_ident("at")) {
      advance();
      pd.process = expect(Tok::Ident, "process name").text;
      expect(Tok::LBrace, "'{'");
      while (true) {
        const std::uint32_t lo = expect(Tok::Number, "label index").number;
        std::uint32_t hi = lo;
        if (is(Tok::DotDot)) {
          advance();
          hi = expect(Tok::Number, "label index").number;
        }
        for (std::uint32_t k = lo; k <= hi; ++k) pd.labels.push_back(k);
        if (is(Tok::Comma)) {
          advance();
          continue;
        }
        break;
      }
      expect(Tok::RBrace, "'}'");
      if (pd.labels.empty()) fail(name.pos, "empty label set");
    }
    expect(Tok::Colon, "':'");
    pd.body = parse_expr();
    pd.body.pos = name.pos;
    return pd;
  }

  // --- terms
  TermPtr parse_term() {
    TermPtr left = parse_seq();
    while (is(Tok::Oplus)) {
      advance();
      TermPtr right = parse_seq();
      left = make_choice(std::move(left), std::move(right));
    }
    return left;
  }

  std::optional<std::uint32_t> parse_hint() {
    if (!is(Tok::At)) return std::nullopt;
    advance();
    return expect(Tok::Number, "label index after '@'").number;
  }

  TermPtr with_meta(TermPtr t, SourcePos pos, std::optional<std::uint32_t> hint) {
    auto m = std::make_shared<Term>(*t);
    m->pos = pos;
    m->label_hint = hint;
    return m;
  }

  TermPtr parse_seq() {
    const SourcePos pos = cur().pos;
    if (is(Tok::LParen)) {
      advance();
      TermPtr t = parse_term();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (is_ident("call")) {
      advance();
      expect(Tok::LParen, "'('");
      const Token name = expect(Tok::Ident, "process name");
      expect(Tok::RParen, "')'");
      auto t = std::make_shared<Term>(*make_call(name.text));
      t->pos = name.pos;
      return t;
    }
    if (is_ident("unicast")) {
      advance();
      expect(Tok::LParen, "'('");
      Expr dest = parse_expr();
      expect(Tok::Comma, "','");
      Expr msg = parse_expr();
      expect(Tok::RParen, "')'");
      auto hint = parse_hint();
      expect(Tok::UniOk, "'|>'");
      TermPtr succ = parse_term();
      expect(Tok::UniFail, "'<|'");
      TermPtr fail_t = parse_seq();
      return with_meta(make_unicast(std::move(dest), std::move(msg), std::move(succ), std::move(fail_t)), pos, hint);
    }
    if (is(Tok::Ident) && lookahead().kind == Tok::LParen && lookahead(2).kind == Tok::RParen &&
        !kKeywords.count(cur().text)) {
      const Token name = advance();
      advance();
      advance();
      auto t = std::make_shared<Term>(*make_call(name.text + "()"));
      t->pos = name.pos;
      return t;
    }

    // prefix "." seq
    enum class P { Assign, Guard, Broadcast, Groupcast, Send, Receive, Deliver } kind;
    Assignment upd;
    Guard guard;
    Expr e1, e2;
    std::string binder;
    if (is(Tok::LDBracket)) {
      advance();
      kind = P::Assign;
      if (!is(Tok::RDBracket)) {
        while (true) {
          const Token v = expect(Tok::Ident, "variable name");
          expect(Tok::Assign, "':='");
          Update u;
          u.name = v.text;
          u.value = parse_expr();
          u.value.pos = v.pos;
          upd.push_back(std::move(u));
          if (is(Tok::Comma)) {
            advance();
            continue;
          }
          break;
        }
      }
      expect(Tok::RDBracket, "']]'");
    } else if (is(Tok::Lt)) {
      advance();
      kind = P::Guard;
      while (true) {
        guard.clauses.push_back(parse_clause());
        if (is(Tok::Comma)) {
          advance();
          continue;
        }
        break;
      }
      expect(Tok::Gt, "'>' closing the guard");
    } else if (is_ident("broadcast") || is_ident("send") || is_ident("deliver")) {
      const std::string kw = advance().text;
      kind = kw == "broadcast" ? P::Broadcast : kw == "send" ? P::Send : P::Deliver;
      expect(Tok::LParen, "'('");
      e1 = parse_expr();
      expect(Tok::RParen, "')'");
    } else if (is_ident("groupcast")) {
      advance();
      kind = P::Groupcast;
      expect(Tok::LParen, "'('");
      e1 = parse_expr();
      expect(Tok::Comma, "','");
      e2 = parse_expr();
      expect(Tok::RParen, "')'");
    } else if (is_ident("receive")) {
      advance();
      kind = P::Receive;
      expect(Tok::LParen, "'('");
      binder = expect(Tok::Ident, "message variable").text;
      expect(Tok::RParen, "')'");
    } else {
      fail(pos, "expected a process term" + describe_found());
    }
    auto hint = parse_hint();
    expect(Tok::Dot, "'.' after prefix");
    TermPtr cont = parse_seq();
    TermPtr t;
    switch (kind) {
      case P::Assign: t = make_assign(std::move(upd), cont); break;
      case P::Guard: t = make_guard(std::move(guard), cont); break;
      case P::Broadcast: t = make_broadcast(std::move(e1), cont); break;
      case P::Groupcast: t = make_groupcast(std::move(e1), std::move(e2), cont); break;
      case P::Send: t = make_send(std::move(e1), cont); break;
      case P::Receive: t = make_receive(std::move(binder), cont); break;
      case P::Deliver: t = make_deliver(std::move(e1), cont); break;
    }
    return with_meta(std::move(t), pos, hint);
  }

  GuardClause parse_clause() {
    GuardClause c;
    const SourcePos pos = cur().pos;
    if (is_ident("is_pkt") || is_ident("is_newpkt")) {
      c.kind = advance().text == "is_pkt" ? GuardClause::Kind::IsPkt : GuardClause::Kind::IsNewPkt;
      c.expr.pos = pos;
      return c;
    }
    if (is(Tok::Ident) && lookahead().kind == Tok::Arrow) {
      c.name = advance().text;
      advance();
      if (is(Tok::Star)) {
        advance();
        c.kind = GuardClause::Kind::BindAny;
      } else {
        c.kind = GuardClause::Kind::BindIn;
        c.expr = parse_expr();
      }
      c.expr.pos = pos;
      return c;
    }
    c.kind = GuardClause::Kind::Test;
    c.expr = parse_expr();
    c.expr.pos = pos;
    return c;
  }

  // --- expressions
  Expr parse_expr() { return parse_or(); }

  Expr parse_or() {
    Expr l = parse_and();
    while (is_ident("or")) {
      const SourcePos p = advance().pos;
      l = at(Expr::op(ExprKind::Or, {std::move(l), parse_and()}), p);
    }
    return l;
  }
  Expr parse_and() {
    Expr l = parse_not();
    while (is_ident("and")) {
      const SourcePos p = advance().pos;
      l = at(Expr::op(ExprKind::And, {std::move(l), parse_not()}), p);
    }
    return l;
  }
  Expr parse_not() {
    if (is_ident("not")) {
      const SourcePos p = advance().pos;
      return at(Expr::op(ExprKind::Not, {parse_not()}), p);
    }
    return parse_cmp();
  }
  Expr parse_cmp() {
    Expr l = parse_sum();
    std::optional<ExprKind> k;
    if (is(Tok::Le)) k = ExprKind::Le;
    else if (is(Tok::Lt)) k = ExprKind::Lt;
    else if (is(Tok::Eq)) k = ExprKind::Eq;
    else if (is(Tok::Ne)) k = ExprKind::Ne;
    else if (is(Tok::Ge)) k = ExprKind::Ge;
    else if (is_ident("in")) k = ExprKind::In;
    if (!k) return l;
    const SourcePos p = advance().pos;
    return at(Expr::op(*k, {std::move(l), parse_sum()}), p);
  }
  Expr parse_sum() {
    Expr l = parse_postfix();
    while (is(Tok::Plus)) {
      const SourcePos p = advance().pos;
      l = at(Expr::op(ExprKind::Plus, {std::move(l), parse_postfix()}), p);
    }
    return l;
  }
  Expr parse_postfix() {
    Expr e = parse_atom();
    while (is(Tok::Dot) && lookahead().kind == Tok::Ident &&
           (lookahead().text == "data" || lookahead().text == "src" || lookahead().text == "dst")) {
      const SourcePos p = advance().pos;
      const std::string f = advance().text;
      e = at(Expr::project(std::move(e), f == "data" ? Field::Data : f == "src" ? Field::Src : Field::Dst), p);
    }
    return e;
  }
  Expr binary_call(ExprKind k, SourcePos p) {
    expect(Tok::LParen, "'('");
    Expr a = parse_expr();
    expect(Tok::Comma, "','");
    Expr b = parse_expr();
    expect(Tok::RParen, "')'");
    return at(Expr::op(k, {std::move(a), std::move(b)}), p);
  }
  Expr parse_atom() {
    const Token& t = cur();
    const SourcePos p = t.pos;
    switch (t.kind) {
      case Tok::Number: {
        const auto n = advance().number;
        return at(Expr::nat(n), p);
      }
      case Tok::AddrNum: {
        const auto n = advance().number;
        if (n > kMaxAddress) fail(p, "address literal exceeds 63");
        return at(Expr::address(n), p);
      }
      case Tok::LParen: {
        advance();
        Expr e = parse_expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::LBrace: {
        advance();
        std::vector<Expr> elems;
        if (!is(Tok::RBrace)) {
          while (true) {
            elems.push_back(parse_expr());
            if (is(Tok::Comma)) {
              advance();
              continue;
            }
            break;
          }
        }
        expect(Tok::RBrace, "'}'");
        return at(Expr::op(ExprKind::SetLit, std::move(elems)), p);
      }
      case Tok::Ident: {
        const std::string id = advance().text;
        if (id == "none") return at(Expr::none(), p);
        if (id == "true") return at(Expr::boolean(true), p);
        if (id == "false") return at(Expr::boolean(false), p);
        if (id == "max") return binary_call(ExprKind::Max, p);
        if (id == "pkt") return binary_call(ExprKind::Pkt, p);
        if (id == "newpkt") return binary_call(ExprKind::NewPkt, p);
        if (id == "if") {
          Expr c = parse_expr();
          expect_ident("then");
          Expr a = parse_expr();
          expect_ident("else");
          Expr b = parse_expr();
          return at(Expr::op(ExprKind::If, {std::move(c), std::move(a), std::move(b)}), p);
        }
        if (kKeywords.count(id)) fail(p, "unexpected keyword '" + id + "' in expression");
        Expr v = at(Expr::variable(id), p);
        if (is(Tok::Prime)) {
          advance();
          v.kind = ExprKind::PostVar;
        }
        return v;
      }
      default: fail(p, "expected an expression" + describe_found());
    }
  }
  static Expr at(Expr e, SourcePos p) {
    e.pos = p;
    return e;
  }

  // --- post-processing
  TermPtr expand(const TermPtr& t, const std::map<std::string, TermPtr>& abbrevs, std::vector<std::string> stack) {
    if (t->kind == TermKind::Call && t->target.size() > 2 && t->target.ends_with("()")) {
      const std::string name = t->target.substr(0, t->target.size() - 2);
      auto it = abbrevs.find(name);
      if (it == abbrevs.end()) fail(t->pos, "unknown abbreviation '" + name + "()'");
      for (const auto& s : stack)
        if (s == name) fail(t->pos, "recursive abbreviation '" + name + "()'");
      stack.push_back(name);
      return expand(it->second, abbrevs, stack);
    }
    auto copy = std::make_shared<Term>(*t);
    for (auto& n : copy->next) n = expand(n, abbrevs, stack);
    return copy;
  }

  void resolve_expr(Expr& e, const StateSchema& schema, bool allow_post) {
    if (e.kind == ExprKind::Var || e.kind == ExprKind::PostVar) {
      const auto id = schema.find(e.name);
      if (!id) fail(e.pos, "unbound variable '" + e.name + "'");
      if (e.kind == ExprKind::PostVar && !allow_post) fail(e.pos, "primed variable outside a step predicate");
      e.var = *id;
    }
    for (auto& a : e.args) resolve_expr(a, schema, allow_post);
  }

  Type typed(Expr& e, const StateSchema& schema, bool allow_post = false) {
    const SourcePos p = e.pos;
    resolve_expr(e, schema, allow_post);
    try {
      return type_check(e, schema, allow_post);
    } catch (const ParseError&) {
      throw;
    } catch (const ModelError& err) {
      fail(p, err.what());
    }
  }

  void require_type(Expr& e, Type want, const StateSchema& schema, const std::string& ctx) {
    const Type got = typed(e, schema);
    if (got != want) fail(e.pos, ctx + " must have type " + to_string(want) + ", found " + to_string(got));
  }

  VarId require_var(const std::string& name, Type want, SourcePos p, const StateSchema& schema) {
    const auto id = schema.find(name);
    if (!id) fail(p, "unbound variable '" + name + "'");
    if (schema.vars[*id].type != want)
      fail(p, "variable '" + name + "' must have type " + to_string(want));
    return *id;
  }

  void resolve_term(TermPtr& tp, const Specification& spec) {
    auto t = std::make_shared<Term>(*tp);
    const auto& schema = spec.schema;
    switch (t->kind) {
      case TermKind::Assign:
        for (auto& u : t->updates) {
          const auto id = schema.find(u.name);
          if (!id) fail(u.value.pos, "unbound variable '" + u.name + "'");
          u.var = *id;
          const Type want = schema.vars[*id].type;
          const Type got = typed(u.value, schema);
          if (got != want)
            fail(u.value.pos, "assignment to '" + u.name + "' of type " + to_string(want) + " from " + to_string(got));
        }
        break;
      case TermKind::Guard:
        for (auto& c : t->guard.clauses) {
          switch (c.kind) {
            case GuardClause::Kind::Test: require_type(c.expr, Type::Bool, schema, "guard"); break;
            case GuardClause::Kind::BindIn: {
              const SourcePos p = c.expr.pos;
              c.var = require_var(c.name, Type::Addr, p, schema);
              c.var_type = Type::Addr;
              require_type(c.expr, Type::AddrSet, schema, "binder range");
              break;
            }
            case GuardClause::Kind::BindAny: {
              const auto id = schema.find(c.name);
              if (!id) fail(c.expr.pos, "unbound variable '" + c.name + "'");
              c.var = *id;
              c.var_type = schema.vars[*id].type;
              break;
            }
            case GuardClause::Kind::IsPkt:
            case GuardClause::Kind::IsNewPkt:
              c.msg_var = require_var("msg", Type::Msg, c.expr.pos, schema);
              c.num_var = require_var("num", Type::Nat, c.expr.pos, schema);
              if (c.kind == GuardClause::Kind::IsPkt) c.sip_var = require_var("sip", Type::Addr, c.expr.pos, schema);
              break;
          }
        }
        break;
      case TermKind::Unicast:
        require_type(t->first, Type::Addr, schema, "unicast destination");
        require_type(t->second, Type::Msg, schema, "unicast message");
        break;
      case TermKind::Broadcast: require_type(t->first, Type::Msg, schema, "broadcast message"); break;
      case TermKind::Send: require_type(t->first, Type::Msg, schema, "send message"); break;
      case TermKind::Groupcast:
        require_type(t->first, Type::AddrSet, schema, "groupcast destinations");
        require_type(t->second, Type::Msg, schema, "groupcast message");
        break;
      case TermKind::Deliver: require_type(t->first, Type::Nat, schema, "delivered data"); break;
      case TermKind::Receive: t->binder_var = require_var(t->binder, Type::Msg, t->pos, schema); break;
      case TermKind::Call:
        if (!spec.find(t->target)) fail(t->pos, "unresolved call target '" + t->target + "'");
        break;
      case TermKind::Choice: break;
    }
    for (auto& n : t->next) resolve_term(n, spec);
    tp = std::move(t);
  }

  void resolve_predicate(PredicateDecl& pd, const Specification& spec) {
    if (pd.process && !spec.find(*pd.process)) fail(pd.body.pos, "unknown process '" + *pd.process + "'");
    require_type_post(pd.body, spec.schema, pd.step, "predicate '" + pd.name + "'");
  }

  void require_type_post(Expr& e, const StateSchema& schema, bool allow_post, const std::string& ctx) {
    const SourcePos p = e.pos;
    const Type got = typed(e, schema, allow_post);
    if (got != Type::Bool) fail(p, ctx + " must be boolean");
  }

  std::vector<Token> toks_;
  std::size_t k_ = 0;
};

}  // namespace

Type type_check(const Expr& e, const StateSchema& schema, bool allow_post) {
  auto sub = [&](std::size_t i) { return type_check(e.args.at(i), schema, allow_post); };
  auto need = [&](std::size_t i, Type t, const char* what) {
    const Type got = sub(i);
    if (got != t) throw ModelError(std::string(what) + " expects " + to_string(t) + ", found " + to_string(got));
  };
  switch (e.kind) {
    case ExprKind::Var:
    case ExprKind::PostVar: {
      if (e.kind == ExprKind::PostVar && !allow_post) throw ModelError("primed variable outside a step predicate");
      const auto id = schema.find(e.name);
      if (!id) throw ModelError("unbound variable '" + e.name + "'");
      return schema.vars[*id].type;
    }
    case ExprKind::NatLit: return Type::Nat;
    case ExprKind::AddrLit: return Type::Addr;
    case ExprKind::NoneLit: return Type::Msg;
    case ExprKind::BoolLit: return Type::Bool;
    case ExprKind::Plus:
    case ExprKind::Max:
      need(0, Type::Nat, "arithmetic");
      need(1, Type::Nat, "arithmetic");
      return Type::Nat;
    case ExprKind::Le:
    case ExprKind::Lt:
    case ExprKind::Ge: {
      const Type a = sub(0);
      const Type b = sub(1);
      if (a != b || (a != Type::Nat && a != Type::Addr))
        throw ModelError("ordering comparison between " + to_string(a) + " and " + to_string(b));
      return Type::Bool;
    }
    case ExprKind::Eq:
    case ExprKind::Ne: {
      const Type a = sub(0);
      const Type b = sub(1);
      if (a != b) throw ModelError("equality between " + to_string(a) + " and " + to_string(b));
      return Type::Bool;
    }
    case ExprKind::And:
    case ExprKind::Or:
      need(0, Type::Bool, "boolean operator");
      need(1, Type::Bool, "boolean operator");
      return Type::Bool;
    case ExprKind::Not: need(0, Type::Bool, "not"); return Type::Bool;
    case ExprKind::If: {
      need(0, Type::Bool, "if condition");
      const Type a = sub(1);
      const Type b = sub(2);
      if (a != b) throw ModelError("if branches of types " + to_string(a) + " and " + to_string(b));
      return a;
    }
    case ExprKind::Pkt:
    case ExprKind::NewPkt:
      need(0, Type::Nat, "message data");
      need(1, Type::Addr, "message address");
      return Type::Msg;
    case ExprKind::Field:
      need(0, Type::Msg, "field projection");
      return e.field == Field::Data ? Type::Nat : Type::Addr;
    case ExprKind::SetLit:
      for (std::size_t i = 0; i < e.args.size(); ++i) need(i, Type::Addr, "set element");
      return Type::AddrSet;
    case ExprKind::In:
      need(0, Type::Addr, "membership");
      need(1, Type::AddrSet, "membership");
      return Type::Bool;
  }
  throw ModelError("malformed expression");
}

Specification parse_spec(std::string_view source) {
  Parser p(Lexer(source).run());
  return p.parse_model();
}

Expr parse_expr(std::string_view source, const StateSchema& schema, bool allow_post) {
  Parser p(Lexer(source).run());
  Expr e = p.parse_standalone_expr();
  // resolve slots
  struct R {
    const StateSchema& s;
    void operator()(Expr& x) const {
      if (x.kind == ExprKind::Var || x.kind == ExprKind::PostVar) x.var = s.require(x.name);
      for (auto& a : x.args) (*this)(a);
    }
  };
  R{schema}(e);
  type_check(e, schema, allow_post);
  return e;
}

}  // namespace awn
