#include "awn/expr.hpp"

#include <algorithm>

namespace awn {

Expr Expr::variable(std::string name, VarId id) {
  Expr e;
  e.kind = ExprKind::Var;
  e.name = std::move(name);
  e.var = id;
  return e;
}

Expr Expr::nat(std::uint32_t n) {
  Expr e;
  e.kind = ExprKind::NatLit;
  e.literal = n;
  return e;
}

Expr Expr::address(Address a) {
  Expr e;
  e.kind = ExprKind::AddrLit;
  e.literal = a;
  return e;
}

Expr Expr::none() {
  Expr e;
  e.kind = ExprKind::NoneLit;
  return e;
}

Expr Expr::boolean(bool b) {
  Expr e;
  e.kind = ExprKind::BoolLit;
  e.literal = b ? 1 : 0;
  return e;
}

Expr Expr::op(ExprKind k, std::vector<Expr> args) {
  Expr e;
  e.kind = k;
  e.args = std::move(args);
  return e;
}

Expr Expr::project(Expr msg, Field f) {
  Expr e;
  e.kind = ExprKind::Field;
  e.field = f;
  e.args.push_back(std::move(msg));
  return e;
}

bool Expr::operator==(const Expr& o) const {
  if (kind != o.kind || args != o.args) return false;
  switch (kind) {
    case ExprKind::Var:
    case ExprKind::PostVar: return name == o.name;
    case ExprKind::NatLit:
    case ExprKind::AddrLit:
    case ExprKind::BoolLit: return literal == o.literal;
    case ExprKind::Field: return field == o.field;
    default: return true;
  }
}

std::uint32_t as_nat(const Value& v) {
  if (auto p = std::get_if<Nat>(&v)) return p->value;
  throw EvalError("expected nat, got " + to_string(v));
}
Address as_addr(const Value& v) {
  if (auto p = std::get_if<Addr>(&v)) return p->value;
  throw EvalError("expected addr, got " + to_string(v));
}
const Message& as_msg(const Value& v) {
  if (auto p = std::get_if<Message>(&v)) return *p;
  throw EvalError("expected message, got " + to_string(v));
}
AddrSet as_addrset(const Value& v) {
  if (auto p = std::get_if<AddrSet>(&v)) return *p;
  throw EvalError("expected address set, got " + to_string(v));
}
bool as_bool(const Value& v) {
  if (auto p = std::get_if<bool>(&v)) return *p;
  throw EvalError("expected bool, got " + to_string(v));
}

namespace {

struct Evaluator {
  const DataState& pre;
  const DataState* post;
  const Domains& dom;

  const Value& slot(const DataState& s, const Expr& e) const {
    if (e.var >= s.size()) throw EvalError("unbound variable '" + e.name + "'");
    return s[e.var];
  }

  Value operator()(const Expr& e) const {
    const auto& a = e.args;
    switch (e.kind) {
      case ExprKind::Var: return slot(pre, e);
      case ExprKind::PostVar:
        if (post == nullptr) throw EvalError("primed variable '" + e.name + "' outside a step predicate");
        return slot(*post, e);
      case ExprKind::NatLit: return Nat{dom.clamp(e.literal)};
      case ExprKind::AddrLit: return Addr{e.literal};
      case ExprKind::NoneLit: return NoneValue{};
      case ExprKind::BoolLit: return e.literal != 0;
      case ExprKind::Plus: {
        std::uint64_t sum = as_nat((*this)(a.at(0))) + std::uint64_t{as_nat((*this)(a.at(1)))};
        return Nat{dom.clamp(sum)};
      }
      case ExprKind::Max: return Nat{std::max(as_nat((*this)(a.at(0))), as_nat((*this)(a.at(1))))};
      case ExprKind::Le:
      case ExprKind::Lt:
      case ExprKind::Ge: {
        Value l = (*this)(a.at(0));
        Value r = (*this)(a.at(1));
        if (l.index() != r.index() || !(std::holds_alternative<Nat>(l) || std::holds_alternative<Addr>(l)))
          throw EvalError("ordering comparison between " + to_string(l) + " and " + to_string(r));
        if (e.kind == ExprKind::Le) return l <= r;
        if (e.kind == ExprKind::Lt) return l < r;
        return l >= r;
      }
      case ExprKind::Eq:
      case ExprKind::Ne: {
        Value l = (*this)(a.at(0));
        Value r = (*this)(a.at(1));
        if (type_of(l) != type_of(r))
          throw EvalError("equality between " + to_string(l) + " and " + to_string(r));
        return (l == r) == (e.kind == ExprKind::Eq);
      }
      case ExprKind::And: return as_bool((*this)(a.at(0))) && as_bool((*this)(a.at(1)));
      case ExprKind::Or: return as_bool((*this)(a.at(0))) || as_bool((*this)(a.at(1)));
      case ExprKind::Not: return !as_bool((*this)(a.at(0)));
      case ExprKind::If: return as_bool((*this)(a.at(0))) ? (*this)(a.at(1)) : (*this)(a.at(2));
      case ExprKind::Pkt: return Message::pkt(as_nat((*this)(a.at(0))), as_addr((*this)(a.at(1))));
      case ExprKind::NewPkt: return Message::newpkt(as_nat((*this)(a.at(0))), as_addr((*this)(a.at(1))));
      case ExprKind::Field: {
        const Value v = (*this)(a.at(0));
        const Message& m = as_msg(v);
        switch (e.field) {
          case Field::Data: return Nat{m.data};
          case Field::Src:
            if (m.kind != Message::Kind::Pkt) throw EvalError("src of " + to_string(m));
            return Addr{m.addr};
          case Field::Dst:
            if (m.kind != Message::Kind::NewPkt) throw EvalError("dst of " + to_string(m));
            return Addr{m.addr};
        }
        break;
      }
      case ExprKind::SetLit: {
        AddrSet s;
        for (const auto& x : a) s.insert(as_addr((*this)(x)));
        return s;
      }
      case ExprKind::In: return as_addrset((*this)(a.at(1))).contains(as_addr((*this)(a.at(0))));
    }
    throw EvalError("malformed expression");
  }
};

}  // namespace

Value eval_expr(const DataState& xi, const Expr& e, const Domains& d) { return Evaluator{xi, nullptr, d}(e); }

Value eval_expr(const DataState& pre, const DataState& post, const Expr& e, const Domains& d) {
  return Evaluator{pre, &post, d}(e);
}

bool eval_bool(const DataState& xi, const Expr& e, const Domains& d) { return as_bool(eval_expr(xi, e, d)); }

std::vector<DataState> eval_guard(const DataState& xi, const Guard& g, const Domains& d) {
  std::vector<DataState> current{xi};
  for (const auto& c : g.clauses) {
    std::vector<DataState> next;
    for (const auto& s : current) {
      switch (c.kind) {
        case GuardClause::Kind::Test:
          if (eval_bool(s, c.expr, d)) next.push_back(s);
          break;
        case GuardClause::Kind::BindIn:
          for (Address a : as_addrset(eval_expr(s, c.expr, d)).members()) {
            DataState t = s;
            t.set(c.var, Addr{a});
            next.push_back(std::move(t));
          }
          break;
        case GuardClause::Kind::BindAny:
          for (auto& v : enumerate(c.var_type, d)) {
            DataState t = s;
            t.set(c.var, std::move(v));
            next.push_back(std::move(t));
          }
          break;
        case GuardClause::Kind::IsPkt:
        case GuardClause::Kind::IsNewPkt: {
          const Value& mv = s[c.msg_var];
          const auto* m = std::get_if<Message>(&mv);
          const auto want = c.kind == GuardClause::Kind::IsPkt ? Message::Kind::Pkt : Message::Kind::NewPkt;
          if (m == nullptr || m->kind != want) break;
          DataState t = s;
          t.set(c.num_var, Nat{d.clamp(m->data)});
          if (want == Message::Kind::Pkt) t.set(c.sip_var, Addr{m->addr});
          next.push_back(std::move(t));
          break;
        }
      }
    }
    current = std::move(next);
    if (current.empty()) break;
  }
  std::sort(current.begin(), current.end());
  current.erase(std::unique(current.begin(), current.end()), current.end());
  return current;
}

DataState apply_assignment(const DataState& xi, const Assignment& u, const Domains& d) {
  std::vector<Value> rhs;
  rhs.reserve(u.size());
  for (const auto& up : u) rhs.push_back(eval_expr(xi, up.value, d));
  DataState out = xi;
  for (std::size_t k = 0; k < u.size(); ++k) out.set(u[k].var, std::move(rhs[k]));
  return out;
}

}  // namespace awn
