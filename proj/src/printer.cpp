#include "awn/printer.hpp"

#include <sstream>

namespace awn {

namespace {

int precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Or: return 1;
    case ExprKind::And: return 2;
    case ExprKind::Not: return 3;
    case ExprKind::Le:
    case ExprKind::Lt:
    case ExprKind::Eq:
    case ExprKind::Ne:
    case ExprKind::Ge:
    case ExprKind::In: return 4;
    case ExprKind::Plus: return 5;
    case ExprKind::Field: return 6;
    default: return 7;
  }
}

std::string wrap(const Expr& e, bool paren) {
  std::string s = to_string(e);
  return paren ? "(" + s + ")" : s;
}

const char* op_text(ExprKind k) {
  switch (k) {
    case ExprKind::Or: return " or ";
    case ExprKind::And: return " and ";
    case ExprKind::Le: return " <= ";
    case ExprKind::Lt: return " < ";
    case ExprKind::Eq: return " = ";
    case ExprKind::Ne: return " != ";
    case ExprKind::Ge: return " >= ";
    case ExprKind::In: return " in ";
    case ExprKind::Plus: return " + ";
    default: return " ? ";
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  const auto& a = e.args;
  switch (e.kind) {
    case ExprKind::Var: return e.name;
    case ExprKind::PostVar: return e.name + "'";
    case ExprKind::NatLit: return std::to_string(e.literal);
    case ExprKind::AddrLit: return "#" + std::to_string(e.literal);
    case ExprKind::NoneLit: return "none";
    case ExprKind::BoolLit: return e.literal ? "true" : "false";
    case ExprKind::Max: return "max(" + to_string(a[0]) + ", " + to_string(a[1]) + ")";
    case ExprKind::Pkt: return "pkt(" + to_string(a[0]) + ", " + to_string(a[1]) + ")";
    case ExprKind::NewPkt: return "newpkt(" + to_string(a[0]) + ", " + to_string(a[1]) + ")";
    case ExprKind::If:
      return "(if " + to_string(a[0]) + " then " + to_string(a[1]) + " else " + to_string(a[2]) + ")";
    case ExprKind::Not: return "not " + wrap(a[0], precedence(a[0]) < 3);
    case ExprKind::Field: {
      const char* f = e.field == Field::Data ? ".data" : e.field == Field::Src ? ".src" : ".dst";
      return wrap(a[0], precedence(a[0]) < 6) + f;
    }
    case ExprKind::SetLit: {
      std::string s = "{";
      for (std::size_t k = 0; k < a.size(); ++k) s += (k ? ", " : "") + to_string(a[k]);
      return s + "}";
    }
    case ExprKind::Or:
    case ExprKind::And:
    case ExprKind::Plus: {
      const int p = precedence(e);
      return wrap(a[0], precedence(a[0]) < p) + op_text(e.kind) + wrap(a[1], precedence(a[1]) <= p);
    }
    case ExprKind::Le:
    case ExprKind::Lt:
    case ExprKind::Eq:
    case ExprKind::Ne:
    case ExprKind::Ge:
    case ExprKind::In:
      return wrap(a[0], precedence(a[0]) <= 4) + op_text(e.kind) + wrap(a[1], precedence(a[1]) <= 4);
  }
  return "?";
}

std::string to_string(const GuardClause& c) {
  switch (c.kind) {
    case GuardClause::Kind::Test: return to_string(c.expr);
    case GuardClause::Kind::BindIn: return c.name + " <- " + to_string(c.expr);
    case GuardClause::Kind::BindAny: return c.name + " <- *";
    case GuardClause::Kind::IsPkt: return "is_pkt";
    case GuardClause::Kind::IsNewPkt: return "is_newpkt";
  }
  return "?";
}

std::string to_string(const Guard& g) {
  std::string s = "<";
  for (std::size_t k = 0; k < g.clauses.size(); ++k) s += (k ? ", " : "") + to_string(g.clauses[k]);
  return s + ">";
}

std::string to_string(const Assignment& u) {
  std::string s = "[[";
  for (std::size_t k = 0; k < u.size(); ++k) s += (k ? ", " : "") + u[k].name + " := " + to_string(u[k].value);
  return s + "]]";
}

namespace {

std::string prefix_text(const Term& t) {
  std::string s;
  switch (t.kind) {
    case TermKind::Assign: s = to_string(t.updates); break;
    case TermKind::Guard: s = to_string(t.guard); break;
    case TermKind::Unicast: s = "unicast(" + to_string(t.first) + ", " + to_string(t.second) + ")"; break;
    case TermKind::Broadcast: s = "broadcast(" + to_string(t.first) + ")"; break;
    case TermKind::Groupcast: s = "groupcast(" + to_string(t.first) + ", " + to_string(t.second) + ")"; break;
    case TermKind::Send: s = "send(" + to_string(t.first) + ")"; break;
    case TermKind::Receive: s = "receive(" + t.binder + ")"; break;
    case TermKind::Deliver: s = "deliver(" + to_string(t.first) + ")"; break;
    case TermKind::Choice:
    case TermKind::Call: break;
  }
  if (t.label_hint) s += " @" + std::to_string(*t.label_hint);
  return s;
}

void compact_into(const TermPtr& t, bool labels, std::string& out, bool as_seq) {
  if (t->kind == TermKind::Call) {
    out += "call(" + t->target + ")";
    return;
  }
  if (t->kind == TermKind::Choice) {
    if (as_seq) out += "(";
    compact_into(t->next[0], labels, out, false);
    out += " (+) ";
    compact_into(t->next[1], labels, out, true);
    if (as_seq) out += ")";
    return;
  }
  if (labels && t->label) out += "{" + to_string(*t->label) + "} ";
  out += prefix_text(*t);
  if (t->kind == TermKind::Unicast) {
    out += " |> ";
    compact_into(t->next[0], labels, out, false);
    out += " <| ";
    compact_into(t->next[1], labels, out, true);
    return;
  }
  out += " . ";
  compact_into(t->next[0], labels, out, true);
}

void pretty_into(const TermPtr& t, int indent, std::ostringstream& os, bool as_seq) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  switch (t->kind) {
    case TermKind::Call: os << pad << "call(" << t->target << ")"; return;
    case TermKind::Choice: {
      // flatten left-nested choices into one bracketed block
      std::vector<TermPtr> branches;
      TermPtr cur = t;
      while (cur->kind == TermKind::Choice) {
        branches.insert(branches.begin(), cur->next[1]);
        cur = cur->next[0];
      }
      branches.insert(branches.begin(), cur);
      if (as_seq) os << pad << "(\n";
      for (std::size_t k = 0; k < branches.size(); ++k) {
        if (k) os << "\n" << pad << "(+)\n";
        pretty_into(branches[k], indent + 2, os, true);
      }
      if (as_seq) os << "\n" << pad << ")";
      return;
    }
    case TermKind::Unicast:
      os << pad << prefix_text(*t) << "\n" << pad << "|>\n";
      pretty_into(t->next[0], indent + 2, os, false);
      os << "\n" << pad << "<|\n";
      pretty_into(t->next[1], indent + 2, os, true);
      return;
    default:
      os << pad << prefix_text(*t) << " .\n";
      pretty_into(t->next[0], indent, os, true);
      return;
  }
}

std::string type_name(Type t) {
  switch (t) {
    case Type::Bool: return "bool";
    case Type::Nat: return "nat";
    case Type::Addr: return "addr";
    case Type::Msg: return "msg";
    case Type::AddrSet: return "addrset";
  }
  return "?";
}

std::string label_ranges(const std::vector<std::uint32_t>& ls) {
  std::string s;
  for (std::size_t k = 0; k < ls.size();) {
    std::size_t j = k;
    while (j + 1 < ls.size() && ls[j + 1] == ls[j] + 1) ++j;
    if (!s.empty()) s += ", ";
    s += std::to_string(ls[k]);
    if (j > k) s += ".." + std::to_string(ls[j]);
    k = j + 1;
  }
  return s;
}

}  // namespace

std::string pretty(const TermPtr& t, int indent) {
  std::ostringstream os;
  pretty_into(t, indent, os, false);
  return os.str();
}

std::string pretty(const Specification& spec) {
  std::ostringstream os;
  for (const auto& v : spec.schema.vars) {
    os << "var " << v.name << " : " << type_name(v.type) << " = ";
    switch (v.init) {
      case InitKind::Self: os << "self"; break;
      case InitKind::Any: os << "any"; break;
      case InitKind::Literal: os << to_string(v.literal); break;
    }
    os << "\n";
  }
  for (const auto& p : spec.processes) os << "\nprocess " << p.name << ":\n" << pretty(p.body, 2) << "\n";
  if (!spec.predicates.empty()) os << "\n";
  for (const auto& pd : spec.predicates) {
    os << (pd.step ? "step " : "invariant ") << pd.name;
    if (pd.process) os << " at " << *pd.process << "{" << label_ranges(pd.labels) << "}";
    os << " : " << to_string(pd.body) << "\n";
  }
  return os.str();
}

std::string compact(const TermPtr& t, bool labels) {
  std::string out;
  compact_into(t, labels, out, false);
  return out;
}

std::string head(const TermPtr& t) {
  if (t->kind == TermKind::Call) return "call(" + t->target + ")";
  if (t->kind == TermKind::Choice) return "choice";
  std::string s;
  if (t->label) s = "{" + to_string(*t->label) + "} ";
  return s + prefix_text(*t);
}

}  // namespace awn
