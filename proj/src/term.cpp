#include "awn/term.hpp"

namespace awn {

std::string to_string(const Label& l) { return l.process + "-:" + std::to_string(l.index); }

bool is_prefix(TermKind k) { return k != TermKind::Choice && k != TermKind::Call; }

std::string_view to_string(TermKind k) {
  switch (k) {
    case TermKind::Assign: return "assign";
    case TermKind::Guard: return "guard";
    case TermKind::Unicast: return "unicast";
    case TermKind::Broadcast: return "broadcast";
    case TermKind::Groupcast: return "groupcast";
    case TermKind::Send: return "send";
    case TermKind::Receive: return "receive";
    case TermKind::Deliver: return "deliver";
    case TermKind::Choice: return "choice";
    case TermKind::Call: return "call";
  }
  return "?";
}

bool structurally_equal(const Term& a, const Term& b) {
  if (a.kind != b.kind || a.label != b.label || a.label_hint != b.label_hint) return false;
  if (!(a.updates == b.updates) || !(a.guard == b.guard) || !(a.first == b.first) || !(a.second == b.second))
    return false;
  if (a.binder != b.binder || a.target != b.target || a.next.size() != b.next.size()) return false;
  for (std::size_t k = 0; k < a.next.size(); ++k)
    if (!structurally_equal(a.next[k], b.next[k])) return false;
  return true;
}

bool structurally_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return structurally_equal(*a, *b);
}

namespace {

TermPtr make(TermKind k, std::vector<TermPtr> next) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->next = std::move(next);
  return t;
}

}  // namespace

TermPtr make_assign(Assignment u, TermPtr cont) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Assign;
  t->updates = std::move(u);
  t->next = {std::move(cont)};
  return t;
}

TermPtr make_guard(Guard g, TermPtr cont) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Guard;
  t->guard = std::move(g);
  t->next = {std::move(cont)};
  return t;
}

TermPtr make_unicast(Expr dest, Expr msg, TermPtr succ, TermPtr fail) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Unicast;
  t->first = std::move(dest);
  t->second = std::move(msg);
  t->next = {std::move(succ), std::move(fail)};
  return t;
}

TermPtr make_broadcast(Expr msg, TermPtr cont) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Broadcast;
  t->first = std::move(msg);
  t->next = {std::move(cont)};
  return t;
}

TermPtr make_groupcast(Expr dests, Expr msg, TermPtr cont) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Groupcast;
  t->first = std::move(dests);
  t->second = std::move(msg);
  t->next = {std::move(cont)};
  return t;
}

TermPtr make_send(Expr msg, TermPtr cont) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Send;
  t->first = std::move(msg);
  t->next = {std::move(cont)};
  return t;
}

TermPtr make_receive(std::string binder, TermPtr cont) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Receive;
  t->binder = std::move(binder);
  t->next = {std::move(cont)};
  return t;
}

TermPtr make_deliver(Expr data, TermPtr cont) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Deliver;
  t->first = std::move(data);
  t->next = {std::move(cont)};
  return t;
}

TermPtr make_choice(TermPtr left, TermPtr right) { return make(TermKind::Choice, {std::move(left), std::move(right)}); }

TermPtr make_call(std::string target) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Call;
  t->target = std::move(target);
  return t;
}

std::optional<VarId> StateSchema::find(std::string_view name) const {
  for (std::size_t k = 0; k < vars.size(); ++k)
    if (vars[k].name == name) return static_cast<VarId>(k);
  return std::nullopt;
}

VarId StateSchema::require(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw ModelError("unknown variable '" + std::string(name) + "'");
}

const ProcessDef* Specification::find(std::string_view name) const {
  for (const auto& p : processes)
    if (p.name == name) return &p;
  return nullptr;
}

const ProcessDef& Specification::require(std::string_view name) const {
  if (auto p = find(name)) return *p;
  throw ModelError("unknown process '" + std::string(name) + "'");
}

namespace {

TermPtr label_term(const TermPtr& t, const std::string& pn, std::uint32_t& counter) {
  auto copy = std::make_shared<Term>(*t);
  if (is_prefix(t->kind)) {
    if (t->label_hint) {
      copy->label = Label{pn, *t->label_hint};
    } else {
      copy->label = Label{pn, counter++};
    }
  }
  for (auto& n : copy->next) n = label_term(n, pn, counter);
  return copy;
}

void collect(const TermPtr& t, std::vector<Label>& out) {
  if (t->label) out.push_back(*t->label);
  for (const auto& n : t->next) collect(n, out);
}

Specification label_with(const Specification& spec, const std::string* fixed) {
  if (spec.labelled) throw ModelError("specification is already labelled");
  Specification out = spec;
  for (auto& p : out.processes) {
    std::uint32_t counter = 0;
    p.body = label_term(p.body, fixed ? *fixed : p.name, counter);
  }
  out.labelled = true;
  return out;
}

}  // namespace

Specification label_spec(const Specification& spec) { return label_with(spec, nullptr); }

Specification label_spec(const Specification& spec, const std::string& pn) { return label_with(spec, &pn); }

std::vector<Label> collect_labels(const Specification& spec) {
  std::vector<Label> out;
  for (const auto& p : spec.processes) collect(p.body, out);
  return out;
}

TermPtr strip_labels(const TermPtr& t) {
  auto copy = std::make_shared<Term>(*t);
  copy->label.reset();
  copy->label_hint.reset();
  for (auto& n : copy->next) n = strip_labels(n);
  return copy;
}

}  // namespace awn
