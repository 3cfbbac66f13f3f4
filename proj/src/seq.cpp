#include "awn/seq.hpp"

#include <algorithm>

#include "awn/printer.hpp"

namespace awn {

std::uint64_t hash_value(const SeqState& s) { return mix64(hash_value(s.data), s.control); }

namespace {

Message eval_message(const DataState& xi, const Expr& e, const Domains& dom) {
  const Value v = eval_expr(xi, e, dom);
  if (std::holds_alternative<NoneValue>(v)) throw EvalError("cannot transmit 'none' (" + to_string(e) + ")");
  return as_msg(v);
}

void prefix_step(const Program& prog, const Domains& dom, const DataState& xi, TermId p, bool with_receive,
                 std::vector<Transition<SeqState>>& out) {
  const Term& t = prog.term(p);
  const auto& next = prog.children(p);
  switch (t.kind) {
    case TermKind::Assign: out.push_back({act::Tau{}, {apply_assignment(xi, t.updates, dom), next[0]}}); break;
    case TermKind::Guard:
      for (auto& x : eval_guard(xi, t.guard, dom)) out.push_back({act::Tau{}, {std::move(x), next[0]}});
      break;
    case TermKind::Unicast: {
      const Address d = as_addr(eval_expr(xi, t.first, dom));
      out.push_back({act::Unicast{d, eval_message(xi, t.second, dom)}, {xi, next[0]}});
      out.push_back({act::NotUnicast{d}, {xi, next[1]}});
      break;
    }
    case TermKind::Broadcast: out.push_back({act::Broadcast{eval_message(xi, t.first, dom)}, {xi, next[0]}}); break;
    case TermKind::Groupcast:
      out.push_back({act::Groupcast{as_addrset(eval_expr(xi, t.first, dom)), eval_message(xi, t.second, dom)},
                     {xi, next[0]}});
      break;
    case TermKind::Send: out.push_back({act::Send{eval_message(xi, t.first, dom)}, {xi, next[0]}}); break;
    case TermKind::Deliver: out.push_back({act::Deliver{as_nat(eval_expr(xi, t.first, dom))}, {xi, next[0]}}); break;
    case TermKind::Receive:
      if (!with_receive) break;
      for (const auto& m : dom.messages) {
        DataState x = xi;
        x.set(t.binder_var, m);
        out.push_back({act::Receive{m}, {std::move(x), next[0]}});
      }
      break;
    case TermKind::Choice:
    case TermKind::Call: break;
  }
}

}  // namespace

std::vector<Transition<SeqState>> seq_step(const Program& prog, const Domains& dom, const SeqState& s,
                                           bool with_receive) {
  std::vector<Transition<SeqState>> out;
  for (TermId p : prog.sterms(s.control)) prefix_step(prog, dom, s.data, p, with_receive, out);
  return out;
}

std::vector<SeqState> seq_receive(const Program& prog, const Domains& dom, const SeqState& s, const Message& m) {
  (void)dom;
  std::vector<SeqState> out;
  for (TermId p : prog.sterms(s.control)) {
    const Term& t = prog.term(p);
    if (t.kind != TermKind::Receive) continue;
    DataState x = s.data;
    x.set(t.binder_var, m);
    out.push_back({std::move(x), prog.children(p)[0]});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::vector<Value> init_values(const VarDecl& v, Address self, const Domains& dom, bool all_any) {
  switch (v.init) {
    case InitKind::Self: return {Addr{self}};
    case InitKind::Literal: return {eval_expr(DataState{}, v.literal, dom)};
    case InitKind::Any: break;
  }
  std::vector<Value> out;
  switch (v.type) {
    case Type::Nat:
      for (auto n : dom.arbitrary) out.emplace_back(Nat{dom.clamp(n)});
      break;
    case Type::Addr:
      for (auto n : dom.arbitrary) out.emplace_back(Addr{n});
      break;
    case Type::Msg: out.emplace_back(NoneValue{}); break;
    case Type::Bool:
      out.emplace_back(false);
      out.emplace_back(true);
      break;
    case Type::AddrSet: out.emplace_back(AddrSet{}); break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (!all_any) out.resize(1);
  return out;
}

}  // namespace

std::vector<DataState> initial_data(const StateSchema& schema, Address self, const Domains& dom) {
  std::vector<std::vector<Value>> acc{{}};
  for (const auto& v : schema.vars) {
    std::vector<std::vector<Value>> next;
    for (const auto& val : init_values(v, self, dom, true))
      for (const auto& prefix : acc) {
        auto row = prefix;
        row.push_back(val);
        next.push_back(std::move(row));
      }
    acc = std::move(next);
  }
  std::vector<DataState> out;
  for (auto& row : acc) out.emplace_back(std::move(row));
  std::sort(out.begin(), out.end());
  return out;
}

DataState default_data(const StateSchema& schema, const Domains& dom) {
  std::vector<Value> row;
  for (const auto& v : schema.vars) row.push_back(init_values(v, 0, dom, false).front());
  return DataState(std::move(row));
}

std::string render(const StateSchema& schema, const DataState& xi) {
  std::string s = "{";
  for (std::size_t k = 0; k < xi.size(); ++k) {
    if (k) s += ", ";
    s += (k < schema.vars.size() ? schema.vars[k].name : "?") + "=" + to_string(xi[static_cast<VarId>(k)]);
  }
  return s + "}";
}

std::string render(const Program& prog, const SeqState& s) {
  std::string labels;
  for (const auto& l : prog.labels_of(s.control)) labels += (labels.empty() ? "" : ",") + to_string(l);
  return "[" + labels + "] " + render(prog.spec().schema, s.data);
}

Automaton<SeqState> make_seq(std::shared_ptr<const Program> prog, std::string process, Address self, Domains dom) {
  Automaton<SeqState> a;
  const TermId body = prog->body(process);
  a.init = [prog, body, self, dom] {
    std::vector<SeqState> out;
    for (auto& xi : initial_data(prog->spec().schema, self, dom)) out.push_back({std::move(xi), body});
    return out;
  };
  a.step = [prog, dom](const SeqState& s) { return seq_step(*prog, dom, s, true); };
  a.step_internal = [prog, dom](const SeqState& s) { return seq_step(*prog, dom, s, false); };
  a.receive = [prog, dom](const SeqState& s, const Message& m) { return seq_receive(*prog, dom, s, m); };
  a.render = [prog](const SeqState& s) { return render(*prog, s); };
  a.nodes = [prog, self](const SeqState& s) {
    return std::vector<NodeView>{{self, &s.data, &prog->labels_of(s.control)}};
  };
  a.saturated = [](const SeqState&) { return false; };
  return a;
}

}  // namespace awn
