#include "awn/open.hpp"

#include <algorithm>

namespace awn {

Updates identity_updates(const GlobalState& g, AddrSet owned) {
  Updates u;
  for (Address a : owned.members()) u.emplace_back(a, g.at(a));
  return u;
}

Updates unite(const Updates& a, const Updates& b) {
  Updates u;
  u.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u),
             [](const auto& x, const auto& y) { return x.first < y.first; });
  for (std::size_t k = 1; k < u.size(); ++k)
    if (u[k - 1].first == u[k].first) throw ModelError("overlapping owned sets in open composition");
  return u;
}

const DataState& updated(const Updates& u, Address a) {
  for (const auto& [b, xi] : u)
    if (a == b) return xi;
  throw ModelError("open transition does not update #" + std::to_string(a));
}

namespace {

/// Adds unchanged entries for owned addresses the updates do not mention.
Updates complete(Updates u, const GlobalState& g, AddrSet owned) {
  AddrSet have;
  for (const auto& e : u) have.insert(e.first);
  const AddrSet rest = owned - have;
  if (rest.empty()) return u;
  return unite(u, identity_updates(g, rest));
}

Message message_of(const DataState& xi, const Expr& e, const Domains& dom) {
  const Value v = eval_expr(xi, e, dom);
  if (std::holds_alternative<NoneValue>(v)) throw EvalError("cannot transmit 'none'");
  return as_msg(v);
}

void oseq(const Program& prog, const Domains& dom, Address i, const GlobalState& g, TermId p, bool with_receive,
          const std::set<TermKind>& disabled, std::vector<OpenTransition<TermId>>& out) {
  const Term& t = prog.term(p);
  if (t.kind == TermKind::Choice) {
    for (TermId c : prog.children(p)) oseq(prog, dom, i, g, c, with_receive, disabled, out);
    return;
  }
  if (t.kind == TermKind::Call) {
    oseq(prog, dom, i, g, prog.body(t.target), with_receive, disabled, out);
    return;
  }
  if (disabled.count(t.kind)) return;
  const DataState& xi = g.at(i);
  const auto& next = prog.children(p);
  auto put = [&](Action a, DataState x, TermId q) { out.push_back({std::move(a), Updates{{i, std::move(x)}}, q}); };
  switch (t.kind) {
    case TermKind::Assign: put(act::Tau{}, apply_assignment(xi, t.updates, dom), next[0]); break;
    case TermKind::Guard:
      for (auto& x : eval_guard(xi, t.guard, dom)) put(act::Tau{}, std::move(x), next[0]);
      break;
    case TermKind::Unicast: {
      const Address d = as_addr(eval_expr(xi, t.first, dom));
      put(act::Unicast{d, message_of(xi, t.second, dom)}, xi, next[0]);
      put(act::NotUnicast{d}, xi, next[1]);
      break;
    }
    case TermKind::Broadcast: put(act::Broadcast{message_of(xi, t.first, dom)}, xi, next[0]); break;
    case TermKind::Groupcast:
      put(act::Groupcast{as_addrset(eval_expr(xi, t.first, dom)), message_of(xi, t.second, dom)}, xi, next[0]);
      break;
    case TermKind::Send: put(act::Send{message_of(xi, t.first, dom)}, xi, next[0]); break;
    case TermKind::Deliver: put(act::Deliver{as_nat(eval_expr(xi, t.first, dom))}, xi, next[0]); break;
    case TermKind::Receive:
      if (!with_receive) break;
      for (const auto& m : dom.messages) {
        DataState x = xi;
        x.set(t.binder_var, m);
        put(act::Receive{m}, std::move(x), next[0]);
      }
      break;
    case TermKind::Choice:
    case TermKind::Call: break;
  }
}

void oseq_receive(const Program& prog, Address i, const GlobalState& g, TermId p, const Message& m,
                  const std::set<TermKind>& disabled, std::vector<OpenTransition<TermId>>& out) {
  const Term& t = prog.term(p);
  if (t.kind == TermKind::Choice) {
    for (TermId c : prog.children(p)) oseq_receive(prog, i, g, c, m, disabled, out);
  } else if (t.kind == TermKind::Call) {
    oseq_receive(prog, i, g, prog.body(t.target), m, disabled, out);
  } else if (t.kind == TermKind::Receive && !disabled.count(t.kind)) {
    DataState x = g.at(i);
    x.set(t.binder_var, m);
    out.push_back({act::Receive{m}, Updates{{i, std::move(x)}}, prog.children(p)[0]});
  }
}

void require_wellformed(const Program& prog) {
  if (!prog.wellformed()) throw ModelError("open rules need a well-formed specification");
}

}  // namespace

std::vector<OpenTransition<TermId>> open_seq_step(const Program& prog, const Domains& dom, Address i,
                                                  const GlobalState& g, TermId p, bool with_receive,
                                                  const std::set<TermKind>& disabled) {
  require_wellformed(prog);
  std::vector<OpenTransition<TermId>> out;
  oseq(prog, dom, i, g, p, with_receive, disabled, out);
  return out;
}

std::vector<OpenTransition<TermId>> open_seq_receive(const Program& prog, Address i, const GlobalState& g, TermId p,
                                                     const Message& m, const std::set<TermKind>& disabled) {
  require_wellformed(prog);
  std::vector<OpenTransition<TermId>> out;
  oseq_receive(prog, i, g, p, m, disabled, out);
  return out;
}

OpenAutomaton<TermId> make_oseq(std::shared_ptr<const Program> prog, std::string process, Address self, Domains dom,
                                std::set<TermKind> disabled) {
  require_wellformed(*prog);
  OpenAutomaton<TermId> a;
  a.owned = AddrSet{self};
  const TermId body = prog->body(process);
  a.init = [prog, body, self, dom] {
    std::vector<OpenInit<TermId>> v;
    for (auto& xi : initial_data(prog->spec().schema, self, dom)) v.push_back({Updates{{self, std::move(xi)}}, body});
    return v;
  };
  a.step = [prog, dom, self, disabled](const GlobalState& g, const TermId& p) {
    return open_seq_step(*prog, dom, self, g, p, true, disabled);
  };
  a.step_internal = [prog, dom, self, disabled](const GlobalState& g, const TermId& p) {
    return open_seq_step(*prog, dom, self, g, p, false, disabled);
  };
  a.receive = [prog, self, disabled](const GlobalState& g, const TermId& p, const Message& m) {
    return open_seq_receive(*prog, self, g, p, m, disabled);
  };
  a.render = [prog](const TermId& p) {
    std::string labels;
    for (const auto& l : prog->labels_of(p)) labels += (labels.empty() ? "" : ",") + to_string(l);
    return "[" + labels + "]";
  };
  a.labels = [prog, self](const TermId& p) {
    return std::vector<std::pair<Address, const std::set<Label>*>>{{self, &prog->labels_of(p)}};
  };
  a.saturated = [](const TermId&) { return false; };
  return a;
}

// --- networks

std::uint64_t hash_value(const ONet& s) {
  std::uint64_t h = s.leaves.size();
  for (const auto& n : s.leaves) h = mix64(h, hash_value(n));
  return h;
}

std::uint64_t hash_value(const OClosed& s) { return mix64(hash_value(s.net), s.injected); }

OpenNetwork::OpenNetwork(NetTree tree, const OpenProcessFactory& np, Domains dom, Topology topo,
                         std::vector<Message> messages)
    : tree_(std::move(tree)), dom_(std::move(dom)), topo_(topo), messages_(std::move(messages)) {
  if (tree_.root < 0) throw ModelError("empty net tree");
  AddrSet seen;
  for (const auto& [a, r] : tree_.leaves()) {
    if (seen.contains(a)) throw ModelError("net tree has duplicate address #" + std::to_string(a));
    seen.insert(a);
    procs_.push_back(np(a));
    if (procs_.back().owned != AddrSet{a}) throw ModelError("open process must own exactly its node address");
  }
}

std::vector<OpenInit<ONet>> OpenNetwork::init() const {
  std::vector<OpenInit<ONet>> acc{OpenInit<ONet>{}};
  const auto leaves = tree_.leaves();
  for (std::size_t k = 0; k < leaves.size(); ++k) {
    std::vector<OpenInit<ONet>> next;
    for (const auto& p : procs_[k].init())
      for (const auto& s : acc) {
        OpenInit<ONet> n{unite(s.owned, p.owned), s.local};
        n.local.leaves.push_back({leaves[k].first, p.local, leaves[k].second});
        next.push_back(std::move(n));
      }
    acc = std::move(next);
  }
  std::sort(acc.begin(), acc.end());
  return acc;
}

namespace {

std::vector<ONode> join(const std::vector<ONode>& a, const std::vector<ONode>& b) {
  std::vector<ONode> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

bool accepts(const act::StarCast& c, const act::Arrive& a) {
  return c.m == a.m && a.h.subset_of(c.range) && a.k.disjoint(c.range);
}

}  // namespace

std::vector<OpenNetwork::Move> OpenNetwork::subnet(int vertex, const GlobalState& g, const ONet& s) const {
  const auto& v = tree_.vertices.at(static_cast<std::size_t>(vertex));
  std::vector<Move> out;
  if (v.leaf) {
    for (auto& t : onode_step(procs_[v.lo], dom_.messages, topo_, g, s.leaves[v.lo]))
      out.push_back({std::move(t.action), std::move(t.owned), {std::move(t.local)}});
    return out;
  }
  const auto& lv = tree_.vertices.at(static_cast<std::size_t>(v.left));
  const auto& rv = tree_.vertices.at(static_cast<std::size_t>(v.right));
  const auto left = subnet(v.left, g, s);
  const auto right = subnet(v.right, g, s);
  const std::vector<ONode> left_same(s.leaves.begin() + static_cast<std::ptrdiff_t>(lv.lo),
                                     s.leaves.begin() + static_cast<std::ptrdiff_t>(lv.hi));
  const std::vector<ONode> right_same(s.leaves.begin() + static_cast<std::ptrdiff_t>(rv.lo),
                                      s.leaves.begin() + static_cast<std::ptrdiff_t>(rv.hi));
  const Updates left_id = identity_updates(g, tree_.ips(v.left));
  const Updates right_id = identity_updates(g, tree_.ips(v.right));

  for (const auto& l : left) {
    if (auto c = std::get_if<act::StarCast>(&l.action)) {
      for (const auto& r : right)
        if (auto y = std::get_if<act::Arrive>(&r.action); y && accepts(*c, *y))
          out.push_back({l.action, unite(l.owned, r.owned), join(l.leaves, r.leaves)});
    } else if (auto x = std::get_if<act::Arrive>(&l.action)) {
      for (const auto& r : right)
        if (auto y = std::get_if<act::Arrive>(&r.action); y && y->m == x->m)
          out.push_back({act::Arrive{x->h | y->h, x->k | y->k, x->m}, unite(l.owned, r.owned), join(l.leaves, r.leaves)});
    } else if (std::holds_alternative<act::Connect>(l.action) || std::holds_alternative<act::Disconnect>(l.action)) {
      for (const auto& r : right)
        if (r.action == l.action) out.push_back({l.action, unite(l.owned, r.owned), join(l.leaves, r.leaves)});
    } else {
      out.push_back({l.action, unite(l.owned, right_id), join(l.leaves, right_same)});
    }
  }
  for (const auto& r : right) {
    if (auto c = std::get_if<act::StarCast>(&r.action)) {
      for (const auto& l : left)
        if (auto x = std::get_if<act::Arrive>(&l.action); x && accepts(*c, *x))
          out.push_back({r.action, unite(l.owned, r.owned), join(l.leaves, r.leaves)});
    } else if (!std::holds_alternative<act::Arrive>(r.action) && !std::holds_alternative<act::Connect>(r.action) &&
               !std::holds_alternative<act::Disconnect>(r.action)) {
      out.push_back({r.action, unite(left_id, r.owned), join(left_same, r.leaves)});
    }
  }
  return out;
}

std::vector<OpenTransition<ONet>> OpenNetwork::pnet_step(const GlobalState& g, const ONet& s) const {
  std::vector<OpenTransition<ONet>> out;
  for (auto& m : subnet(tree_.root, g, s)) {
    // unpaired arrivals come from the environment, which only offers messages_
    if (auto a = std::get_if<act::Arrive>(&m.action);
        a && std::find(messages_.begin(), messages_.end(), a->m) == messages_.end())
      continue;
    out.push_back({std::move(m.action), std::move(m.owned), ONet{std::move(m.leaves)}});
  }
  return out;
}

std::vector<OpenTransition<OClosed>> OpenNetwork::closed_step_literal(const GlobalState& g, const OClosed& s,
                                                                      const std::vector<Injection>& budget) const {
  std::vector<OpenTransition<OClosed>> out;
  const AddrSet ips = tree_.ips();
  for (auto& m : subnet(tree_.root, g, s.net)) {
    if (std::holds_alternative<act::StarCast>(m.action)) {
      out.push_back({act::Tau{}, std::move(m.owned), {ONet{std::move(m.leaves)}, s.injected}});
    } else if (auto a = std::get_if<act::Arrive>(&m.action)) {
      if (a->h.size() != 1 || a->m.kind != Message::Kind::NewPkt) continue;
      const Address i = a->h.members().front();
      for (std::size_t k = 0; k < budget.size(); ++k) {
        const auto& inj = budget[k];
        if ((s.injected >> k) & 1u) continue;
        if (inj.node == i && a->k == ips - a->h && a->m == Message::newpkt(inj.data, inj.dst))
          out.push_back({act::NewPkt{i, inj.data, inj.dst}, m.owned, {ONet{m.leaves}, s.injected | (std::uint64_t{1} << k)}});
      }
    } else {
      out.push_back({std::move(m.action), std::move(m.owned), {ONet{std::move(m.leaves)}, s.injected}});
    }
  }
  return out;
}

std::vector<OpenTransition<OClosed>> OpenNetwork::closed_step(const GlobalState& g, const OClosed& s,
                                                              const std::vector<Injection>& budget) const {
  std::vector<OpenTransition<OClosed>> out;
  const auto& leaves = s.net.leaves;
  const std::size_t n = leaves.size();
  const AddrSet ips = tree_.ips();
  for (std::size_t k = 0; k < n; ++k) {
    for (auto& t : onode_internal(procs_[k], g, leaves[k])) {
      if (auto c = std::get_if<act::StarCast>(&t.action)) {
        struct Partial {
          Updates owned;
          ONet net;
        };
        std::vector<Partial> acc{{std::move(t.owned), s.net}};
        acc.front().net.leaves[k] = std::move(t.local);
        for (std::size_t j = 0; j < n && !acc.empty(); ++j) {
          if (j == k || !c->range.contains(leaves[j].address)) continue;
          const auto options = onode_receive(procs_[j], g, leaves[j], c->m);
          std::vector<Partial> next;
          for (const auto& base : acc)
            for (const auto& o : options) {
              Partial x{unite(base.owned, o.owned), base.net};
              x.net.leaves[j] = o.local;
              next.push_back(std::move(x));
            }
          acc = std::move(next);
        }
        for (auto& x : acc) out.push_back({act::Tau{}, complete(std::move(x.owned), g, ips), {std::move(x.net), s.injected}});
      } else {
        ONet x = s.net;
        x.leaves[k] = std::move(t.local);
        out.push_back({std::move(t.action), complete(std::move(t.owned), g, ips), {std::move(x), s.injected}});
      }
    }
  }
  for (const auto& [a, b] : topology_pairs(topo_)) {
    for (const Action change : {Action{act::Connect{a, b}}, Action{act::Disconnect{a, b}}}) {
      ONet x = s.net;
      for (auto& leaf : x.leaves) leaf.range = apply_topology(leaf.address, leaf.range, change);
      out.push_back({change, identity_updates(g, ips), {std::move(x), s.injected}});
    }
  }
  for (std::size_t b = 0; b < budget.size(); ++b) {
    if ((s.injected >> b) & 1u) continue;
    const auto& inj = budget[b];
    for (std::size_t k = 0; k < n; ++k) {
      if (leaves[k].address != inj.node) continue;
      for (auto& o : onode_receive(procs_[k], g, leaves[k], Message::newpkt(inj.data, inj.dst))) {
        ONet x = s.net;
        x.leaves[k] = std::move(o.local);
        out.push_back({act::NewPkt{inj.node, inj.data, inj.dst}, complete(std::move(o.owned), g, ips),
                       {std::move(x), s.injected | (std::uint64_t{1} << b)}});
      }
    }
  }
  return out;
}

std::string OpenNetwork::render(const ONet& s) const {
  std::string out;
  for (std::size_t k = 0; k < s.leaves.size(); ++k) {
    const auto& n = s.leaves[k];
    if (k) out += " || ";
    out += "<#" + std::to_string(n.address) + " : " + procs_[k].render(n.inner) + " : " + to_string(n.range) + ">";
  }
  return out;
}

std::vector<std::pair<Address, const std::set<Label>*>> OpenNetwork::labels(const ONet& s) const {
  std::vector<std::pair<Address, const std::set<Label>*>> out;
  for (std::size_t k = 0; k < s.leaves.size(); ++k) {
    auto v = procs_[k].labels(s.leaves[k].inner);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

bool OpenNetwork::saturated(const ONet& s) const {
  for (std::size_t k = 0; k < s.leaves.size(); ++k)
    if (procs_[k].saturated(s.leaves[k].inner)) return true;
  return false;
}

OpenAutomaton<ONet> make_opnet(std::shared_ptr<const OpenNetwork> net) {
  OpenAutomaton<ONet> a;
  a.owned = net->owned();
  a.init = [net] { return net->init(); };
  a.step = [net](const GlobalState& g, const ONet& s) { return net->pnet_step(g, s); };
  a.render = [net](const ONet& s) { return net->render(s); };
  a.labels = [net](const ONet& s) { return net->labels(s); };
  a.saturated = [net](const ONet& s) { return net->saturated(s); };
  return a;
}

OpenAutomaton<OClosed> make_oclosed(std::shared_ptr<const OpenNetwork> net, std::vector<Injection> budget) {
  if (budget.size() > 64) throw ModelError("injection budget exceeds 64 entries");
  OpenAutomaton<OClosed> a;
  a.owned = net->owned();
  a.init = [net] {
    std::vector<OpenInit<OClosed>> v;
    for (auto& s : net->init()) v.push_back({std::move(s.owned), {std::move(s.local), 0}});
    return v;
  };
  a.step = [net, budget](const GlobalState& g, const OClosed& s) { return net->closed_step(g, s, budget); };
  a.render = [net, budget](const OClosed& s) {
    std::string used;
    for (std::size_t k = 0; k < budget.size(); ++k) used += ((s.injected >> k) & 1u) ? '1' : '0';
    return net->render(s.net) + (budget.empty() ? "" : " [injected " + used + "]");
  };
  a.labels = [net](const OClosed& s) { return net->labels(s.net); };
  a.saturated = [net](const OClosed& s) { return net->saturated(s.net); };
  return a;
}

OpenProcessFactory open_protocol_with_queue(std::shared_ptr<const Program> prog, std::string process, Domains dom,
                                            std::size_t queue_bound, std::vector<Message> messages) {
  Domains qdom = dom;
  qdom.messages = std::move(messages);
  return [prog, process, dom, qdom, queue_bound](Address self) {
    return opar(make_oseq(prog, process, self, dom), make_qmsg(qdom, queue_bound));
  };
}

}  // namespace awn
