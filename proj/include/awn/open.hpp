#pragma once

#include <memory>
#include <set>

#include "awn/network.hpp"

namespace awn {

/// New sigma entries of one open transition, sorted by address. Every layer
/// lists its whole owned set, unchanged entries included.
using Updates = std::vector<std::pair<Address, DataState>>;

/// Entries of `g` at `owned`, unchanged.
Updates identity_updates(const GlobalState& g, AddrSet owned);
/// Union of updates over disjoint address sets.
Updates unite(const Updates& a, const Updates& b);
/// Entry for `a` in sorted updates; throws when absent.
const DataState& updated(const Updates& u, Address a);

template <class L>
struct OpenTransition {
  Action action;
  Updates owned;
  L local;
};

template <class L>
struct OpenInit {
  Updates owned;
  L local;
  auto operator<=>(const OpenInit&) const = default;
};

/// An automaton over (sigma, local). Transitions constrain only the owned
/// entries of sigma; unowned entries are left to the environment regime.
template <class L>
struct OpenAutomaton {
  using Local = L;
  AddrSet owned;
  std::function<std::vector<OpenInit<L>>()> init;
  std::function<std::vector<OpenTransition<L>>(const GlobalState&, const L&)> step;
  /// Optional: every transition of `step` except Receive ones.
  std::function<std::vector<OpenTransition<L>>(const GlobalState&, const L&)> step_internal;
  /// Optional: transitions under Receive(m).
  std::function<std::vector<OpenTransition<L>>(const GlobalState&, const L&, const Message&)> receive;
  std::function<std::string(const L&)> render;
  /// Control labels of each owned process.
  std::function<std::vector<std::pair<Address, const std::set<Label>*>>(const L&)> labels;
  std::function<bool(const L&)> saturated;

  std::vector<OpenTransition<L>> internal(const GlobalState& g, const L& s) const {
    if (step_internal) return step_internal(g, s);
    std::vector<OpenTransition<L>> out;
    for (auto& t : step(g, s))
      if (!std::holds_alternative<act::Receive>(t.action)) out.push_back(std::move(t));
    return out;
  }
  std::vector<OpenTransition<L>> on_receive(const GlobalState& g, const L& s, const Message& m) const {
    if (receive) return receive(g, s, m);
    std::vector<OpenTransition<L>> out;
    for (auto& t : step(g, s))
      if (auto r = std::get_if<act::Receive>(&t.action); r && r->m == m) out.push_back(std::move(t));
    return out;
  }
};

// --- sequential processes

/// Open sequential rules by direct recursion over the term: only sigma i is
/// read or written. Rules for prefixes of a kind in `disabled` are dropped
/// (used to build deliberately broken models).
std::vector<OpenTransition<TermId>> open_seq_step(const Program& prog, const Domains& dom, Address i,
                                                  const GlobalState& g, TermId p, bool with_receive = true,
                                                  const std::set<TermKind>& disabled = {});
std::vector<OpenTransition<TermId>> open_seq_receive(const Program& prog, Address i, const GlobalState& g, TermId p,
                                                     const Message& m, const std::set<TermKind>& disabled = {});

OpenAutomaton<TermId> make_oseq(std::shared_ptr<const Program> prog, std::string process, Address self, Domains dom,
                                std::set<TermKind> disabled = {});

// --- parallel composition with a purely local feeder

/// Only the left side constrains sigma; the right side (qmsg) is local.
template <class L, class R>
OpenAutomaton<ParState<L, R>> opar(OpenAutomaton<L> a, Automaton<R> b) {
  using S = ParState<L, R>;
  OpenAutomaton<S> out;
  out.owned = a.owned;
  out.init = [a, b] {
    std::vector<OpenInit<S>> v;
    for (const auto& l : a.init())
      for (const auto& r : b.init()) v.push_back({l.owned, {l.local, r}});
    return v;
  };
  auto without_receive = [a, b](const GlobalState& g, const S& s) {
    std::vector<OpenTransition<S>> v;
    for (auto& t : a.internal(g, s.left))
      v.push_back({std::move(t.action), std::move(t.owned), {std::move(t.local), s.right}});
    for (auto& t : b.internal(s.right)) {
      if (auto snd = std::get_if<act::Send>(&t.action)) {
        for (auto& l : a.on_receive(g, s.left, snd->m))
          v.push_back({act::Tau{}, std::move(l.owned), {std::move(l.local), t.target}});
      } else {
        v.push_back({std::move(t.action), identity_updates(g, a.owned), {s.left, std::move(t.target)}});
      }
    }
    return v;
  };
  out.step_internal = without_receive;
  out.step = [a, b, without_receive](const GlobalState& g, const S& s) {
    auto v = without_receive(g, s);
    for (auto& t : b.step(s.right))
      if (std::holds_alternative<act::Receive>(t.action))
        v.push_back({std::move(t.action), identity_updates(g, a.owned), {s.left, std::move(t.target)}});
    return v;
  };
  out.receive = [a, b](const GlobalState& g, const S& s, const Message& m) {
    std::vector<OpenTransition<S>> v;
    for (auto& r : b.on_receive(s.right, m))
      v.push_back({act::Receive{m}, identity_updates(g, a.owned), {s.left, std::move(r)}});
    return v;
  };
  out.render = [a, b](const S& s) { return a.render(s.left) + " <<< " + b.render(s.right); };
  out.labels = [a](const S& s) { return a.labels(s.left); };
  out.saturated = [a, b](const S& s) { return a.saturated(s.left) || b.saturated(s.right); };
  return out;
}

// --- nodes

/// Node rules over an open process. Arrive(∅,{i}) and topology changes stutter:
/// the owned entry stays as it is.
template <class P>
std::vector<OpenTransition<NodeState<P>>> onode_internal(const OpenAutomaton<P>& inner, const GlobalState& g,
                                                         const NodeState<P>& n) {
  std::vector<OpenTransition<NodeState<P>>> out;
  for (auto& t : inner.internal(g, n.inner)) {
    NodeState<P> next{n.address, std::move(t.local), n.range};
    std::visit(
        [&](const auto& a) {
          using A = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<A, act::Broadcast>) {
            out.push_back({act::StarCast{n.range, a.m}, std::move(t.owned), std::move(next)});
          } else if constexpr (std::is_same_v<A, act::Groupcast>) {
            out.push_back({act::StarCast{n.range & a.dests, a.m}, std::move(t.owned), std::move(next)});
          } else if constexpr (std::is_same_v<A, act::Unicast>) {
            if (n.range.contains(a.dest))
              out.push_back({act::StarCast{AddrSet{a.dest}, a.m}, std::move(t.owned), std::move(next)});
          } else if constexpr (std::is_same_v<A, act::NotUnicast>) {
            if (!n.range.contains(a.dest)) out.push_back({act::Tau{}, std::move(t.owned), std::move(next)});
          } else if constexpr (std::is_same_v<A, act::Deliver>) {
            out.push_back({act::NodeDeliver{n.address, a.data}, std::move(t.owned), std::move(next)});
          } else if constexpr (std::is_same_v<A, act::Tau>) {
            out.push_back({act::Tau{}, std::move(t.owned), std::move(next)});
          }
        },
        t.action);
  }
  return out;
}

template <class P>
std::vector<OpenTransition<NodeState<P>>> onode_receive(const OpenAutomaton<P>& inner, const GlobalState& g,
                                                        const NodeState<P>& n, const Message& m) {
  std::vector<OpenTransition<NodeState<P>>> out;
  for (auto& t : inner.on_receive(g, n.inner, m))
    out.push_back({act::Arrive{AddrSet{n.address}, {}, m}, std::move(t.owned), {n.address, std::move(t.local), n.range}});
  return out;
}

/// `messages` are the arrivals offered to the environment.
template <class P>
std::vector<OpenTransition<NodeState<P>>> onode_step(const OpenAutomaton<P>& inner, const std::vector<Message>& messages,
                                                     const Topology& topo, const GlobalState& g, const NodeState<P>& n) {
  auto out = onode_internal(inner, g, n);
  const AddrSet self{n.address};
  const Updates same = identity_updates(g, self);
  for (const auto& m : messages) {
    for (auto& t : onode_receive(inner, g, n, m)) out.push_back(std::move(t));
    out.push_back({act::Arrive{{}, self, m}, same, n});
  }
  for (const auto& [a, b] : topology_pairs(topo)) {
    for (const Action change : {Action{act::Connect{a, b}}, Action{act::Disconnect{a, b}}}) {
      NodeState<P> next = n;
      next.range = apply_topology(n.address, n.range, change);
      out.push_back({change, same, std::move(next)});
    }
  }
  return out;
}

template <class P>
OpenAutomaton<NodeState<P>> onode(OpenAutomaton<P> inner, Address address, AddrSet range,
                                  std::vector<Message> messages, Topology topo) {
  using S = NodeState<P>;
  if (inner.owned != AddrSet{address}) throw ModelError("open node must own exactly its own address");
  OpenAutomaton<S> a;
  a.owned = inner.owned;
  a.init = [inner, address, range] {
    std::vector<OpenInit<S>> v;
    for (auto& p : inner.init()) v.push_back({std::move(p.owned), {address, std::move(p.local), range}});
    return v;
  };
  a.step = [inner, messages, topo](const GlobalState& g, const S& n) { return onode_step(inner, messages, topo, g, n); };
  a.render = [inner](const S& n) {
    return "<#" + std::to_string(n.address) + " : " + inner.render(n.inner) + " : " + to_string(n.range) + ">";
  };
  a.labels = [inner](const S& n) { return inner.labels(n.inner); };
  a.saturated = [inner](const S& n) { return inner.saturated(n.inner); };
  return a;
}

// --- networks

/// Local part of an open process: control term and queue.
using OProc = ParState<TermId, Queue>;
using ONode = NodeState<OProc>;

struct ONet {
  std::vector<ONode> leaves;
  auto operator<=>(const ONet&) const = default;
  bool operator==(const ONet&) const = default;
};
std::uint64_t hash_value(const ONet& s);

struct OClosed {
  ONet net;
  std::uint64_t injected = 0;
  auto operator<=>(const OClosed&) const = default;
  bool operator==(const OClosed&) const = default;
};
std::uint64_t hash_value(const OClosed& s);

using OpenProcessFactory = std::function<OpenAutomaton<OProc>(Address)>;

/// Open counterpart of Network: the owned set of a subtree is its address
/// set, and synchronised moves unite the updates of both sides.
class OpenNetwork {
 public:
  /// `messages` are the arrivals the environment may offer.
  OpenNetwork(NetTree tree, const OpenProcessFactory& np, Domains dom, Topology topo, std::vector<Message> messages);

  const NetTree& tree() const { return tree_; }
  AddrSet owned() const { return tree_.ips(); }
  const OpenAutomaton<OProc>& process(std::size_t leaf) const { return procs_.at(leaf); }

  std::vector<OpenInit<ONet>> init() const;
  std::vector<OpenTransition<ONet>> pnet_step(const GlobalState& g, const ONet& s) const;
  /// Closed rules over pnet_step: *cast becomes Tau, arrivals are dropped
  /// except budgeted injections. Updates follow the owned-set discipline.
  std::vector<OpenTransition<OClosed>> closed_step_literal(const GlobalState& g, const OClosed& s,
                                                           const std::vector<Injection>& budget) const;
  /// The same transitions computed directly over the leaves.
  std::vector<OpenTransition<OClosed>> closed_step(const GlobalState& g, const OClosed& s,
                                                   const std::vector<Injection>& budget) const;

  std::string render(const ONet& s) const;
  std::vector<std::pair<Address, const std::set<Label>*>> labels(const ONet& s) const;
  bool saturated(const ONet& s) const;

 private:
  struct Move {
    Action action;
    Updates owned;
    std::vector<ONode> leaves;
  };
  std::vector<Move> subnet(int vertex, const GlobalState& g, const ONet& s) const;

  NetTree tree_;
  std::vector<OpenAutomaton<OProc>> procs_;
  Domains dom_;
  Topology topo_;
  std::vector<Message> messages_;
};

OpenAutomaton<ONet> make_opnet(std::shared_ptr<const OpenNetwork> net);
OpenAutomaton<OClosed> make_oclosed(std::shared_ptr<const OpenNetwork> net, std::vector<Injection> budget);

/// The open per-node process: the open protocol at `self` fed by qmsg.
/// The queue offers receives of `messages`.
OpenProcessFactory open_protocol_with_queue(std::shared_ptr<const Program> prog, std::string process, Domains dom,
                                            std::size_t queue_bound, std::vector<Message> messages);

}  // namespace awn
