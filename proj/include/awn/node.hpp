#pragma once

#include "awn/automaton.hpp"

namespace awn {

/// A node <i : P : R>: address, inner process state and neighbour set.
template <class P>
struct NodeState {
  Address address = 0;
  P inner;
  AddrSet range;
  auto operator<=>(const NodeState&) const = default;
  bool operator==(const NodeState&) const = default;
};

template <class P>
std::uint64_t hash_value(const NodeState<P>& n) {
  return mix64(mix64(n.address, n.range.bits()), hash_value(n.inner));
}

/// Topology changes offered at node and network level.
struct Topology {
  AddrSet universe;
  bool dynamic = true;
};

/// Ordered pairs (a, b), a != b, of the universe; empty for static topology.
std::vector<std::pair<Address, Address>> topology_pairs(const Topology& topo);

/// Effect of Connect/Disconnect(a, b) on the neighbour set of node i.
AddrSet apply_topology(Address i, AddrSet range, const Action& a);

/// Node transitions other than Arrive, Connect and Disconnect: casts are
/// filtered by the range, unicast failure becomes Tau only off-range, and
/// delivery is tagged with the address.
template <class P>
std::vector<Transition<NodeState<P>>> node_internal(const Automaton<P>& inner, const NodeState<P>& n) {
  std::vector<Transition<NodeState<P>>> out;
  for (auto& t : inner.internal(n.inner)) {
    NodeState<P> next{n.address, std::move(t.target), n.range};
    std::visit(
        [&](const auto& a) {
          using A = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<A, act::Broadcast>) {
            out.push_back({act::StarCast{n.range, a.m}, std::move(next)});
          } else if constexpr (std::is_same_v<A, act::Groupcast>) {
            out.push_back({act::StarCast{n.range & a.dests, a.m}, std::move(next)});
          } else if constexpr (std::is_same_v<A, act::Unicast>) {
            if (n.range.contains(a.dest)) out.push_back({act::StarCast{AddrSet{a.dest}, a.m}, std::move(next)});
          } else if constexpr (std::is_same_v<A, act::NotUnicast>) {
            if (!n.range.contains(a.dest)) out.push_back({act::Tau{}, std::move(next)});
          } else if constexpr (std::is_same_v<A, act::Deliver>) {
            out.push_back({act::NodeDeliver{n.address, a.data}, std::move(next)});
          } else if constexpr (std::is_same_v<A, act::Tau>) {
            out.push_back({act::Tau{}, std::move(next)});
          }
          // Send and network-level actions have no node rule.
        },
        t.action);
  }
  return out;
}

/// Successors of the node under {i}!{}:arrive(m).
template <class P>
std::vector<NodeState<P>> node_receive(const Automaton<P>& inner, const NodeState<P>& n, const Message& m) {
  std::vector<NodeState<P>> out;
  for (auto& p : inner.on_receive(n.inner, m)) out.push_back({n.address, std::move(p), n.range});
  return out;
}

/// All node rules, including the stuttering {}!{i}:arrive(m) and every
/// offered topology change.
template <class P>
std::vector<Transition<NodeState<P>>> node_step(const Automaton<P>& inner, const Domains& dom, const Topology& topo,
                                                const NodeState<P>& n) {
  auto out = node_internal(inner, n);
  const AddrSet self{n.address};
  for (const auto& m : dom.messages) {
    for (auto& s : node_receive(inner, n, m)) out.push_back({act::Arrive{self, {}, m}, std::move(s)});
    out.push_back({act::Arrive{{}, self, m}, n});
  }
  for (const auto& [a, b] : topology_pairs(topo)) {
    for (const Action change : {Action{act::Connect{a, b}}, Action{act::Disconnect{a, b}}}) {
      NodeState<P> next = n;
      next.range = apply_topology(n.address, n.range, change);
      out.push_back({change, std::move(next)});
    }
  }
  return out;
}

template <class P>
std::string render_node(const Automaton<P>& inner, const NodeState<P>& n) {
  return "<#" + std::to_string(n.address) + " : " + inner.render(n.inner) + " : " + to_string(n.range) + ">";
}

template <class P>
Automaton<NodeState<P>> make_node(Automaton<P> inner, Address address, AddrSet range, Domains dom, Topology topo) {
  using S = NodeState<P>;
  Automaton<S> a;
  a.init = [inner, address, range] {
    std::vector<S> v;
    for (auto& p : inner.init()) v.push_back({address, std::move(p), range});
    return v;
  };
  a.step = [inner, dom, topo](const S& n) { return node_step(inner, dom, topo, n); };
  a.render = [inner](const S& n) { return render_node(inner, n); };
  a.nodes = [inner](const S& n) { return inner.nodes(n.inner); };
  a.saturated = [inner](const S& n) { return inner.saturated(n.inner); };
  return a;
}

}  // namespace awn
