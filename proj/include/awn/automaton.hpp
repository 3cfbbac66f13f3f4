#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "awn/action.hpp"
#include "awn/global.hpp"

namespace awn {

template <class S>
struct Transition {
  Action action;
  S target;
};

/// A set of initial states plus a transition function. States must be
/// totally ordered, equality comparable and hashable via hash_value.
template <class S>
struct Automaton {
  using State = S;
  std::function<std::vector<S>()> init;
  std::function<std::vector<Transition<S>>(const S&)> step;
  /// Optional: every transition of `step` except Receive ones.
  std::function<std::vector<Transition<S>>(const S&)> step_internal;
  /// Optional: successors under Receive(m).
  std::function<std::vector<S>(const S&, const Message&)> receive;
  std::function<std::string(const S&)> render;
  std::function<std::vector<NodeView>(const S&)> nodes;
  /// True when some queue in the state sits at its bound.
  std::function<bool(const S&)> saturated;
  /// Optional: the global state sigma carried by the state (open systems).
  /// Without it, global predicates see the view built by global_view.
  std::function<GlobalState(const S&)> global;

  std::vector<Transition<S>> internal(const S& s) const {
    if (step_internal) return step_internal(s);
    std::vector<Transition<S>> out;
    for (auto& t : step(s))
      if (!std::holds_alternative<act::Receive>(t.action)) out.push_back(std::move(t));
    return out;
  }
  std::vector<S> on_receive(const S& s, const Message& m) const {
    if (receive) return receive(s, m);
    std::vector<S> out;
    for (auto& t : step(s))
      if (auto r = std::get_if<act::Receive>(&t.action); r && r->m == m) out.push_back(std::move(t.target));
    return out;
  }
};

}  // namespace awn
