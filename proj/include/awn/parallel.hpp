#pragma once

#include "awn/automaton.hpp"

namespace awn {

/// State of `P <<< Q`: the left protocol and the right feeder.
template <class L, class R>
struct ParState {
  L left;
  R right;
  auto operator<=>(const ParState&) const = default;
  bool operator==(const ParState&) const = default;
};

template <class L, class R>
std::uint64_t hash_value(const ParState<L, R>& s) {
  return mix64(hash_value(s.left), hash_value(s.right));
}

/// Parallel composition: the left side acts alone on anything but Receive,
/// the right side alone on anything but Send, and a left Receive(m) meets a
/// right Send(m) as a Tau.
template <class L, class R>
Automaton<ParState<L, R>> parallel(Automaton<L> a, Automaton<R> b) {
  using S = ParState<L, R>;
  Automaton<S> out;
  out.init = [a, b] {
    std::vector<S> v;
    for (const auto& l : a.init())
      for (const auto& r : b.init()) v.push_back({l, r});
    return v;
  };
  auto without_receive = [a, b](const S& s) {
    std::vector<Transition<S>> v;
    for (auto& t : a.internal(s.left)) v.push_back({std::move(t.action), {std::move(t.target), s.right}});
    for (auto& t : b.internal(s.right)) {
      if (auto snd = std::get_if<act::Send>(&t.action)) {
        for (auto& l : a.on_receive(s.left, snd->m)) v.push_back({act::Tau{}, {std::move(l), t.target}});
      } else {
        v.push_back({std::move(t.action), {s.left, std::move(t.target)}});
      }
    }
    return v;
  };
  out.step_internal = without_receive;
  out.step = [a, b, without_receive](const S& s) {
    auto v = without_receive(s);
    for (auto& t : b.step(s.right))
      if (std::holds_alternative<act::Receive>(t.action)) v.push_back({std::move(t.action), {s.left, std::move(t.target)}});
    return v;
  };
  out.receive = [b](const S& s, const Message& m) {
    std::vector<S> v;
    for (auto& r : b.on_receive(s.right, m)) v.push_back({s.left, std::move(r)});
    return v;
  };
  out.render = [a, b](const S& s) { return a.render(s.left) + " <<< " + b.render(s.right); };
  out.nodes = [a, b](const S& s) {
    auto v = a.nodes(s.left);
    auto w = b.nodes(s.right);
    v.insert(v.end(), w.begin(), w.end());
    return v;
  };
  out.saturated = [a, b](const S& s) { return a.saturated(s.left) || b.saturated(s.right); };
  return out;
}

}  // namespace awn
