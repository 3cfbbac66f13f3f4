#include "awn/qmsg.hpp"

#include <stdexcept>

namespace awn {

std::uint64_t hash_value(const Queue& q) {
  std::uint64_t h = q.items.size();
  for (const auto& m : q.items) h = mix64(h, hash_value(m));
  return h;
}

std::string render(const Queue& q) {
  std::string s = "[";
  for (std::size_t k = 0; k < q.items.size(); ++k) s += (k ? ", " : "") + to_string(q.items[k]);
  return s + "]";
}

Automaton<Queue> make_qmsg(const Domains& dom, std::size_t bound) {
  if (bound < 1) throw std::invalid_argument("queue bound must be at least 1");
  Automaton<Queue> a;
  a.init = [] { return std::vector<Queue>{Queue{}}; };
  a.step_internal = [](const Queue& q) {
    std::vector<Transition<Queue>> out;
    if (!q.items.empty()) {
      Queue rest;
      rest.items.assign(q.items.begin() + 1, q.items.end());
      out.push_back({act::Send{q.items.front()}, std::move(rest)});
    }
    return out;
  };
  a.receive = [bound](const Queue& q, const Message& m) {
    std::vector<Queue> out;
    if (q.items.size() < bound) {
      Queue n = q;
      n.items.push_back(m);
      out.push_back(std::move(n));
    }
    return out;
  };
  a.step = [dom, bound, internal = a.step_internal](const Queue& q) {
    auto out = internal(q);
    if (q.items.size() < bound)
      for (const auto& m : dom.messages) {
        Queue n = q;
        n.items.push_back(m);
        out.push_back({act::Receive{m}, std::move(n)});
      }
    return out;
  };
  a.render = [](const Queue& q) { return render(q); };
  a.nodes = [](const Queue&) { return std::vector<NodeView>{}; };
  a.saturated = [bound](const Queue& q) { return q.items.size() >= bound; };
  return a;
}

}  // namespace awn
