#pragma once

#include "awn/automaton.hpp"

namespace awn {

/// FIFO message buffer that keeps a protocol input enabled.
struct Queue {
  std::vector<Message> items;
  auto operator<=>(const Queue&) const = default;
  bool operator==(const Queue&) const = default;
};
std::uint64_t hash_value(const Queue& q);
std::string render(const Queue& q);

/// Receive(m) appends m for every domain message while the queue is below
/// `bound`; Send(head) pops the head. At the bound Receive is refused and the
/// state reports saturation.
Automaton<Queue> make_qmsg(const Domains& dom, std::size_t bound);

}  // namespace awn
