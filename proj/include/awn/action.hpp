#pragma once

#include <string>
#include <variant>

#include "awn/value.hpp"

namespace awn {

namespace act {

// process level
struct Tau {
  auto operator<=>(const Tau&) const = default;
};
struct Receive {
  Message m;
  auto operator<=>(const Receive&) const = default;
};
struct Send {
  Message m;
  auto operator<=>(const Send&) const = default;
};
struct Deliver {
  std::uint32_t data = 0;
  auto operator<=>(const Deliver&) const = default;
};
struct Broadcast {
  Message m;
  auto operator<=>(const Broadcast&) const = default;
};
struct Groupcast {
  AddrSet dests;
  Message m;
  auto operator<=>(const Groupcast&) const = default;
};
struct Unicast {
  Address dest = 0;
  Message m;
  auto operator<=>(const Unicast&) const = default;
};
struct NotUnicast {
  Address dest = 0;
  auto operator<=>(const NotUnicast&) const = default;
};

// node and network level
struct StarCast {
  AddrSet range;
  Message m;
  auto operator<=>(const StarCast&) const = default;
};
struct Arrive {
  AddrSet h;  // received
  AddrSet k;  // did not receive
  Message m;
  auto operator<=>(const Arrive&) const = default;
};
struct Connect {
  Address a = 0, b = 0;
  auto operator<=>(const Connect&) const = default;
};
struct Disconnect {
  Address a = 0, b = 0;
  auto operator<=>(const Disconnect&) const = default;
};
struct NodeDeliver {
  Address node = 0;
  std::uint32_t data = 0;
  auto operator<=>(const NodeDeliver&) const = default;
};

// closed level: environment injects newpkt(data, dst) at node
struct NewPkt {
  Address node = 0;
  std::uint32_t data = 0;
  Address dst = 0;
  auto operator<=>(const NewPkt&) const = default;
};

// an environment move of the open model (no process participates)
struct Env {
  auto operator<=>(const Env&) const = default;
};

}  // namespace act

/// The layered action alphabet. Alternative order is the canonical
/// tie-break order used for shortest counterexamples.
using Action = std::variant<act::Tau, act::Receive, act::Send, act::Deliver, act::Broadcast, act::Groupcast,
                            act::Unicast, act::NotUnicast, act::StarCast, act::Arrive, act::Connect,
                            act::Disconnect, act::NodeDeliver, act::NewPkt, act::Env>;

std::string to_string(const Action& a);
std::uint64_t hash_value(const Action& a);

/// The message carried by a receive or arrive action.
const Message* received_message(const Action& a);

}  // namespace awn
