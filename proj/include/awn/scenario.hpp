#pragma once

#include <optional>
#include <string>

#include "awn/network.hpp"

namespace awn {

/// One environment move applied to an unowned address of the open model.
struct EnvMove {
  enum class Kind : std::uint8_t { Bump, Havoc };
  Kind kind = Kind::Bump;
  std::string var;
};

/// Desk-scale configuration: network, finite domains, bounds and budgets.
struct Scenario {
  std::string name;
  std::optional<NetTree> net;
  Domains dom;
  std::size_t queue_bound = 2;
  Topology topo;
  std::vector<Injection> inject;
  std::vector<EnvMove> env;       // empty: frozen environment
  std::vector<Message> env_msgs;  // messages the open environment may deliver
  std::optional<Address> node;    // single-process engines run here

  Address focus() const;  // `node`, else the first leaf, else the first address
};

/// Parses `key = value` lines; `#` starts a comment.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace awn
