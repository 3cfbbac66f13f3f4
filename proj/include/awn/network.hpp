#pragma once

#include <memory>

#include "awn/node.hpp"
#include "awn/parallel.hpp"
#include "awn/qmsg.hpp"
#include "awn/seq.hpp"

namespace awn {

/// The per-node process: a protocol instance fed by a message queue.
using Proc = ParState<SeqState, Queue>;
using Node = NodeState<Proc>;

/// Network shape: leaves <i; R> combined by ||.
struct NetTree {
  struct Vertex {
    bool leaf = true;
    Address address = 0;
    AddrSet range;
    int left = -1, right = -1;
    std::size_t lo = 0, hi = 0;  // leaf index range covered by this subtree
  };
  std::vector<Vertex> vertices;
  int root = -1;

  static NetTree leaf(Address a, AddrSet range);
  static NetTree par(const NetTree& l, const NetTree& r);

  /// Leaves in left-to-right order.
  std::vector<std::pair<Address, AddrSet>> leaves() const;
  AddrSet ips() const;
  AddrSet ips(int vertex) const;
  std::size_t size() const { return root < 0 ? 0 : vertices[static_cast<std::size_t>(root)].hi; }
};

/// Parses `(1:{2}) || ((2:{1,3}) || (3:{2}))`; || is right associative.
/// Rejects duplicate leaf addresses.
NetTree parse_net_tree(std::string_view text);
std::string to_string(const NetTree& t);

struct NetState {
  std::vector<Node> leaves;
  auto operator<=>(const NetState&) const = default;
  bool operator==(const NetState&) const = default;
};
std::uint64_t hash_value(const NetState& s);

/// Closed network state: the net plus the set of spent injections.
struct ClosedState {
  NetState net;
  std::uint64_t injected = 0;
  auto operator<=>(const ClosedState&) const = default;
  bool operator==(const ClosedState&) const = default;
};
std::uint64_t hash_value(const ClosedState& s);

/// One budgeted environment injection newpkt(data, dst) at `node`.
struct Injection {
  Address node = 0;
  std::uint32_t data = 0;
  Address dst = 0;
  auto operator<=>(const Injection&) const = default;
};

using ProcessFactory = std::function<Automaton<Proc>(Address)>;

class Network {
 public:
  Network(NetTree tree, const ProcessFactory& np, Domains dom, Topology topo);

  const NetTree& tree() const { return tree_; }
  const Domains& domains() const { return dom_; }
  const Topology& topology() const { return topo_; }
  const Automaton<Proc>& process(std::size_t leaf) const { return procs_.at(leaf); }

  std::vector<NetState> init() const;

  /// Partial-network rules applied literally over the tree: casts pair with
  /// arrivals on the other side, arrivals combine, topology changes
  /// synchronise, everything else interleaves.
  std::vector<Transition<NetState>> pnet_step(const NetState& s) const;

  /// Closed rules derived from pnet_step: *cast becomes Tau, arrivals are
  /// dropped except budgeted newpkt injections at a single node.
  std::vector<Transition<ClosedState>> closed_step_literal(const ClosedState& s,
                                                           const std::vector<Injection>& budget) const;
  /// Same transitions computed directly over the leaves; used for search.
  std::vector<Transition<ClosedState>> closed_step(const ClosedState& s, const std::vector<Injection>& budget) const;

  std::vector<NodeView> nodes(const NetState& s) const;
  std::string render(const NetState& s) const;
  bool saturated(const NetState& s) const;

 private:
  using Moves = std::vector<std::pair<Action, std::vector<Node>>>;
  Moves subnet(int vertex, const NetState& s) const;

  NetTree tree_;
  std::vector<Automaton<Proc>> procs_;
  Domains dom_;
  Topology topo_;
};

Automaton<NetState> make_pnet(std::shared_ptr<const Network> net);
Automaton<ClosedState> make_closed(std::shared_ptr<const Network> net, std::vector<Injection> budget);

/// The standard per-node process: the protocol at `self` fed by qmsg.
ProcessFactory protocol_with_queue(std::shared_ptr<const Program> prog, std::string process, Domains dom,
                                   std::size_t queue_bound);

}  // namespace awn
