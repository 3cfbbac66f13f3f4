#include "awn/network.hpp"

#include <algorithm>
#include <cctype>

namespace awn {

std::vector<std::pair<Address, Address>> topology_pairs(const Topology& topo) {
  std::vector<std::pair<Address, Address>> out;
  if (!topo.dynamic) return out;
  for (Address a : topo.universe.members())
    for (Address b : topo.universe.members())
      if (a != b) out.emplace_back(a, b);
  return out;
}

AddrSet apply_topology(Address i, AddrSet range, const Action& a) {
  if (auto c = std::get_if<act::Connect>(&a)) {
    if (c->a == i) range.insert(c->b);
    else if (c->b == i) range.insert(c->a);
  } else if (auto d = std::get_if<act::Disconnect>(&a)) {
    if (d->a == i) range.erase(d->b);
    else if (d->b == i) range.erase(d->a);
  }
  return range;
}

// --- net trees

NetTree NetTree::leaf(Address a, AddrSet range) {
  NetTree t;
  Vertex v;
  v.address = a;
  v.range = range;
  v.hi = 1;
  t.vertices.push_back(v);
  t.root = 0;
  return t;
}

NetTree NetTree::par(const NetTree& l, const NetTree& r) {
  NetTree t;
  t.vertices = l.vertices;
  const int off = static_cast<int>(t.vertices.size());
  const std::size_t shift = l.size();
  for (Vertex v : r.vertices) {
    if (!v.leaf) {
      v.left += off;
      v.right += off;
    }
    v.lo += shift;
    v.hi += shift;
    t.vertices.push_back(v);
  }
  Vertex p;
  p.leaf = false;
  p.left = l.root;
  p.right = r.root + off;
  p.lo = 0;
  p.hi = shift + r.size();
  t.vertices.push_back(p);
  t.root = static_cast<int>(t.vertices.size()) - 1;
  return t;
}

std::vector<std::pair<Address, AddrSet>> NetTree::leaves() const {
  std::vector<std::pair<Address, AddrSet>> out(size());
  for (const auto& v : vertices)
    if (v.leaf) out[v.lo] = {v.address, v.range};
  return out;
}

AddrSet NetTree::ips(int vertex) const {
  const Vertex& v = vertices.at(static_cast<std::size_t>(vertex));
  if (v.leaf) return AddrSet{v.address};
  return ips(v.left) | ips(v.right);
}

AddrSet NetTree::ips() const { return root < 0 ? AddrSet{} : ips(root); }

namespace {

class TreeParser {
 public:
  explicit TreeParser(std::string_view s) : s_(s) {}

  NetTree run() {
    NetTree t = parse_par();
    skip();
    if (i_ != s_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ModelError("net tree, column " + std::to_string(i_ + 1) + ": " + msg);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(i_, tok.size()) == tok) {
      i_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
  }
  Address number() {
    skip();
    eat("#");
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected an address");
    std::uint64_t n = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      n = n * 10 + static_cast<std::uint64_t>(s_[i_++] - '0');
      if (n > kMaxAddress) fail("address exceeds 63");
    }
    return static_cast<Address>(n);
  }
  NetTree parse_par() {
    NetTree l = parse_atom();
    if (eat("||")) return NetTree::par(l, parse_par());
    return l;
  }
  NetTree parse_atom() {
    expect("(");
    skip();
    // either a leaf "a:{...}" or a parenthesised tree
    if (i_ < s_.size() && s_[i_] == '(') {
      NetTree t = parse_par();
      expect(")");
      return t;
    }
    const Address a = number();
    expect(":");
    expect("{");
    AddrSet range;
    if (!eat("}")) {
      do range.insert(number());
      while (eat(","));
      expect("}");
    }
    expect(")");
    return NetTree::leaf(a, range);
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

NetTree parse_net_tree(std::string_view text) {
  NetTree t = TreeParser(text).run();
  AddrSet seen;
  for (const auto& [a, r] : t.leaves()) {
    if (seen.contains(a)) throw ModelError("net tree has duplicate address #" + std::to_string(a));
    seen.insert(a);
  }
  return t;
}

namespace {

std::string render_tree(const NetTree& t, int v) {
  const auto& x = t.vertices.at(static_cast<std::size_t>(v));
  if (x.leaf) {
    std::string s = "(" + std::to_string(x.address) + ":{";
    bool first = true;
    for (Address a : x.range.members()) {
      s += (first ? "" : ",") + std::to_string(a);
      first = false;
    }
    return s + "})";
  }
  const auto& r = t.vertices.at(static_cast<std::size_t>(x.right));
  std::string rs = render_tree(t, x.right);
  if (!r.leaf) rs = "(" + rs + ")";
  std::string ls = render_tree(t, x.left);
  if (!t.vertices.at(static_cast<std::size_t>(x.left)).leaf) ls = "(" + ls + ")";
  return ls + " || " + rs;
}

}  // namespace

std::string to_string(const NetTree& t) { return t.root < 0 ? "" : render_tree(t, t.root); }

std::uint64_t hash_value(const NetState& s) {
  std::uint64_t h = s.leaves.size();
  for (const auto& n : s.leaves) h = mix64(h, hash_value(n));
  return h;
}

std::uint64_t hash_value(const ClosedState& s) { return mix64(hash_value(s.net), s.injected); }

// --- networks

Network::Network(NetTree tree, const ProcessFactory& np, Domains dom, Topology topo)
    : tree_(std::move(tree)), dom_(std::move(dom)), topo_(topo) {
  if (tree_.root < 0) throw ModelError("empty net tree");
  AddrSet seen;
  for (const auto& [a, r] : tree_.leaves()) {
    if (seen.contains(a)) throw ModelError("net tree has duplicate address #" + std::to_string(a));
    seen.insert(a);
    procs_.push_back(np(a));
  }
}

std::vector<NetState> Network::init() const {
  std::vector<NetState> acc{NetState{}};
  const auto leaves = tree_.leaves();
  for (std::size_t k = 0; k < leaves.size(); ++k) {
    std::vector<NetState> next;
    for (const auto& p : procs_[k].init())
      for (const auto& s : acc) {
        NetState n = s;
        n.leaves.push_back({leaves[k].first, p, leaves[k].second});
        next.push_back(std::move(n));
      }
    acc = std::move(next);
  }
  std::sort(acc.begin(), acc.end());
  return acc;
}

namespace {

std::vector<Node> concat(const std::vector<Node>& a, const std::vector<Node>& b) {
  std::vector<Node> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<Node> slice(const NetState& s, std::size_t lo, std::size_t hi) {
  return {s.leaves.begin() + static_cast<std::ptrdiff_t>(lo), s.leaves.begin() + static_cast<std::ptrdiff_t>(hi)};
}

bool cast_accepts(const act::StarCast& c, const act::Arrive& a) {
  return c.m == a.m && a.h.subset_of(c.range) && a.k.disjoint(c.range);
}

}  // namespace

Network::Moves Network::subnet(int vertex, const NetState& s) const {
  const auto& v = tree_.vertices.at(static_cast<std::size_t>(vertex));
  Moves out;
  if (v.leaf) {
    for (auto& t : node_step(procs_[v.lo], dom_, topo_, s.leaves[v.lo]))
      out.emplace_back(std::move(t.action), std::vector<Node>{std::move(t.target)});
    return out;
  }
  const auto& lv = tree_.vertices.at(static_cast<std::size_t>(v.left));
  const auto& rv = tree_.vertices.at(static_cast<std::size_t>(v.right));
  const Moves left = subnet(v.left, s);
  const Moves right = subnet(v.right, s);
  const auto left_same = slice(s, lv.lo, lv.hi);
  const auto right_same = slice(s, rv.lo, rv.hi);

  for (const auto& [a, ls] : left) {
    if (auto c = std::get_if<act::StarCast>(&a)) {
      for (const auto& [b, rs] : right)
        if (auto r = std::get_if<act::Arrive>(&b); r && cast_accepts(*c, *r)) out.emplace_back(a, concat(ls, rs));
    } else if (auto x = std::get_if<act::Arrive>(&a)) {
      for (const auto& [b, rs] : right) {
        if (auto y = std::get_if<act::Arrive>(&b); y && y->m == x->m)
          out.emplace_back(act::Arrive{x->h | y->h, x->k | y->k, x->m}, concat(ls, rs));
      }
    } else if (std::holds_alternative<act::Connect>(a) || std::holds_alternative<act::Disconnect>(a)) {
      for (const auto& [b, rs] : right)
        if (b == a) out.emplace_back(a, concat(ls, rs));
    } else {
      out.emplace_back(a, concat(ls, right_same));
    }
  }
  for (const auto& [b, rs] : right) {
    if (auto c = std::get_if<act::StarCast>(&b)) {
      for (const auto& [a, ls] : left)
        if (auto x = std::get_if<act::Arrive>(&a); x && cast_accepts(*c, *x)) out.emplace_back(b, concat(ls, rs));
    } else if (!std::holds_alternative<act::Arrive>(b) && !std::holds_alternative<act::Connect>(b) &&
               !std::holds_alternative<act::Disconnect>(b)) {
      out.emplace_back(b, concat(left_same, rs));
    }
  }
  return out;
}

std::vector<Transition<NetState>> Network::pnet_step(const NetState& s) const {
  std::vector<Transition<NetState>> out;
  for (auto& [a, leaves] : subnet(tree_.root, s)) out.push_back({std::move(a), NetState{std::move(leaves)}});
  return out;
}

std::vector<Transition<ClosedState>> Network::closed_step_literal(const ClosedState& s,
                                                                  const std::vector<Injection>& budget) const {
  std::vector<Transition<ClosedState>> out;
  const AddrSet ips = tree_.ips();
  for (auto& t : pnet_step(s.net)) {
    if (std::holds_alternative<act::StarCast>(t.action)) {
      out.push_back({act::Tau{}, {std::move(t.target), s.injected}});
    } else if (auto a = std::get_if<act::Arrive>(&t.action)) {
      if (a->h.size() != 1 || a->m.kind != Message::Kind::NewPkt) continue;
      const Address i = a->h.members().front();
      for (std::size_t k = 0; k < budget.size(); ++k) {
        const auto& inj = budget[k];
        if ((s.injected >> k) & 1u) continue;
        if (inj.node == i && a->k == ips - a->h && a->m == Message::newpkt(inj.data, inj.dst))
          out.push_back({act::NewPkt{i, inj.data, inj.dst}, {t.target, s.injected | (std::uint64_t{1} << k)}});
      }
    } else {
      out.push_back({std::move(t.action), {std::move(t.target), s.injected}});
    }
  }
  return out;
}

std::vector<Transition<ClosedState>> Network::closed_step(const ClosedState& s,
                                                          const std::vector<Injection>& budget) const {
  std::vector<Transition<ClosedState>> out;
  const auto& leaves = s.net.leaves;
  const std::size_t n = leaves.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (auto& t : node_internal(procs_[k], leaves[k])) {
      if (auto c = std::get_if<act::StarCast>(&t.action)) {
        // every other node in range must take the message
        std::vector<NetState> acc{s.net};
        acc.front().leaves[k] = std::move(t.target);
        for (std::size_t j = 0; j < n && !acc.empty(); ++j) {
          if (j == k || !c->range.contains(leaves[j].address)) continue;
          const auto options = node_receive(procs_[j], leaves[j], c->m);
          std::vector<NetState> next;
          for (const auto& base : acc)
            for (const auto& o : options) {
              NetState x = base;
              x.leaves[j] = o;
              next.push_back(std::move(x));
            }
          acc = std::move(next);
        }
        for (auto& x : acc) out.push_back({act::Tau{}, {std::move(x), s.injected}});
      } else {
        NetState x = s.net;
        x.leaves[k] = std::move(t.target);
        out.push_back({std::move(t.action), {std::move(x), s.injected}});
      }
    }
  }
  for (const auto& [a, b] : topology_pairs(topo_)) {
    for (const Action change : {Action{act::Connect{a, b}}, Action{act::Disconnect{a, b}}}) {
      NetState x = s.net;
      for (auto& leaf : x.leaves) leaf.range = apply_topology(leaf.address, leaf.range, change);
      out.push_back({change, {std::move(x), s.injected}});
    }
  }
  for (std::size_t b = 0; b < budget.size(); ++b) {
    if ((s.injected >> b) & 1u) continue;
    const auto& inj = budget[b];
    for (std::size_t k = 0; k < n; ++k) {
      if (leaves[k].address != inj.node) continue;
      for (auto& o : node_receive(procs_[k], leaves[k], Message::newpkt(inj.data, inj.dst))) {
        NetState x = s.net;
        x.leaves[k] = std::move(o);
        out.push_back({act::NewPkt{inj.node, inj.data, inj.dst}, {std::move(x), s.injected | (std::uint64_t{1} << b)}});
      }
    }
  }
  return out;
}

std::vector<NodeView> Network::nodes(const NetState& s) const {
  std::vector<NodeView> out;
  for (std::size_t k = 0; k < s.leaves.size(); ++k) {
    auto v = procs_[k].nodes(s.leaves[k].inner);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

std::string Network::render(const NetState& s) const {
  std::string out;
  for (std::size_t k = 0; k < s.leaves.size(); ++k) {
    if (k) out += " || ";
    out += render_node(procs_[k], s.leaves[k]);
  }
  return out;
}

bool Network::saturated(const NetState& s) const {
  for (std::size_t k = 0; k < s.leaves.size(); ++k)
    if (procs_[k].saturated(s.leaves[k].inner)) return true;
  return false;
}

Automaton<NetState> make_pnet(std::shared_ptr<const Network> net) {
  Automaton<NetState> a;
  a.init = [net] { return net->init(); };
  a.step = [net](const NetState& s) { return net->pnet_step(s); };
  a.render = [net](const NetState& s) { return net->render(s); };
  a.nodes = [net](const NetState& s) { return net->nodes(s); };
  a.saturated = [net](const NetState& s) { return net->saturated(s); };
  return a;
}

Automaton<ClosedState> make_closed(std::shared_ptr<const Network> net, std::vector<Injection> budget) {
  if (budget.size() > 64) throw ModelError("injection budget exceeds 64 entries");
  Automaton<ClosedState> a;
  a.init = [net] {
    std::vector<ClosedState> v;
    for (auto& s : net->init()) v.push_back({std::move(s), 0});
    return v;
  };
  a.step = [net, budget](const ClosedState& s) { return net->closed_step(s, budget); };
  a.render = [net, budget](const ClosedState& s) {
    std::string used;
    for (std::size_t k = 0; k < budget.size(); ++k) used += ((s.injected >> k) & 1u) ? '1' : '0';
    return net->render(s.net) + (budget.empty() ? "" : " [injected " + used + "]");
  };
  a.nodes = [net](const ClosedState& s) { return net->nodes(s.net); };
  a.saturated = [net](const ClosedState& s) { return net->saturated(s.net); };
  return a;
}

ProcessFactory protocol_with_queue(std::shared_ptr<const Program> prog, std::string process, Domains dom,
                                   std::size_t queue_bound) {
  return [prog, process, dom, queue_bound](Address self) {
    return parallel(make_seq(prog, process, self, dom), make_qmsg(dom, queue_bound));
  };
}

}  // namespace awn
