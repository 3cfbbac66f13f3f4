#include "awn/toy.hpp"

#include <algorithm>

#include "awn/parser.hpp"

namespace awn {

const std::string& toy_source() {
  static const std::string src = R"(-- Toy protocol: each node keeps the largest number it has seen and
-- remembers the neighbour it learnt it from.

var ip   : addr = self
var no   : nat  = 0
var nhip : addr = self
var msg  : msg  = none
var num  : nat  = any
var sip  : addr = any

-- clears the per-message locals before recursing
abbrev Toy() = [[msg := none, num := 0, sip := #0]] . call(PToy)

process PToy:
  receive(msg) .
  [[nhip := ip]] .
  (
    <is_newpkt> .
    [[no := max(no, num)]] .
    broadcast(pkt(no, ip)) .
    Toy()
  (+)
    <is_pkt> @2 .
    (
      <num >= no> .
      [[no := num]] .
      [[nhip := sip]] .
      broadcast(pkt(no, ip)) .
      Toy()
    (+)
      <num < no> @6 .
      Toy()
    )
  )

invariant nhip_eq_ip at PToy{2..8} : nhip = ip
step nos_increase : no <= no'
)";
  return src;
}

std::shared_ptr<const Program> load_program(std::string_view source) {
  return std::make_shared<const Program>(label_spec(parse_spec(source)));
}

std::shared_ptr<const Program> toy_program() {
  static const auto prog = load_program(toy_source());
  return prog;
}

std::vector<DataState> toy_init(const Program& prog, Address i, const Domains& dom) {
  return initial_data(prog.spec().schema, i, dom);
}

const Predicate* ToySuite::find(std::string_view name) const {
  for (const Predicate* p : {&nhip_eq_ip, &nos_increase, &bigger_than_next})
    if (p->name == name) return p;
  return nullptr;
}

bool bigger_than_next(const StateSchema& schema, const GlobalState& g, AddrSet scope) {
  const VarId no = schema.require("no");
  const VarId nhip = schema.require("nhip");
  for (Address i : scope.members()) {
    const DataState& xi = g.at(i);
    if (as_nat(xi[no]) > as_nat(g.at(as_addr(xi[nhip]))[no])) return false;
  }
  return true;
}

Predicate bigger_than_next_predicate(const StateSchema& schema) {
  Predicate p;
  p.name = "bigger_than_next";
  p.kind = Predicate::Kind::Global;
  p.text = "forall i. no(s i) <= no(s (nhip (s i)))";
  p.global = [schema](const GlobalState& g, AddrSet scope) { return bigger_than_next(schema, g, scope); };
  p.reads = {schema.require("no"), schema.require("nhip")};
  std::sort(p.reads.begin(), p.reads.end());
  return p;
}

MessageRelation msg_num_ok(const StateSchema& schema) {
  const VarId no = schema.require("no");
  return [no](const GlobalState& g, const Message& m) {
    if (m.kind == Message::Kind::NewPkt) return true;
    return m.data <= as_nat(g.at(m.addr)[no]);
  };
}

ToySuite toy_suite(const Program& prog, const Domains& dom) {
  const auto& spec = prog.spec();
  const auto& schema = spec.schema;
  ToySuite s;
  for (const auto& d : spec.predicates) {
    if (d.name == "nhip_eq_ip") s.nhip_eq_ip = make_predicate(d, schema, dom);
    if (d.name == "nos_increase") s.nos_increase = make_predicate(d, schema, dom);
  }
  if (!s.nhip_eq_ip.state || !s.nos_increase.step) throw ModelError("toy model lacks its declared predicates");
  s.bigger_than_next = bigger_than_next_predicate(schema);
  s.msg_num_ok = msg_num_ok(schema);
  return s;
}

}  // namespace awn
