#pragma once

#include <memory>

#include "awn/control.hpp"
#include "awn/predicates.hpp"
#include "awn/seq.hpp"

namespace awn {

/// Model text of the toy protocol (identical to corpus/toy.awn).
const std::string& toy_source();

/// Parses and labels a model; every process is labelled by its own name.
std::shared_ptr<const Program> load_program(std::string_view source);
std::shared_ptr<const Program> toy_program();

/// toy-init: ip = i, no = 0, nhip = i, msg = none, num and sip arbitrary.
std::vector<DataState> toy_init(const Program& prog, Address i, const Domains& dom);

/// Named predicates of the toy protocol.
struct ToySuite {
  Predicate nhip_eq_ip;        // at PToy{2..8}: nhip = ip
  Predicate nos_increase;      // no <= no'
  Predicate bigger_than_next;  // forall i in scope. no(s i) <= no(s (nhip (s i)))
  MessageRelation msg_num_ok;  // pkt(d, s) => d <= no(s s); newpkt => true

  /// All predicates usable with `--pred`.
  std::vector<Predicate> all() const { return {nhip_eq_ip, nos_increase, bigger_than_next}; }
  const Predicate* find(std::string_view name) const;
};
ToySuite toy_suite(const Program& prog, const Domains& dom);

/// `no(s i) <= no(s (nhip (s i)))` for every i in `scope`.
bool bigger_than_next(const StateSchema& schema, const GlobalState& g, AddrSet scope);

// Built on slots `no` and `nhip` only, so any model declaring them can use
// these.
Predicate bigger_than_next_predicate(const StateSchema& schema);
MessageRelation msg_num_ok(const StateSchema& schema);

}  // namespace awn
