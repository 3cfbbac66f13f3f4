#pragma once

#include <memory>

#include "awn/automaton.hpp"
#include "awn/control.hpp"

namespace awn {

/// A sequential process state (xi, p).
struct SeqState {
  DataState data;
  TermId control = 0;
  auto operator<=>(const SeqState&) const = default;
  bool operator==(const SeqState&) const = default;
};
std::uint64_t hash_value(const SeqState& s);

/// Sequential SOS rules, applied to the start terms of the control term.
std::vector<Transition<SeqState>> seq_step(const Program& prog, const Domains& dom, const SeqState& s,
                                           bool with_receive = true);
/// Successors of `s` under Receive(m).
std::vector<SeqState> seq_receive(const Program& prog, const Domains& dom, const SeqState& s, const Message& m);

/// Initial data states for the process running at `self`: `any` variables
/// range over the arbitrary domain.
std::vector<DataState> initial_data(const StateSchema& schema, Address self, const Domains& dom);
/// Data state used for addresses that run no process: declared initial
/// values with self = #0 and `any` taking the first arbitrary value.
DataState default_data(const StateSchema& schema, const Domains& dom);

std::string render(const StateSchema& schema, const DataState& xi);
std::string render(const Program& prog, const SeqState& s);

/// The automaton of process `process` at address `self`.
Automaton<SeqState> make_seq(std::shared_ptr<const Program> prog, std::string process, Address self, Domains dom);

}  // namespace awn
