#pragma once

#include <optional>

#include "awn/env.hpp"

namespace awn {

/// An open invariant together with the environment relations it relies on:
/// E for synchronised steps, F for interleaved ones and R for messages.
struct OpenInstance {
  std::shared_ptr<const Program> prog;
  std::string process;
  Scenario sc;
  Predicate invariant;
  Predicate E;
  Predicate F;
  MessageRelation R;
  std::string R_text;
  std::vector<VarId> R_reads;  // slots R depends on
  ExploreOptions options;
};

enum class Layer : std::uint8_t { Seq, Qmsg, Node, Pnet, Closed };
std::string to_string(Layer l);
std::optional<Layer> parse_layer(std::string_view s);

/// S and U of the layer: otherwith(E, N, orecvmsg R) below the node layer,
/// oarrivemsg R from the node layer up, and no message assumption once the
/// network is closed. N is the layer's owned set.
EnvAssumption layer_assumption(const OpenInstance& inst, Layer layer, AddrSet owned);

OpenAutomaton<TermId> instance_oseq(const OpenInstance& inst, Address i);
OpenAutomaton<OProc> instance_opar(const OpenInstance& inst, Address i);
OpenAutomaton<ONode> instance_onode(const OpenInstance& inst, Address i);
std::shared_ptr<const OpenNetwork> instance_onet(const OpenInstance& inst);

struct PremiseCheck {
  std::string name;
  bool ok = true;
  std::string witness;  // first failing instance
};

struct LayerReport {
  Layer layer = Layer::Seq;
  Address node = 0;  // for the single-node layers
  std::vector<PremiseCheck> premises;
  std::vector<PremiseCheck> conclusions;
  Verdict invariant;
  bool ok() const;
};

// Premises over finite domains. Only the slots the relations read are
// enumerated; the rest stay at the default data state.
PremiseCheck check_reflexive(const std::string& name, const Predicate& rel, const StateSchema& schema,
                             const Domains& dom);
PremiseCheck check_implies(const std::string& name, const Predicate& a, const Predicate& b, const StateSchema& schema,
                           const Domains& dom);
/// forall sigma sigma' m. (forall j. F (sigma j) (sigma' j)) and R sigma m imply R sigma' m.
PremiseCheck check_message_stable(const std::string& name, const OpenInstance& inst);

/// Lifts the invariant layer by layer, from the sequential process at node
/// `focus` up to `top`. Every report carries the premises of its layer, the
/// re-checked invariant and the conclusions: projection of each reachable
/// state onto the layer below, and queue contents for qmsg.
std::vector<LayerReport> check_lifting(const OpenInstance& inst, Layer top, Address focus);

// --- simulation and transfer

struct SimulationResult {
  Outcome outcome = Outcome::Holds;
  std::string reason;
  std::size_t states = 0;
  std::size_t transitions = 0;
};

/// For every explored transition s -a-> s' of np there must be a transition
/// of onp from sr(s) with action a whose owned updates and local successor
/// equal sr(s'); every initial image must be an initial state of onp.
template <class S, class L>
SimulationResult check_simulation(const Automaton<S>& np, const OpenAutomaton<L>& onp,
                                  const std::function<OpenInit<L>(const S&)>& sr, const DataState& fallback,
                                  const ExploreOptions& opt) {
  SimulationResult r;
  auto inits = onp.init();
  std::sort(inits.begin(), inits.end());
  for (const auto& s : np.init()) {
    const auto img = sr(s);
    if (!std::binary_search(inits.begin(), inits.end(), img)) {
      r.outcome = Outcome::Counterexample;
      r.reason = "initial state " + np.render(s) + " has no open counterpart";
      return r;
    }
  }
  auto ex = explore(np, opt);
  r.states = ex->states.size();
  for (const auto& s : ex->states) {
    const auto img = sr(s);
    GlobalState g(fallback);
    for (const auto& [a, xi] : img.owned) g.set(a, xi);
    const auto moves = onp.step(g, img.local);
    for (auto& t : np.step(s)) {
      ++r.transitions;
      const auto want = sr(t.target);
      const bool matched = std::any_of(moves.begin(), moves.end(), [&](const OpenTransition<L>& m) {
        return m.action == t.action && m.owned == want.owned && m.local == want.local;
      });
      if (!matched) {
        r.outcome = Outcome::Counterexample;
        r.reason = "unmatched " + to_string(t.action) + " from " + np.render(s);
        return r;
      }
    }
  }
  if (!ex->complete) {
    r.outcome = Outcome::BoundExceeded;
    r.reason = ex->bound_reason;
  }
  return r;
}

/// The identity splitting of a sequential state and of the qmsg composition.
std::function<OpenInit<TermId>(const SeqState&)> split_seq(Address i);
std::function<OpenInit<OProc>(const Proc&)> split_proc(Address i);
/// netliftl: sigma from the protocol data states, local parts kept.
OState<OClosed> split_closed(const ClosedState& s, const GlobalState& base);

struct TransferResult {
  Outcome outcome = Outcome::Holds;
  std::string reason;
  std::size_t standard_states = 0;
  std::size_t open_states = 0;
  bool pullback_holds = true;  // the open invariant on every standard state
};

/// Inclusion of the standard closed reachable set, split by netliftl, in the
/// open closed reachable set of the same tree and scenario, plus the
/// pullback of `pred` (a global predicate over the net addresses).
TransferResult check_transfer(const OpenInstance& inst, const Predicate& pred);

}  // namespace awn
