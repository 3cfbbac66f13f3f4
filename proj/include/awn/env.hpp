#pragma once

#include "awn/check.hpp"
#include "awn/open.hpp"
#include "awn/scenario.hpp"

namespace awn {

/// A state of an open system: sigma over the universe plus the local part.
template <class L>
struct OState {
  GlobalState sigma;
  L local;
  auto operator<=>(const OState&) const = default;
  bool operator==(const OState&) const = default;
};

template <class L>
std::uint64_t hash_value(const OState<L>& s) {
  return mix64(hash_value(s.sigma), hash_value(s.local));
}

using ActionRelation = std::function<bool(const GlobalState&, const Action&)>;

/// S = otherwith(E, N, I) for synchronised steps and U = other(F, N) for
/// interleaved ones. E and F are step predicates over (sigma j, sigma' j);
/// an unset I accepts every action.
struct EnvAssumption {
  AddrSet owned;
  Predicate E = equality_relation();
  Predicate F = equality_relation();
  ActionRelation I;
  std::string I_text = "true";
};

/// (forall j in universe - N. E (sigma j) (sigma' j)) and I sigma a.
bool otherwith(const EnvAssumption& s, AddrSet universe, const GlobalState& pre, const GlobalState& post,
               const Action& a);
/// (forall i in N. sigma' i = sigma i) and (forall j in universe - N. F (sigma j) (sigma' j)).
bool other(const EnvAssumption& s, AddrSet universe, const GlobalState& pre, const GlobalState& post);

/// R on the message of every Receive; true for other actions.
ActionRelation orecvmsg(MessageRelation r);
/// R on the message of every Arrive; true for other actions.
ActionRelation oarrivemsg(MessageRelation r);

/// Finite stand-in for "every environment": per unowned address, either no
/// change or one of the moves.
struct EnvGenerator {
  std::vector<EnvMove> moves;
};

/// Candidate successors of one unowned entry, the unchanged entry first.
std::vector<DataState> env_candidates(const EnvGenerator& gen, const StateSchema& schema, const Domains& dom,
                                      const DataState& xi);

/// Everything oexplore needs beyond the open automaton.
struct OpenSetup {
  AddrSet universe;
  StateSchema schema;
  Domains dom;
  DataState fallback;  // sigma outside the universe
  EnvAssumption assume;
  EnvGenerator gen;
};

/// Standard setup for model `schema` over the scenario's universe.
OpenSetup open_setup(const StateSchema& schema, const Scenario& sc, EnvAssumption assume);

/// Initial sigma entries for an unowned address: the protocol's own initial
/// data states there.
std::vector<DataState> env_initial(const OpenSetup& setup, Address a);

namespace detail {

inline std::vector<GlobalState> env_products(const OpenSetup& o, const GlobalState& g, AddrSet owned) {
  std::vector<GlobalState> acc{g};
  for (Address j : (o.universe - owned).members()) {
    const auto cand = env_candidates(o.gen, o.schema, o.dom, g.at(j));
    if (cand.size() == 1) continue;
    std::vector<GlobalState> next;
    next.reserve(acc.size() * cand.size());
    for (const auto& base : acc)
      for (const auto& c : cand) {
        GlobalState x = base;
        x.set(j, c);
        next.push_back(std::move(x));
      }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace detail

/// Open reachability as an ordinary automaton over (sigma, local): initial
/// states; interleaved environment steps (action env) filtered by U; local
/// steps combined with simultaneous environment changes filtered by S.
template <class L>
Automaton<OState<L>> open_system(const OpenAutomaton<L>& a, OpenSetup o) {
  using S = OState<L>;
  if (!a.owned.subset_of(o.universe)) throw ModelError("owned addresses must lie within the universe");
  o.assume.owned = a.owned;
  auto setup = std::make_shared<const OpenSetup>(std::move(o));
  Automaton<S> out;
  out.init = [a, setup] {
    std::vector<S> v;
    GlobalState base(setup->fallback);
    std::vector<GlobalState> acc{base};
    for (Address j : (setup->universe - a.owned).members()) {
      std::vector<GlobalState> next;
      for (const auto& g : acc)
        for (const auto& xi : env_initial(*setup, j)) {
          GlobalState x = g;
          x.set(j, xi);
          next.push_back(std::move(x));
        }
      acc = std::move(next);
    }
    for (const auto& i : a.init())
      for (const auto& g : acc) {
        GlobalState x = g;
        for (const auto& [addr, xi] : i.owned) x.set(addr, xi);
        v.push_back({std::move(x), i.local});
      }
    return v;
  };
  out.step = [a, setup](const S& s) {
    std::vector<Transition<S>> v;
    const auto& o = *setup;
    const auto envs = detail::env_products(o, s.sigma, a.owned);
    for (const auto& g : envs)
      if (!(g == s.sigma) && other(o.assume, o.universe, s.sigma, g)) v.push_back({act::Env{}, {g, s.local}});
    for (auto& t : a.step(s.sigma, s.local)) {
      if (o.assume.I && !o.assume.I(s.sigma, t.action)) continue;
      for (const auto& g : envs) {
        GlobalState x = g;
        for (const auto& [addr, xi] : t.owned) x.set(addr, xi);
        if (!otherwith(o.assume, o.universe, s.sigma, x, t.action)) continue;
        v.push_back({t.action, {std::move(x), t.local}});
      }
    }
    return v;
  };
  out.render = [a, setup](const S& s) { return render(setup->schema, s.sigma) + " | " + a.render(s.local); };
  out.nodes = [a](const S& s) {
    std::vector<NodeView> v;
    for (const auto& [addr, labels] : a.labels(s.local)) v.push_back({addr, &s.sigma.at(addr), labels});
    return v;
  };
  out.saturated = [a](const S& s) { return a.saturated(s.local); };
  out.global = [](const S& s) { return s.sigma; };
  return out;
}

template <class L>
std::unique_ptr<Exploration<OState<L>>> oexplore(const OpenAutomaton<L>& a, const OpenSetup& o,
                                                 const ExploreOptions& opt) {
  return explore(open_system(a, o), opt);
}

/// Open invariance: check_predicates over oreachable.
template <class L>
std::vector<Verdict> check_open(const OpenAutomaton<L>& a, const OpenSetup& o, const std::vector<Predicate>& preds,
                                const ExploreOptions& opt) {
  CheckContext ctx{o.universe, o.fallback, opt};
  return check_predicates(open_system(a, o), preds, ctx);
}

}  // namespace awn
