#include "awn/env.hpp"

#include <algorithm>

namespace awn {

namespace {

bool holds(const Predicate& rel, const DataState& a, const DataState& b) { return rel.step ? rel.step(a, b) : a == b; }

}  // namespace

bool otherwith(const EnvAssumption& s, AddrSet universe, const GlobalState& pre, const GlobalState& post,
               const Action& a) {
  for (Address j : (universe - s.owned).members())
    if (!holds(s.E, pre.at(j), post.at(j))) return false;
  return !s.I || s.I(pre, a);
}

bool other(const EnvAssumption& s, AddrSet universe, const GlobalState& pre, const GlobalState& post) {
  for (Address i : s.owned.members())
    if (!(pre.at(i) == post.at(i))) return false;
  for (Address j : (universe - s.owned).members())
    if (!holds(s.F, pre.at(j), post.at(j))) return false;
  return true;
}

ActionRelation orecvmsg(MessageRelation r) {
  return [r](const GlobalState& g, const Action& a) {
    if (auto x = std::get_if<act::Receive>(&a)) return r(g, x->m);
    return true;
  };
}

ActionRelation oarrivemsg(MessageRelation r) {
  return [r](const GlobalState& g, const Action& a) {
    if (auto x = std::get_if<act::Arrive>(&a)) return r(g, x->m);
    return true;
  };
}

std::vector<DataState> env_candidates(const EnvGenerator& gen, const StateSchema& schema, const Domains& dom,
                                      const DataState& xi) {
  std::vector<DataState> out{xi};
  for (const auto& m : gen.moves) {
    const VarId v = schema.require(m.var);
    if (m.kind == EnvMove::Kind::Bump) {
      const std::uint32_t n = as_nat(xi[v]);
      if (dom.clamp(std::uint64_t{n} + 1) == n) continue;
      DataState x = xi;
      x.set(v, Nat{n + 1});
      out.push_back(std::move(x));
    } else {
      for (auto& val : enumerate(schema.vars.at(v).type, dom)) {
        if (val == xi[v]) continue;
        DataState x = xi;
        x.set(v, std::move(val));
        out.push_back(std::move(x));
      }
    }
  }
  std::sort(out.begin() + 1, out.end());
  out.erase(std::unique(out.begin() + 1, out.end()), out.end());
  return out;
}

OpenSetup open_setup(const StateSchema& schema, const Scenario& sc, EnvAssumption assume) {
  OpenSetup o;
  o.universe = sc.topo.universe;
  o.schema = schema;
  o.dom = sc.dom;
  o.fallback = default_data(schema, sc.dom);
  o.assume = std::move(assume);
  o.gen.moves = sc.env;
  return o;
}

std::vector<DataState> env_initial(const OpenSetup& setup, Address a) { return initial_data(setup.schema, a, setup.dom); }

}  // namespace awn
