#include "awn/lifting.hpp"

#include <algorithm>
#include <set>

namespace awn {

std::string to_string(Layer l) {
  switch (l) {
    case Layer::Seq: return "seq";
    case Layer::Qmsg: return "qmsg";
    case Layer::Node: return "node";
    case Layer::Pnet: return "pnet";
    case Layer::Closed: return "closed";
  }
  return "?";
}

std::optional<Layer> parse_layer(std::string_view s) {
  for (Layer l : {Layer::Seq, Layer::Qmsg, Layer::Node, Layer::Pnet, Layer::Closed})
    if (to_string(l) == s) return l;
  return std::nullopt;
}

bool LayerReport::ok() const {
  auto good = [](const PremiseCheck& p) { return p.ok; };
  return invariant.outcome == Outcome::Holds && std::all_of(premises.begin(), premises.end(), good) &&
         std::all_of(conclusions.begin(), conclusions.end(), good);
}

EnvAssumption layer_assumption(const OpenInstance& inst, Layer layer, AddrSet owned) {
  EnvAssumption a;
  a.owned = owned;
  a.E = inst.E;
  a.F = inst.F;
  switch (layer) {
    case Layer::Seq:
    case Layer::Qmsg:
      a.I = orecvmsg(inst.R);
      a.I_text = "orecvmsg " + inst.R_text;
      break;
    case Layer::Node:
    case Layer::Pnet:
      a.I = oarrivemsg(inst.R);
      a.I_text = "oarrivemsg " + inst.R_text;
      break;
    case Layer::Closed: break;  // nothing arrives from outside any more
  }
  return a;
}

OpenAutomaton<TermId> instance_oseq(const OpenInstance& inst, Address i) {
  return make_oseq(inst.prog, inst.process, i, inst.sc.dom);
}

OpenAutomaton<OProc> instance_opar(const OpenInstance& inst, Address i) {
  return opar(instance_oseq(inst, i), make_qmsg(inst.sc.dom, inst.sc.queue_bound));
}

namespace {

AddrSet leaf_range(const OpenInstance& inst, Address i) {
  if (inst.sc.net)
    for (const auto& [a, r] : inst.sc.net->leaves())
      if (a == i) return r;
  return {};
}

std::vector<Message> env_messages(const Scenario& sc) { return sc.env_msgs.empty() ? sc.dom.messages : sc.env_msgs; }

}  // namespace

OpenAutomaton<ONode> instance_onode(const OpenInstance& inst, Address i) {
  return onode(instance_opar(inst, i), i, leaf_range(inst, i), inst.sc.dom.messages, inst.sc.topo);
}

std::shared_ptr<const OpenNetwork> instance_onet(const OpenInstance& inst) {
  if (!inst.sc.net) throw ModelError("scenario has no net tree");
  const auto& sc = inst.sc;
  return std::make_shared<const OpenNetwork>(
      *sc.net, open_protocol_with_queue(inst.prog, inst.process, sc.dom, sc.queue_bound, sc.dom.messages), sc.dom,
      sc.topo, env_messages(sc));
}

// --- premises

namespace {

constexpr std::size_t kMaxPremiseStates = 200'000;

std::vector<VarId> all_slots(const StateSchema& schema) {
  std::vector<VarId> v(schema.vars.size());
  for (VarId k = 0; k < v.size(); ++k) v[k] = k;
  return v;
}

std::vector<VarId> reads_of(std::initializer_list<const std::vector<VarId>*> lists, const StateSchema& schema) {
  std::vector<VarId> out;
  for (const auto* l : lists) {
    if (l->empty()) return all_slots(schema);
    out.insert(out.end(), l->begin(), l->end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Data states varying `slots` over their domains, the rest at the default.
std::optional<std::vector<DataState>> slot_states(const StateSchema& schema, const Domains& dom,
                                                  const std::vector<VarId>& slots) {
  std::vector<DataState> acc{default_data(schema, dom)};
  for (VarId v : slots) {
    const auto vals = enumerate(schema.vars.at(v).type, dom);
    if (acc.size() * vals.size() > kMaxPremiseStates) return std::nullopt;
    std::vector<DataState> next;
    for (const auto& base : acc)
      for (const auto& val : vals) {
        DataState x = base;
        x.set(v, val);
        next.push_back(std::move(x));
      }
    acc = std::move(next);
  }
  return acc;
}

bool rel(const Predicate& p, const DataState& a, const DataState& b) { return p.step ? p.step(a, b) : a == b; }

bool is_equality(const Predicate& p) { return !p.step || p.name == equality_relation().name; }

std::string show(const StateSchema& schema, const DataState& a, const DataState& b) {
  return render(schema, a) + " -> " + render(schema, b);
}

PremiseCheck too_large(const std::string& name) { return {name, false, "domain too large to enumerate"}; }

}  // namespace

PremiseCheck check_reflexive(const std::string& name, const Predicate& r, const StateSchema& schema,
                             const Domains& dom) {
  const auto states = slot_states(schema, dom, reads_of({&r.reads}, schema));
  if (!states) return too_large(name);
  for (const auto& x : *states)
    if (!rel(r, x, x)) return {name, false, "not reflexive at " + render(schema, x)};
  return {name, true, ""};
}

PremiseCheck check_implies(const std::string& name, const Predicate& a, const Predicate& b, const StateSchema& schema,
                           const Domains& dom) {
  // equality holds only on the diagonal, so a = (=) reduces to reflexivity of b
  if (is_equality(a)) return check_reflexive(name, b, schema, dom);
  const auto states = slot_states(schema, dom, reads_of({&a.reads, &b.reads}, schema));
  if (!states || states->size() * states->size() > 4 * kMaxPremiseStates) return too_large(name);
  for (const auto& x : *states)
    for (const auto& y : *states)
      if (rel(a, x, y) && !rel(b, x, y)) return {name, false, show(schema, x, y)};
  return {name, true, ""};
}

PremiseCheck check_message_stable(const std::string& name, const OpenInstance& inst) {
  const auto& schema = inst.prog->spec().schema;
  const auto& dom = inst.sc.dom;
  const auto states = slot_states(schema, dom, reads_of({&inst.F.reads, &inst.R_reads}, schema));
  if (!states) return too_large(name);
  const auto addrs = inst.sc.topo.universe.members();
  std::size_t sigmas = 1;
  for (std::size_t k = 0; k < addrs.size(); ++k) {
    sigmas *= states->size();
    if (sigmas > kMaxPremiseStates) return too_large(name);
  }
  // F-successors of every entry value
  std::vector<std::vector<std::size_t>> succ(states->size());
  for (std::size_t a = 0; a < states->size(); ++a)
    for (std::size_t b = 0; b < states->size(); ++b)
      if (rel(inst.F, (*states)[a], (*states)[b])) succ[a].push_back(b);
  const DataState fallback = default_data(schema, dom);
  auto build = [&](const std::vector<std::size_t>& pick) {
    GlobalState g(fallback);
    for (std::size_t k = 0; k < addrs.size(); ++k) g.set(addrs[k], (*states)[pick[k]]);
    return g;
  };
  std::vector<std::size_t> pre(addrs.size(), 0);
  for (std::size_t n = 0; n < sigmas; ++n) {
    for (std::size_t k = 0, r = n; k < addrs.size(); ++k, r /= states->size()) pre[k] = r % states->size();
    const GlobalState g = build(pre);
    std::vector<Message> holding;
    for (const auto& m : dom.messages)
      if (inst.R(g, m)) holding.push_back(m);
    if (holding.empty()) continue;
    // no sigma' at all when some entry has no F-successor
    if (std::any_of(pre.begin(), pre.end(), [&](std::size_t a) { return succ[a].empty(); })) continue;
    // every sigma' with F entrywise
    std::vector<std::size_t> idx(addrs.size(), 0), post(addrs.size());
    while (true) {
      for (std::size_t k = 0; k < addrs.size(); ++k) post[k] = succ[pre[k]][idx[k]];
      const GlobalState h = build(post);
      for (const auto& m : holding)
        if (!inst.R(h, m)) return {name, false, to_string(m) + " at " + render(schema, g) + " then " + render(schema, h)};
      std::size_t k = 0;
      while (k < addrs.size() && ++idx[k] == succ[pre[k]].size()) idx[k++] = 0;
      if (k == addrs.size()) break;
    }
  }
  return {name, true, ""};
}

// --- lifting

namespace {

template <class L>
struct LayerRun {
  Automaton<OState<L>> system;
  Checked<OState<L>> checked;
};

template <class L>
LayerRun<L> run_layer(const OpenInstance& inst, const OpenAutomaton<L>& a, Layer layer,
                      std::vector<StateCheck<OState<L>>> extra_state = {},
                      std::vector<StepCheck<OState<L>>> extra_step = {}) {
  const auto& schema = inst.prog->spec().schema;
  auto setup = open_setup(schema, inst.sc, layer_assumption(inst, layer, a.owned));
  LayerRun<L> r{open_system(a, setup), {}};
  CheckContext ctx{setup.universe, setup.fallback, inst.options};
  r.checked = run_checks(r.system, {inst.invariant}, ctx, std::move(extra_state), std::move(extra_step));
  return r;
}

template <class L>
PremiseCheck violation_check(const std::string& name, const LayerRun<L>& run, bool step, std::size_t slot) {
  const auto& ex = *run.checked.ex;
  const auto& v = step ? ex.step_violations.at(slot) : ex.state_violations.at(slot);
  if (!v) {
    if (!ex.complete) return {name, false, "exploration incomplete: " + ex.bound_reason};
    return {name, true, ""};
  }
  std::string w = v->message + " at " + run.system.render(ex.states[v->state]);
  if (v->action) w += " via " + to_string(*v->action);
  return {name, false, w};
}

/// Every state of `upper`, projected, is reachable in `lower`. With
/// `scope`, both sides are compared on the sigma entries in scope only.
template <class L, class M, class Proj>
PremiseCheck projection_check(const std::string& name, const LayerRun<L>& upper, const LayerRun<M>& lower, Proj proj,
                              std::optional<AddrSet> scope = std::nullopt) {
  const auto& up = *upper.checked.ex;
  const auto& low = *lower.checked.ex;
  if (!low.complete) return {name, false, "lower layer incomplete: " + low.bound_reason};
  if (!up.complete) return {name, false, "exploration incomplete: " + up.bound_reason};
  std::set<OState<M>> restricted;
  if (scope)
    for (const auto& s : low.states) restricted.insert({s.sigma.restrict(*scope), s.local});
  for (const auto& s : up.states) {
    OState<M> p = proj(s);
    const bool found = scope ? restricted.count({p.sigma.restrict(*scope), p.local}) > 0 : low.find(p).has_value();
    if (!found) return {name, false, "no counterpart for " + upper.system.render(s)};
  }
  return {name, true, ""};
}

/// A step check: local steps keep F on the owned entries.
template <class L>
StepCheck<OState<L>> f_steps(const Predicate& F, AddrSet owned) {
  return [F, owned](const OState<L>& s, const Action& a, const OState<L>& t) -> std::optional<std::string> {
    if (std::holds_alternative<act::Env>(a)) return std::nullopt;
    for (Address i : owned.members())
      if (!rel(F, s.sigma.at(i), t.sigma.at(i))) return "F fails at #" + std::to_string(i);
    return std::nullopt;
  };
}

/// A step check: every *cast message satisfies R before the step.
template <class L>
StepCheck<OState<L>> cast_msgs(const MessageRelation& R) {
  return [R](const OState<L>& s, const Action& a, const OState<L>&) -> std::optional<std::string> {
    if (auto c = std::get_if<act::StarCast>(&a); c && !R(s.sigma, c->m)) return "cast of " + to_string(c->m);
    return std::nullopt;
  };
}

LayerReport report(Layer layer, Address node, Verdict v) {
  LayerReport r;
  r.layer = layer;
  r.node = node;
  r.invariant = std::move(v);
  return r;
}

}  // namespace

std::vector<LayerReport> check_lifting(const OpenInstance& inst, Layer top, Address focus) {
  const auto& schema = inst.prog->spec().schema;
  const auto& dom = inst.sc.dom;
  std::vector<LayerReport> out;
  const AddrSet self{focus};

  auto seq = run_layer(inst, instance_oseq(inst, focus), Layer::Seq, {}, {f_steps<TermId>(inst.F, self)});
  out.push_back(report(Layer::Seq, focus, seq.checked.verdicts.front()));
  out.back().premises.push_back(check_reflexive("F reflexive", inst.F, schema, dom));
  if (top == Layer::Seq) return out;

  // qmsg: the protocol's own steps respect F, E implies F, R is stable
  // under F, F is reflexive
  const auto queued = [&inst](const OState<OProc>& s) -> std::optional<std::string> {
    for (const auto& m : s.local.right.items)
      if (!inst.R(s.sigma, m)) return "queued " + to_string(m) + " violates " + inst.R_text;
    return std::nullopt;
  };
  auto qm = run_layer(inst, instance_opar(inst, focus), Layer::Qmsg, {queued});
  {
    auto& r = out.emplace_back(report(Layer::Qmsg, focus, qm.checked.verdicts.front()));
    r.premises.push_back(violation_check("(1) local steps satisfy F", seq, true, 0));
    r.premises.push_back(check_implies("(2) E implies F", inst.E, inst.F, schema, dom));
    r.premises.push_back(check_message_stable("(3) F preserves R", inst));
    r.premises.push_back(check_reflexive("(4) F reflexive", inst.F, schema, dom));
    r.conclusions.push_back(projection_check("protocol part open reachable", qm, seq, [](const OState<OProc>& s) {
      return OState<TermId>{s.sigma, s.local.left};
    }));
    r.conclusions.push_back(violation_check("queued messages satisfy R", qm, false, 1));
  }
  if (top == Layer::Qmsg) return out;

  auto node_run = [&](Address i) {
    return run_layer(inst, instance_onode(inst, i), Layer::Node, {},
                     {cast_msgs<ONode>(inst.R), f_steps<ONode>(inst.F, AddrSet{i})});
  };
  auto nd = node_run(focus);
  {
    auto& r = out.emplace_back(report(Layer::Node, focus, nd.checked.verdicts.front()));
    r.premises.push_back(check_implies("E implies F (stuttering steps)", inst.E, inst.F, schema, dom));
    r.conclusions.push_back(projection_check("process part open reachable", nd, qm, [](const OState<ONode>& s) {
      return OState<OProc>{s.sigma, s.local.inner};
    }));
  }
  if (top == Layer::Node) return out;
  seq = {};
  qm = {};

  if (!inst.sc.net) throw ModelError("lifting beyond the node layer needs a net tree");
  const auto leaves = inst.sc.net->leaves();
  std::vector<LayerRun<ONode>> nodes;
  for (const auto& [a, range] : leaves) nodes.push_back(a == focus ? std::move(nd) : node_run(a));
  auto onet = instance_onet(inst);
  auto pn = run_layer(inst, make_opnet(onet), Layer::Pnet);
  {
    auto& r = out.emplace_back(report(Layer::Pnet, 0, pn.checked.verdicts.front()));
    r.premises.push_back(check_reflexive("E reflexive", inst.E, schema, dom));
    r.premises.push_back(check_reflexive("F reflexive", inst.F, schema, dom));
    for (std::size_t k = 0; k < leaves.size(); ++k) {
      const std::string at = " at #" + std::to_string(leaves[k].first);
      r.premises.push_back(violation_check("casts satisfy R" + at, nodes[k], true, 0));
      r.premises.push_back(violation_check("local steps satisfy F" + at, nodes[k], true, 1));
      r.conclusions.push_back(projection_check("node open reachable" + at, pn, nodes[k], [k](const OState<ONet>& s) {
        return OState<ONode>{s.sigma, s.local.leaves[k]};
      }, AddrSet{leaves[k].first}));
    }
  }
  nodes.clear();
  if (top == Layer::Pnet) return out;

  const auto arrivals = [](const OState<OClosed>&, const Action& a, const OState<OClosed>&) -> std::optional<std::string> {
    if (std::holds_alternative<act::Arrive>(a)) return "arrive at the closed layer";
    return std::nullopt;
  };
  auto cl = run_layer(inst, make_oclosed(onet, inst.sc.inject), Layer::Closed, {}, {arrivals});
  {
    auto& r = out.emplace_back(report(Layer::Closed, 0, cl.checked.verdicts.front()));
    r.premises.push_back(violation_check("no arrivals from outside (S eliminated)", cl, true, 0));
    // injections are arrivals at the partial network, so every closed state
    // is an open reachable state of the partial network when the
    // environment offers the injected messages
    bool covered = true;
    for (const auto& inj : inst.sc.inject) {
      const auto msgs = env_messages(inst.sc);
      covered = covered && std::count(msgs.begin(), msgs.end(), Message::newpkt(inj.data, inj.dst));
    }
    if (covered)
      r.conclusions.push_back(projection_check("partial network open reachable", cl, pn, [](const OState<OClosed>& s) {
        return OState<ONet>{s.sigma, s.local.net};
      }));
  }
  return out;
}

// --- simulation and transfer

std::function<OpenInit<TermId>(const SeqState&)> split_seq(Address i) {
  return [i](const SeqState& s) { return OpenInit<TermId>{Updates{{i, s.data}}, s.control}; };
}

std::function<OpenInit<OProc>(const Proc&)> split_proc(Address i) {
  return [i](const Proc& p) { return OpenInit<OProc>{Updates{{i, p.left.data}}, OProc{p.left.control, p.right}}; };
}

OState<OClosed> split_closed(const ClosedState& s, const GlobalState& base) {
  OState<OClosed> o{base, {}};
  o.local.injected = s.injected;
  for (const auto& n : s.net.leaves) {
    o.sigma.set(n.address, n.inner.left.data);
    o.local.net.leaves.push_back({n.address, OProc{n.inner.left.control, n.inner.right}, n.range});
  }
  return o;
}

TransferResult check_transfer(const OpenInstance& inst, const Predicate& pred) {
  const auto& sc = inst.sc;
  if (!sc.net) throw ModelError("transfer needs a net tree");
  const AddrSet ips = sc.net->ips();
  if (ips != sc.topo.universe) throw ModelError("transfer needs the universe to be exactly the net addresses");
  const auto& schema = inst.prog->spec().schema;
  TransferResult r;

  auto onet = instance_onet(inst);
  auto setup = open_setup(schema, sc, layer_assumption(inst, Layer::Closed, ips));
  const auto osys = open_system(make_oclosed(onet, sc.inject), setup);
  auto oex = explore(osys, inst.options);
  r.open_states = oex->states.size();

  auto net = std::make_shared<const Network>(*sc.net, protocol_with_queue(inst.prog, inst.process, sc.dom, sc.queue_bound),
                                             sc.dom, sc.topo);
  const auto closed = make_closed(net, sc.inject);
  auto ex = explore(closed, inst.options);
  r.standard_states = ex->states.size();
  if (!ex->complete || !oex->complete) {
    r.outcome = Outcome::BoundExceeded;
    r.reason = !ex->complete ? ex->bound_reason : oex->bound_reason;
    return r;
  }
  const GlobalState base(setup.fallback);
  for (const auto& s : ex->states) {
    const auto o = split_closed(s, base);
    if (pred.global && !pred.global(o.sigma, ips)) r.pullback_holds = false;
    if (r.outcome == Outcome::Holds && !oex->find(o)) {
      r.outcome = Outcome::Counterexample;
      r.reason = "no open counterpart for " + closed.render(s);
    }
  }
  return r;
}

}  // namespace awn
