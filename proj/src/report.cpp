#include "awn/report.hpp"

#include <sstream>

#include "awn/printer.hpp"

namespace awn {

json bounds_json(const Bounds& b) {
  json j;
  j["max_states"] = b.max_states;
  if (b.max_depth == std::numeric_limits<std::size_t>::max()) j["max_depth"] = nullptr;
  else j["max_depth"] = b.max_depth;
  return j;
}

json domains_json(const Scenario& sc) {
  json j;
  j["data_max"] = sc.dom.data_max;
  j["addresses"] = sc.dom.addresses;
  j["arbitrary"] = sc.dom.arbitrary;
  j["queue_bound"] = sc.queue_bound;
  j["topology"] = sc.topo.dynamic ? "dynamic" : "static";
  if (sc.net) j["net"] = to_string(*sc.net);
  json inj = json::array();
  for (const auto& i : sc.inject) inj.push_back({i.node, i.data, i.dst});
  j["inject"] = inj;
  json env = json::array();
  for (const auto& m : sc.env) env.push_back((m.kind == EnvMove::Kind::Bump ? "bump(" : "havoc(") + m.var + ")");
  j["env"] = env;
  json msgs = json::array();
  for (const auto& m : sc.env_msgs) msgs.push_back(to_string(m));
  j["env_msgs"] = msgs;
  return j;
}

json stats_json(const Stats& s) {
  return {{"states", s.states}, {"transitions", s.transitions}, {"saturated", s.saturated}, {"depth", s.depth},
          {"complete", s.complete}};
}

json trace_steps_json(const Trace& t) {
  json steps = json::array();
  auto one = [](const TraceStep& s, bool initial) {
    json j;
    j["action"] = initial ? "init" : s.action;
    if (!s.label.empty()) j["label"] = s.label;
    j["stateDigest"] = s.digest;
    j["state"] = s.state;
    return j;
  };
  steps.push_back(one(t.initial, true));
  for (const auto& s : t.steps) steps.push_back(one(s, false));
  return steps;
}

json verdict_json(const Verdict& v) {
  json j;
  j["predicate"] = v.predicate;
  j["outcome"] = to_string(v.outcome);
  if (!v.reason.empty()) j["reason"] = v.reason;
  j["stats"] = stats_json(v.stats);
  if (v.trace) j["trace"] = trace_steps_json(*v.trace);
  return j;
}

json trace_json(const RunInfo& run, const Verdict& v) {
  json j;
  j["schema"] = kTraceSchema;
  j["model"] = run.model;
  j["scenario"] = run.scenario;
  j["engine"] = run.engine;
  j["predicate"] = v.predicate;
  j["outcome"] = to_string(v.outcome);
  j["bounds"] = bounds_json(run.bounds);
  j["steps"] = v.trace ? trace_steps_json(*v.trace) : json::array();
  return j;
}

Trace trace_from_json(const json& j) {
  const auto& steps = j.at("steps");
  if (steps.empty()) throw ModelError("trace has no steps");
  auto one = [](const json& s) {
    TraceStep t;
    t.action = s.at("action").get<std::string>();
    t.digest = s.at("stateDigest").get<std::string>();
    if (s.contains("label")) t.label = s["label"].get<std::string>();
    if (s.contains("state")) t.state = s["state"].get<std::string>();
    return t;
  };
  Trace t;
  t.initial = one(steps.front());
  t.initial.action.clear();
  for (std::size_t k = 1; k < steps.size(); ++k) t.steps.push_back(one(steps[k]));
  return t;
}

json check_json(const RunInfo& run, const Scenario& sc, const std::vector<Verdict>& verdicts) {
  json j;
  j["schema"] = kReportSchema;
  j["model"] = run.model;
  j["scenario"] = run.scenario;
  j["engine"] = run.engine;
  j["bounds"] = bounds_json(run.bounds);
  j["domains"] = domains_json(sc);
  json vs = json::array();
  for (const auto& v : verdicts) vs.push_back(verdict_json(v));
  j["verdicts"] = vs;
  return j;
}

std::string check_text(const RunInfo& run, const std::vector<Verdict>& verdicts) {
  std::ostringstream o;
  o << "model " << run.model << ", scenario " << run.scenario << ", engine " << run.engine << "\n";
  for (const auto& v : verdicts) {
    o << v.predicate << ": " << to_string(v.outcome) << " (" << v.stats.states << " states, " << v.stats.transitions
      << " transitions)";
    if (!v.reason.empty()) o << " " << v.reason;
    o << "\n";
    if (v.trace) {
      o << "  init " << v.trace->initial.state << "\n";
      for (const auto& s : v.trace->steps) o << "  -" << s.action << "-> " << s.state << "\n";
    }
  }
  return o.str();
}

namespace {

std::string labels(const Program& prog, TermId t) {
  std::string s;
  for (const auto& l : prog.labels_of(t)) s += (s.empty() ? "" : ",") + to_string(l);
  return s;
}

}  // namespace

json analyze_json(const std::string& model, const Program& prog, const ControlReport& r) {
  json j;
  j["schema"] = kReportSchema;
  j["model"] = model;
  json procs = json::array();
  for (const auto& p : prog.spec().processes) procs.push_back(p.name);
  j["processes"] = procs;
  j["wellformed"] = r.wellformed;
  j["simple_labels"] = r.simple_labels;
  j["control_within"] = r.control_within;
  if (r.wellformed) {
    j["cterm_count"] = r.cterm_count;
    json cs = json::array();
    for (TermId t : r.cterms) cs.push_back({{"label", labels(prog, t)}, {"term", head(prog.ptr(t))}});
    j["cterms"] = cs;
  }
  return j;
}

std::string analyze_text(const std::string& model, const Program& prog, const ControlReport& r) {
  std::ostringstream o;
  o << model << "\n";
  o << "wellformed     " << (r.wellformed ? "true" : "false") << "\n";
  o << "simple-labels  " << (r.simple_labels ? "true" : "false") << "\n";
  o << "control-within " << (r.control_within ? "true" : "false") << "\n";
  if (!r.wellformed) return o.str();
  o << "cterms         " << r.cterm_count << "\n";
  for (TermId t : r.cterms) o << "  " << head(prog.ptr(t)) << "\n";
  return o.str();
}

json vcs_json(const Program& prog, const std::string& predicate, const VcReport& r) {
  json j;
  j["schema"] = kReportSchema;
  j["predicate"] = predicate;
  j["side_conditions"] = {{"wellformed", r.wellformed}, {"simple_labels", r.simple_labels},
                          {"control_within", r.control_within}};
  j["all_pass"] = r.all_pass();
  json os = json::array();
  for (const auto& ob : r.obligations) {
    json e;
    e["kind"] = to_string(ob.kind);
    if (ob.term) e["label"] = labels(prog, *ob.term);
    e["description"] = ob.description;
    e["cases"] = ob.cases;
    e["successors"] = ob.successors;
    e["ok"] = ob.ok;
    if (!ob.witness.empty()) e["witness"] = ob.witness;
    os.push_back(e);
  }
  j["obligations"] = os;
  return j;
}

std::string vcs_text(const Program&, const std::string& predicate, const VcReport& r) {
  std::ostringstream o;
  o << predicate << ": " << (r.all_pass() ? "all obligations pass" : "obligations fail") << "\n";
  for (const auto& c : r.failed_conditions()) o << "  side condition failed: " << c << "\n";
  for (const auto& ob : r.obligations) {
    o << "  " << (ob.ok ? "ok   " : "FAIL ") << ob.description << " [" << ob.cases << " cases]";
    if (!ob.witness.empty()) o << "\n       " << ob.witness;
    o << "\n";
  }
  return o.str();
}

namespace {

json checks_json(const std::vector<PremiseCheck>& cs) {
  json a = json::array();
  for (const auto& c : cs) {
    json e{{"name", c.name}, {"ok", c.ok}};
    if (!c.witness.empty()) e["witness"] = c.witness;
    a.push_back(e);
  }
  return a;
}

}  // namespace

json lifting_json(const std::vector<LayerReport>& layers) {
  json a = json::array();
  for (const auto& l : layers) {
    json e;
    e["layer"] = to_string(l.layer);
    if (l.layer <= Layer::Node) e["node"] = l.node;
    e["invariant"] = verdict_json(l.invariant);
    e["premises"] = checks_json(l.premises);
    e["conclusions"] = checks_json(l.conclusions);
    e["ok"] = l.ok();
    a.push_back(e);
  }
  return a;
}

std::string lifting_text(const std::vector<LayerReport>& layers) {
  std::ostringstream o;
  for (const auto& l : layers) {
    o << to_string(l.layer);
    if (l.layer <= Layer::Node) o << " at #" << l.node;
    o << ": invariant " << to_string(l.invariant.outcome) << " (" << l.invariant.stats.states << " states)";
    if (!l.invariant.reason.empty()) o << " " << l.invariant.reason;
    o << "\n";
    for (const auto& p : l.premises) o << "  premise    " << (p.ok ? "ok   " : "FAIL ") << p.name << (p.witness.empty() ? "" : ": " + p.witness) << "\n";
    for (const auto& p : l.conclusions) o << "  conclusion " << (p.ok ? "ok   " : "FAIL ") << p.name << (p.witness.empty() ? "" : ": " + p.witness) << "\n";
  }
  return o.str();
}

}  // namespace awn
