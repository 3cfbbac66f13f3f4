// awn: command-line front end.
//
//   awn analyze MODEL
//   awn vcs     --model M --scenario S --pred P...
//   awn check   --model M --scenario S --engine E [--layer L] --pred P...
//   awn trace   --model M --scenario S --engine E [--steps N | --replay FILE]
//
// Exit status: 0 holds, 1 parse or configuration error, 2 counterexample,
// 3 bound exceeded.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "awn/parser.hpp"
#include "awn/report.hpp"
#include "awn/toy_open.hpp"

using namespace awn;

namespace {

enum Exit { kHolds = 0, kConfig = 1, kCounterexample = 2, kBound = 3 };

struct Options {
  std::string model;
  std::string scenario;
  std::string engine = "closed";
  std::string layer = "closed";
  std::vector<std::string> preds;
  std::size_t max_states = Bounds{}.max_states;
  std::size_t max_depth = 0;
  std::string format = "text";
  std::string out;
  std::string trace_out;
  std::string rely;
  std::string msg_rel = "true";
  std::size_t steps = 20;
  std::string replay_file;
};

struct Loaded {
  std::shared_ptr<const Program> prog;
  Scenario sc;
  RunInfo run;
  ExploreOptions explore;
};

Loaded load(const Options& o) {
  Loaded l;
  l.prog = load_program(read_file(o.model));
  l.sc = load_scenario(o.scenario);
  l.run = {o.model, l.sc.name.empty() ? o.scenario : l.sc.name, o.engine, {}};
  if (o.engine == "open") l.run.engine += ":" + o.layer;
  if (o.max_states == 0) throw ModelError("--max-states must be positive");
  l.run.bounds.max_states = o.max_states;
  if (o.max_depth) l.run.bounds.max_depth = o.max_depth;
  l.explore.bounds = l.run.bounds;
  return l;
}

/// Declared predicates, bigger_than_next when the model has `no` and
/// `nhip`, and inline `name=text` definitions.
Predicate resolve_predicate(const Program& prog, const Domains& dom, const std::string& spec) {
  const auto& schema = prog.spec().schema;
  if (auto eq = spec.find('='); eq != std::string::npos && spec.find_first_of(" :<>!") > eq) {
    const std::string name = spec.substr(0, eq);
    const std::string text = spec.substr(eq + 1);
    return parse_predicate(name, text, schema, dom, text.find('\'') != std::string::npos);
  }
  for (const auto& d : prog.spec().predicates)
    if (d.name == spec) return make_predicate(d, schema, dom);
  if (spec == "bigger_than_next" && schema.find("no") && schema.find("nhip")) return bigger_than_next_predicate(schema);
  if (spec == "true") return true_predicate();
  throw ModelError("unknown predicate '" + spec + "'");
}

std::vector<Predicate> resolve_predicates(const Loaded& l, const Options& o) {
  if (o.preds.empty()) throw ModelError("no --pred given");
  std::vector<Predicate> v;
  for (const auto& p : o.preds) v.push_back(resolve_predicate(*l.prog, l.sc.dom, p));
  return v;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw ModelError("cannot write '" + o.out + "'");
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int exit_of(const std::vector<Verdict>& vs) {
  int e = kHolds;
  for (const auto& v : vs) {
    if (v.outcome == Outcome::Counterexample) return kCounterexample;
    if (v.outcome == Outcome::BoundExceeded) e = kBound;
  }
  return e;
}

void write_trace(const Options& o, const RunInfo& run, const std::vector<Verdict>& vs) {
  if (o.trace_out.empty()) return;
  for (const auto& v : vs)
    if (v.trace) {
      std::ofstream f(o.trace_out, std::ios::binary);
      if (!f) throw ModelError("cannot write '" + o.trace_out + "'");
      f << dump(trace_json(run, v));
      return;
    }
}

// --- engines

/// Calls `f` with the standard automaton the engine names.
template <class F>
auto with_engine(const Loaded& l, const std::string& engine, F&& f) {
  const auto& sc = l.sc;
  const std::string process = l.prog->spec().initial_process();
  const Address i = sc.focus();
  if (engine == "seq") return f(make_seq(l.prog, process, i, sc.dom));
  if (engine == "par") return f(protocol_with_queue(l.prog, process, sc.dom, sc.queue_bound)(i));
  if (engine == "node" || engine == "net" || engine == "closed") {
    if (!sc.net) throw ModelError("engine " + engine + " needs a net in the scenario");
    auto net = std::make_shared<const Network>(*sc.net, protocol_with_queue(l.prog, process, sc.dom, sc.queue_bound),
                                               sc.dom, sc.topo);
    if (engine == "node") {
      const auto leaves = sc.net->leaves();
      for (std::size_t k = 0; k < leaves.size(); ++k)
        if (leaves[k].first == i) return f(make_node(net->process(k), i, leaves[k].second, sc.dom, sc.topo));
    }
    if (engine == "net") return f(make_pnet(net));
    if (engine == "node") throw ModelError("focus node is not a leaf of the net");
    return f(make_closed(net, sc.inject));
  }
  throw ModelError("unknown engine '" + engine + "'");
}

OpenInstance open_instance(const Loaded& l, const Options& o, Predicate inv) {
  OpenInstance inst = toy_equality_instance(l.prog, l.sc, std::move(inv), l.explore);
  inst.process = l.prog->spec().initial_process();
  if (!o.rely.empty()) {
    Predicate r = resolve_predicate(*l.prog, l.sc.dom, o.rely);
    if (r.kind != Predicate::Kind::Step) throw ModelError("--rely needs a step predicate");
    inst.E = r;
    inst.F = r;
  }
  const auto& schema = l.prog->spec().schema;
  if (o.msg_rel == "msg_num_ok") {
    inst.R = msg_num_ok(schema);
    inst.R_text = "msg_num_ok";
    inst.R_reads = {schema.require("no")};
  } else if (o.msg_rel != "true") {
    throw ModelError("unknown message relation '" + o.msg_rel + "' (true or msg_num_ok)");
  }
  return inst;
}

int cmd_check_open(const Options& o, const Loaded& l) {
  const auto layer = parse_layer(o.layer);
  if (!layer) throw ModelError("unknown layer '" + o.layer + "'");
  std::vector<Verdict> top;
  json layers = json::array();
  std::string text;
  bool premises_ok = true;
  for (auto& p : resolve_predicates(l, o)) {
    const auto reports = check_lifting(open_instance(l, o, p), *layer, l.sc.focus());
    for (const auto& r : reports) premises_ok = premises_ok && r.ok();
    top.push_back(reports.back().invariant);
    layers.push_back({{"predicate", p.name}, {"layers", lifting_json(reports)}});
    text += p.name + "\n" + lifting_text(reports);
  }
  write_trace(o, l.run, top);
  if (o.format == "json") {
    json j = check_json(l.run, l.sc, top);
    j["lifting"] = layers;
    emit(o, dump(j));
  } else {
    emit(o, check_text(l.run, top) + text);
  }
  const int e = exit_of(top);
  return e == kHolds && !premises_ok ? kCounterexample : e;
}

int cmd_check(const Options& o) {
  const Loaded l = load(o);
  if (o.engine == "open") return cmd_check_open(o, l);
  const auto preds = resolve_predicates(l, o);
  CheckContext ctx{l.sc.topo.universe, default_data(l.prog->spec().schema, l.sc.dom), l.explore};
  const auto verdicts = with_engine(l, o.engine, [&](const auto& a) { return check_predicates(a, preds, ctx); });
  write_trace(o, l.run, verdicts);
  emit(o, o.format == "json" ? dump(check_json(l.run, l.sc, verdicts)) : check_text(l.run, verdicts));
  return exit_of(verdicts);
}

int cmd_vcs(const Options& o) {
  const Loaded l = load(o);
  int e = kHolds;
  json all = json::array();
  std::string text;
  for (const auto& p : resolve_predicates(l, o)) {
    const auto r = generate_vcs(*l.prog, l.prog->spec().initial_process(), p, l.sc.dom);
    if (!r.side_conditions()) e = kConfig;
    else if (!r.all_pass() && e == kHolds) e = kCounterexample;
    all.push_back(vcs_json(*l.prog, p.name, r));
    text += vcs_text(*l.prog, p.name, r);
  }
  emit(o, o.format == "json" ? dump(json{{"schema", kReportSchema}, {"model", o.model}, {"vcs", all}}) : text);
  return e;
}

/// Deterministic walk: the first successor in canonical order at each step.
template <class S>
Trace walk(const Automaton<S>& a, std::size_t steps) {
  auto inits = a.init();
  if (inits.empty()) throw ModelError("automaton has no initial state");
  std::sort(inits.begin(), inits.end());
  S cur = inits.front();
  Trace t;
  t.initial = trace_step(a, cur, "");
  for (std::size_t k = 0; k < steps; ++k) {
    auto ts = a.step(cur);
    if (ts.empty()) break;
    auto it = std::min_element(ts.begin(), ts.end(), [](const Transition<S>& x, const Transition<S>& y) {
      if (x.action != y.action) return x.action < y.action;
      return x.target < y.target;
    });
    cur = std::move(it->target);
    t.steps.push_back(trace_step(a, cur, to_string(it->action)));
  }
  return t;
}

int cmd_trace(const Options& o) {
  const Loaded l = load(o);
  if (!o.replay_file.empty()) {
    const Trace t = trace_from_json(json::parse(read_file(o.replay_file)));
    const auto err = with_engine(l, o.engine, [&](const auto& a) { return replay(a, t); });
    if (err) {
      std::cerr << "replay failed: " << *err << "\n";
      return kCounterexample;
    }
    std::cout << "replayed " << t.steps.size() << " steps\n";
    return kHolds;
  }
  Verdict v;
  v.predicate = "walk";
  v.trace = with_engine(l, o.engine, [&](const auto& a) { return walk(a, o.steps); });
  v.stats.states = v.trace->steps.size() + 1;
  if (o.format == "json") {
    emit(o, dump(trace_json(l.run, v)));
  } else {
    std::string s = "init " + v.trace->initial.state + "\n";
    for (const auto& st : v.trace->steps) s += "-" + st.action + "-> " + st.state + "\n";
    emit(o, s);
  }
  return kHolds;
}

int cmd_analyze(const Options& o) {
  const auto prog = load_program(read_file(o.model));
  const auto r = analyze(*prog);
  emit(o, o.format == "json" ? dump(analyze_json(o.model, *prog, r)) : analyze_text(o.model, *prog, r));
  return r.wellformed && r.simple_labels && r.control_within ? kHolds : kCounterexample;
}

void common(CLI::App* c, Options& o, bool engine) {
  c->add_option("--model", o.model, "model file (.awn)")->required()->check(CLI::ExistingFile);
  c->add_option("--scenario", o.scenario, "scenario file (.scn)")->required()->check(CLI::ExistingFile);
  c->add_option("--max-states", o.max_states, "state bound");
  c->add_option("--max-depth", o.max_depth, "depth bound (0: none)");
  c->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  c->add_option("--out", o.out, "write the report here instead of stdout");
  if (engine)
    c->add_option("--engine", o.engine, "seq, par, node, net, closed or open")
        ->check(CLI::IsMember({"seq", "par", "node", "net", "closed", "open"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AWN semantics engine and invariant checker"};
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "control-term analysis of a model");
  analyze->add_option("model", o.model, "model file")->required()->check(CLI::ExistingFile);
  analyze->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));
  analyze->add_option("--out", o.out);

  auto* vcs = app.add_subcommand("vcs", "per control term verification conditions");
  common(vcs, o, false);
  vcs->add_option("--pred", o.preds, "predicate name or name=text")->required();

  auto* check = app.add_subcommand("check", "explore and check invariants");
  common(check, o, true);
  check->add_option("--pred", o.preds, "predicate name or name=text")->required();
  check->add_option("--layer", o.layer, "open engine: top layer to lift to")
      ->check(CLI::IsMember({"seq", "qmsg", "node", "pnet", "closed"}));
  check->add_option("--rely", o.rely, "open engine: step predicate used for E and F");
  check->add_option("--msg-rel", o.msg_rel, "open engine: true or msg_num_ok");
  check->add_option("--trace", o.trace_out, "write the first counterexample here");

  auto* trace = app.add_subcommand("trace", "deterministic walk or trace replay");
  common(trace, o, true);
  trace->add_option("--steps", o.steps, "walk length");
  trace->add_option("--replay", o.replay_file, "trace document to replay")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int r = app.exit(e);
    return r == 0 ? 0 : kConfig;
  }
  try {
    if (*analyze) return cmd_analyze(o);
    if (*vcs) return cmd_vcs(o);
    if (*check) return cmd_check(o);
    if (*trace) {
      if (o.engine == "open") throw ModelError("trace supports the standard engines");
      return cmd_trace(o);
    }
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const EvalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
  return kConfig;
}
