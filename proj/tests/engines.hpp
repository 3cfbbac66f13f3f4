#pragma once

// Builds the standard engines from a model and a scenario, the way the CLI
// does, for tests that need whole runs.

#include <sstream>

#include "awn/check.hpp"
#include "awn/report.hpp"
#include "awn/toy.hpp"
#include "support.hpp"

namespace test {

struct Run {
  awn::Verdict verdict;
  std::optional<std::string> replay_error;  // set when a trace failed to replay
  bool replayed = false;
};

inline awn::Predicate find_predicate(const awn::Program& prog, const awn::Domains& dom, const std::string& name) {
  if (name == "bigger_than_next") return awn::bigger_than_next_predicate(prog.spec().schema);
  for (const auto& d : prog.spec().predicates)
    if (d.name == name) return awn::make_predicate(d, prog.spec().schema, dom);
  return awn::parse_predicate(name, name, prog.spec().schema, dom);
}

template <class S>
Run run_on(const awn::Automaton<S>& a, const awn::Predicate& p, const awn::CheckContext& ctx) {
  Run r;
  r.verdict = awn::check_invariant(a, p, ctx);
  if (r.verdict.trace) {
    r.replayed = true;
    // through the JSON document, as the CLI writes it
    const auto doc = awn::trace_json({"", "", "", ctx.options.bounds}, r.verdict);
    r.replay_error = awn::replay(a, awn::trace_from_json(doc));
  }
  return r;
}

/// engine: seq, par or closed.
inline Run run_engine(const std::string& model, const std::string& scenario, const std::string& engine,
                      const std::string& pred, awn::ExploreOptions opt = {}) {
  using namespace awn;
  const auto prog = load_program(read_file(corpus(model)));
  const auto sc = load_scenario(corpus("scenarios/" + scenario + ".scn"));
  const auto p = find_predicate(*prog, sc.dom, pred);
  CheckContext ctx{sc.topo.universe, default_data(prog->spec().schema, sc.dom), opt};
  const std::string process = prog->spec().processes.front().name;
  if (engine == "seq") return run_on(make_seq(prog, process, sc.focus(), sc.dom), p, ctx);
  if (engine == "par") return run_on(protocol_with_queue(prog, process, sc.dom, sc.queue_bound)(sc.focus()), p, ctx);
  if (engine == "closed") {
    auto net = std::make_shared<const Network>(*sc.net, protocol_with_queue(prog, process, sc.dom, sc.queue_bound),
                                               sc.dom, sc.topo);
    return run_on(make_closed(net, sc.inject), p, ctx);
  }
  throw std::invalid_argument("unknown engine " + engine);
}

struct Expectation {
  std::string model, scenario, engine, predicate, outcome;
};

inline std::vector<Expectation> expectations() {
  std::istringstream in(awn::read_file(corpus("expected.txt")));
  std::vector<Expectation> v;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    Expectation e;
    ls >> e.model >> e.scenario >> e.engine >> e.predicate >> e.outcome;
    v.push_back(e);
  }
  return v;
}

}  // namespace test
