#pragma once

#include <memory>
#include <optional>

#include "awn/explore.hpp"
#include "awn/predicates.hpp"

namespace awn {

enum class Outcome : std::uint8_t { Holds, Counterexample, BoundExceeded };
std::string to_string(Outcome o);

struct TraceStep {
  std::string action;  // empty for the initial state
  std::string label;   // control labels per process, '|' separated
  std::string digest;
  std::string state;
};

/// A path from an initial state. Replaying it re-derives every digest.
struct Trace {
  TraceStep initial;
  std::vector<TraceStep> steps;
};

struct Stats {
  std::size_t states = 0;
  std::size_t transitions = 0;
  std::size_t saturated = 0;
  std::size_t depth = 0;
  bool complete = true;
};

struct Verdict {
  std::string predicate;
  Outcome outcome = Outcome::Holds;
  std::optional<Trace> trace;
  std::string reason;  // violation message or the bound that tripped
  Stats stats;
};

/// Everything a check needs beyond the automaton.
struct CheckContext {
  AddrSet universe;
  DataState fallback;
  ExploreOptions options;
};

std::string labels_string(const std::vector<NodeView>& nodes);

template <class S>
TraceStep trace_step(const Automaton<S>& a, const S& s, std::string action) {
  return {std::move(action), labels_string(a.nodes(s)), digest(hash_value(s)), a.render(s)};
}

/// Shortest path to `state` via parent pointers, optionally extended by one
/// step to `last.second`.
template <class S>
Trace make_trace(const Automaton<S>& a, const Exploration<S>& ex, std::uint32_t state,
                 const std::optional<std::pair<Action, std::uint32_t>>& last = std::nullopt) {
  std::vector<std::uint32_t> path;
  for (std::uint32_t v = state;; v = ex.parent[v]) {
    path.push_back(v);
    if (ex.parent[v] == v) break;
  }
  std::reverse(path.begin(), path.end());
  Trace t;
  t.initial = trace_step(a, ex.states[path.front()], "");
  for (std::size_t k = 1; k < path.size(); ++k)
    t.steps.push_back(trace_step(a, ex.states[path[k]], to_string(ex.via[path[k]])));
  if (last) t.steps.push_back(trace_step(a, ex.states[last->second], to_string(last->first)));
  return t;
}

/// Re-executes a trace; returns a description of the first mismatch.
template <class S>
std::optional<std::string> replay(const Automaton<S>& a, const Trace& t) {
  std::optional<S> cur;
  for (auto& s : a.init())
    if (digest(hash_value(s)) == t.initial.digest) {
      cur = std::move(s);
      break;
    }
  if (!cur) return "no initial state has digest " + t.initial.digest;
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    const auto& st = t.steps[k];
    std::optional<S> next;
    for (auto& tr : a.step(*cur))
      if (to_string(tr.action) == st.action && digest(hash_value(tr.target)) == st.digest) {
        next = std::move(tr.target);
        break;
      }
    if (!next) return "step " + std::to_string(k + 1) + " (" + st.action + ") has no matching transition";
    cur = std::move(next);
  }
  return std::nullopt;
}

template <class S>
Stats stats_of(const Exploration<S>& ex) {
  return {ex.states.size(), ex.transitions, ex.saturated, ex.depth, ex.complete};
}

/// Verdicts plus the exploration they came from. Extra checks occupy the
/// violation slots after those of the predicates.
template <class S>
struct Checked {
  std::vector<Verdict> verdicts;
  std::unique_ptr<Exploration<S>> ex;
};

template <class S>
Checked<S> run_checks(const Automaton<S>& a, const std::vector<Predicate>& preds, const CheckContext& ctx,
                      std::vector<StateCheck<S>> extra_state = {}, std::vector<StepCheck<S>> extra_step = {}) {
  std::vector<StateCheck<S>> state_checks;
  std::vector<StepCheck<S>> step_checks;
  std::vector<std::pair<bool, std::size_t>> slot;  // (is step, index)
  for (const auto& p : preds) {
    switch (p.kind) {
      case Predicate::Kind::State:
        slot.emplace_back(false, state_checks.size());
        state_checks.push_back([&a, p](const S& s) -> std::optional<std::string> {
          for (const auto& v : a.nodes(s))
            if (!p.state(*v.data, *v.labels)) return "violated at #" + std::to_string(v.address);
          return std::nullopt;
        });
        break;
      case Predicate::Kind::Global:
        slot.emplace_back(false, state_checks.size());
        state_checks.push_back([&a, p, &ctx](const S& s) -> std::optional<std::string> {
          const auto views = a.nodes(s);
          AddrSet scope;
          for (const auto& v : views) scope.insert(v.address);
          const GlobalState g = a.global ? a.global(s) : global_view(views, ctx.universe, ctx.fallback);
          if (!p.global(g, scope)) return "violated";
          return std::nullopt;
        });
        break;
      case Predicate::Kind::Step:
        slot.emplace_back(true, step_checks.size());
        step_checks.push_back([&a, p](const S& s, const Action&, const S& t) -> std::optional<std::string> {
          const auto pre = a.nodes(s);
          const auto post = a.nodes(t);
          for (std::size_t k = 0; k < pre.size() && k < post.size(); ++k)
            if (!p.step(*pre[k].data, *post[k].data)) return "violated at #" + std::to_string(pre[k].address);
          return std::nullopt;
        });
        break;
    }
  }
  for (auto& c : extra_state) state_checks.push_back(std::move(c));
  for (auto& c : extra_step) step_checks.push_back(std::move(c));
  Checked<S> out;
  out.ex = explore(a, ctx.options, state_checks, step_checks);
  const auto& ex = *out.ex;
  for (std::size_t k = 0; k < preds.size(); ++k) {
    Verdict v;
    v.predicate = preds[k].name;
    v.stats = stats_of(ex);
    const auto& viol = slot[k].first ? ex.step_violations[slot[k].second] : ex.state_violations[slot[k].second];
    if (viol) {
      v.outcome = Outcome::Counterexample;
      v.reason = viol->message;
      if (viol->action) v.trace = make_trace(a, ex, viol->state, std::make_pair(*viol->action, viol->target));
      else v.trace = make_trace(a, ex, viol->state);
    } else if (!ex.complete) {
      v.outcome = Outcome::BoundExceeded;
      v.reason = ex.bound_reason;
    }
    out.verdicts.push_back(std::move(v));
  }
  return out;
}

/// One exploration checking every predicate; each gets its own verdict
/// with the canonical first violation.
template <class S>
std::vector<Verdict> check_predicates(const Automaton<S>& a, const std::vector<Predicate>& preds,
                                      const CheckContext& ctx) {
  return run_checks(a, preds, ctx).verdicts;
}

template <class S>
Verdict check_invariant(const Automaton<S>& a, const Predicate& p, const CheckContext& ctx) {
  return check_predicates(a, {p}, ctx).front();
}

}  // namespace awn
