#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_set>

#include "awn/automaton.hpp"

namespace awn {

struct Bounds {
  std::size_t max_states = 2'000'000;
  std::size_t max_depth = std::numeric_limits<std::size_t>::max();
};

using ActionFilter = std::function<bool(const Action&)>;

struct ExploreOptions {
  Bounds bounds;
  ActionFilter filter;  // actions the step rule may use; empty means all
  bool keep_edges = false;
  unsigned workers = 0;  // 0: AWN_WORKERS or the hardware concurrency
};

/// Worker count from AWN_WORKERS, falling back to the hardware.
unsigned default_workers();

/// Hex rendering of a state hash; traces identify states by it.
std::string digest(std::uint64_t h);

struct Edge {
  std::uint32_t src = 0;
  Action action;
  std::uint32_t dst = 0;
};

template <class S>
using StateCheck = std::function<std::optional<std::string>(const S&)>;
template <class S>
using StepCheck = std::function<std::optional<std::string>(const S&, const Action&, const S&)>;

/// First canonical violation of one check.
struct Violation {
  std::uint32_t state = 0;           // violating state, or the step source
  std::optional<Action> action;      // set for step checks
  std::uint32_t target = 0;          // step target
  std::string message;
};

template <class S>
struct Exploration {
  std::vector<S> states;
  std::vector<std::uint64_t> hashes;
  std::vector<std::uint32_t> parent;  // self for initial states
  std::vector<Action> via;            // action from parent (Tau for initial states)
  std::size_t initial = 0;
  std::size_t transitions = 0;
  std::size_t saturated = 0;
  std::size_t depth = 0;
  bool complete = true;
  std::string bound_reason;
  std::vector<Edge> edges;
  std::vector<std::optional<Violation>> state_violations;
  std::vector<std::optional<Violation>> step_violations;

  std::optional<std::uint32_t> find(const S& s) const {
    auto it = index.find(s);
    if (it == index.end()) return std::nullopt;
    return *it;
  }

  // lookup by state without storing it twice
  struct Probe {
    const S* state;
    std::uint64_t hash;
  };
  struct Hash {
    using is_transparent = void;
    const Exploration* self;
    std::size_t operator()(std::uint32_t id) const { return static_cast<std::size_t>(self->hashes[id]); }
    std::size_t operator()(const S& s) const { return static_cast<std::size_t>(hash_value(s)); }
    std::size_t operator()(const Probe& p) const { return static_cast<std::size_t>(p.hash); }
  };
  struct Eq {
    using is_transparent = void;
    const Exploration* self;
    bool operator()(std::uint32_t a, std::uint32_t b) const { return a == b; }
    bool operator()(const S& s, std::uint32_t b) const { return self->states[b] == s; }
    bool operator()(std::uint32_t a, const S& s) const { return self->states[a] == s; }
    bool operator()(const Probe& p, std::uint32_t b) const {
      return self->hashes[b] == p.hash && self->states[b] == *p.state;
    }
    bool operator()(std::uint32_t a, const Probe& p) const { return (*this)(p, a); }
  };
  std::unordered_set<std::uint32_t, Hash, Eq> index{16, Hash{this}, Eq{this}};

  Exploration() = default;
  Exploration(const Exploration&) = delete;
  Exploration& operator=(const Exploration&) = delete;
};

/// Level-synchronous breadth-first least fixpoint. Successor lists are
/// sorted by (action, target) and merged in source order, so every result,
/// including which violation is reported first, is independent of the worker
/// count. Checks are evaluated on the fly; exploration stops early once
/// every check has a violation.
template <class S>
std::unique_ptr<Exploration<S>> explore(const Automaton<S>& a, const ExploreOptions& opt,
                                        const std::vector<StateCheck<S>>& state_checks = {},
                                        const std::vector<StepCheck<S>>& step_checks = {}) {
  static_assert(!std::is_same_v<S, std::uint32_t>, "state ids are uint32_t; wrap bare integer states");
  auto ex = std::make_unique<Exploration<S>>();
  ex->state_violations.assign(state_checks.size(), std::nullopt);
  ex->step_violations.assign(step_checks.size(), std::nullopt);
  const bool any_checks = !state_checks.empty() || !step_checks.empty();
  auto all_violated = [&] {
    if (!any_checks) return false;
    for (const auto& v : ex->state_violations)
      if (!v) return false;
    for (const auto& v : ex->step_violations)
      if (!v) return false;
    return true;
  };

  // callers guarantee `s` is new
  auto add = [&](S s, std::uint64_t h, std::uint32_t parent, Action via) -> std::uint32_t {
    const auto id = static_cast<std::uint32_t>(ex->states.size());
    ex->states.push_back(std::move(s));
    ex->hashes.push_back(h);
    ex->parent.push_back(parent == std::numeric_limits<std::uint32_t>::max() ? id : parent);
    ex->via.push_back(std::move(via));
    ex->index.insert(id);
    const S& st = ex->states.back();
    if (a.saturated && a.saturated(st)) ++ex->saturated;
    for (std::size_t k = 0; k < state_checks.size(); ++k) {
      if (ex->state_violations[k]) continue;
      if (auto msg = state_checks[k](st)) ex->state_violations[k] = Violation{id, std::nullopt, id, *msg};
    }
    return id;
  };

  {
    auto inits = a.init();
    std::sort(inits.begin(), inits.end());
    inits.erase(std::unique(inits.begin(), inits.end()), inits.end());
    for (auto& s : inits) {
      const auto h = hash_value(s);
      add(std::move(s), h, std::numeric_limits<std::uint32_t>::max(), act::Tau{});
    }
    ex->initial = ex->states.size();
  }

  unsigned workers = opt.workers ? opt.workers : default_workers();
  std::size_t lo = 0;
  std::size_t hi = ex->states.size();
  std::size_t level = 0;
  while (lo < hi && !all_violated()) {
    // successors of the whole level
    std::vector<std::vector<Transition<S>>> succ(hi - lo);
    std::vector<std::vector<std::uint64_t>> succ_hash(hi - lo);
    auto work = [&](std::size_t k) {
      auto ts = a.step(ex->states[lo + k]);
      if (opt.filter) std::erase_if(ts, [&](const Transition<S>& t) { return !opt.filter(t.action); });
      std::sort(ts.begin(), ts.end(), [](const Transition<S>& x, const Transition<S>& y) {
        if (x.action != y.action) return x.action < y.action;
        return x.target < y.target;
      });
      ts.erase(std::unique(ts.begin(), ts.end(),
                           [](const Transition<S>& x, const Transition<S>& y) {
                             return x.action == y.action && x.target == y.target;
                           }),
               ts.end());
      auto& hs = succ_hash[k];
      hs.reserve(ts.size());
      for (const auto& t : ts) hs.push_back(hash_value(t.target));
      succ[k] = std::move(ts);
    };
    const std::size_t n = hi - lo;
    if (workers > 1 && n >= 64) {
      std::exception_ptr error;
      std::mutex error_lock;
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          try {
            for (std::size_t k = w; k < n; k += workers) work(k);
          } catch (...) {
            std::lock_guard<std::mutex> g(error_lock);
            if (!error) error = std::current_exception();
          }
        });
      for (auto& t : pool) t.join();
      if (error) std::rethrow_exception(error);
    } else {
      for (std::size_t k = 0; k < n; ++k) work(k);
    }

    for (std::size_t k = 0; k < n && ex->complete; ++k) {
      const auto src = static_cast<std::uint32_t>(lo + k);
      for (std::size_t e = 0; e < succ[k].size(); ++e) {
        auto& t = succ[k][e];
        ++ex->transitions;
        const auto h = succ_hash[k][e];
        std::uint32_t dst;
        if (auto it = ex->index.find(typename Exploration<S>::Probe{&t.target, h}); it != ex->index.end()) {
          dst = *it;
        } else {
          if (level >= opt.bounds.max_depth) {
            ex->complete = false;
            ex->bound_reason = "max-depth " + std::to_string(opt.bounds.max_depth) + " exceeded";
            break;
          }
          if (ex->states.size() >= opt.bounds.max_states) {
            ex->complete = false;
            ex->bound_reason = "max-states " + std::to_string(opt.bounds.max_states) + " exceeded";
            break;
          }
          dst = add(std::move(t.target), h, src, t.action);
        }
        for (std::size_t c = 0; c < step_checks.size(); ++c) {
          if (ex->step_violations[c]) continue;
          if (auto msg = step_checks[c](ex->states[src], t.action, ex->states[dst]))
            ex->step_violations[c] = Violation{src, t.action, dst, *msg};
        }
        if (opt.keep_edges) ex->edges.push_back({src, t.action, dst});
      }
    }
    if (!ex->complete) break;
    lo = hi;
    hi = ex->states.size();
    if (lo < hi) ex->depth = ++level;
  }
  return ex;
}

}  // namespace awn
