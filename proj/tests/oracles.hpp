#pragma once

#include <functional>
#include <map>
#include <set>

#include "support.hpp"

namespace oracle {

using namespace awn;

// Independent oracles over the term pool, written from the definitions.

inline TermSet unite(TermSet a, const TermSet& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

inline TermSet oracle_sterms(const Program& p, TermId t) {
  const Term& term = p.term(t);
  if (term.kind == TermKind::Choice) return unite(oracle_sterms(p, p.children(t)[0]), oracle_sterms(p, p.children(t)[1]));
  if (term.kind == TermKind::Call) return oracle_sterms(p, p.body(term.target));
  return {t};
}

inline TermSet oracle_dterms(const Program& p, TermId t) {
  const Term& term = p.term(t);
  if (term.kind == TermKind::Choice) return unite(oracle_dterms(p, p.children(t)[0]), oracle_dterms(p, p.children(t)[1]));
  if (term.kind == TermKind::Call) return oracle_dterms(p, p.body(term.target));
  TermSet out;
  for (TermId c : p.children(t)) out = unite(out, oracle_sterms(p, c));
  return out;
}

inline TermSet oracle_cterms(const Program& p) {
  std::set<TermId> seen;
  std::vector<TermId> work;
  for (const auto& d : p.spec().processes)
    for (TermId s : oracle_sterms(p, p.body(d.name)))
      if (seen.insert(s).second) work.push_back(s);
  while (!work.empty()) {
    const TermId t = work.back();
    work.pop_back();
    for (TermId d : oracle_dterms(p, t))
      if (seen.insert(d).second) work.push_back(d);
  }
  return {seen.begin(), seen.end()};
}

/// Cycle detection on the microstep graph, by colouring.
inline bool oracle_wellformed(const Program& p) {
  std::map<TermId, int> colour;
  std::function<bool(TermId)> acyclic = [&](TermId t) {
    auto& c = colour[t];
    if (c == 1) return false;
    if (c == 2) return true;
    c = 1;
    const Term& term = p.term(t);
    std::vector<TermId> next;
    if (term.kind == TermKind::Choice) next = p.children(t);
    if (term.kind == TermKind::Call) next = {p.body(term.target)};
    for (TermId n : next)
      if (!acyclic(n)) return false;
    colour[t] = 2;
    return true;
  };
  for (const auto& d : p.spec().processes)
    if (!acyclic(p.body(d.name))) return false;
  return true;
}

// Random specifications. With `guarded`, calls only appear behind a prefix.
inline TermPtr random_term(int depth, bool guarded, int processes) {
  auto call = [&] { return make_call("P" + std::to_string(test::pick(static_cast<std::size_t>(processes)))); };
  auto prefix = [&](TermPtr cont) {
    switch (test::pick(4)) {
      case 0: return make_assign({}, std::move(cont));
      case 1: return make_guard({}, std::move(cont));
      case 2: return make_deliver(Expr::nat(0), std::move(cont));
      default: return make_send(Expr::op(ExprKind::Pkt, {Expr::nat(0), Expr::address(1)}), std::move(cont));
    }
  };
  if (depth == 0) return guarded ? prefix(call()) : (test::pick(2) ? call() : prefix(call()));
  switch (test::pick(guarded ? 2 : 3)) {
    case 0: return prefix(random_term(depth - 1, false, processes));
    case 1: return make_choice(random_term(depth - 1, guarded, processes), random_term(depth - 1, guarded, processes));
    default: return call();
  }
}

inline Specification random_spec(bool guarded) {
  Specification s;
  const int n = 1 + static_cast<int>(test::pick(3));
  for (int k = 0; k < n; ++k)
    s.processes.push_back({"P" + std::to_string(k), random_term(1 + static_cast<int>(test::pick(3)), guarded, n)});
  return s;
}

inline bool no_call_in_stermsl(const Program& p) {
  for (const auto& d : p.spec().processes)
    for (TermId t : p.stermsl(p.body(d.name)))
      if (p.term(t).kind == TermKind::Call) return false;
  return true;
}

}  // namespace oracle
