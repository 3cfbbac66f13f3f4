#include "awn/control.hpp"

#include <algorithm>
#include <functional>

#include "awn/printer.hpp"

namespace awn {

namespace {

void insert_sorted(TermSet& s, TermId id) {
  auto it = std::lower_bound(s.begin(), s.end(), id);
  if (it == s.end() || *it != id) s.insert(it, id);
}

void unite(TermSet& into, const TermSet& from) {
  TermSet out;
  out.reserve(into.size() + from.size());
  std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
  into = std::move(out);
}

}  // namespace

Program::Program(Specification labelled) : spec_(std::move(labelled)) {
  if (!spec_.labelled) throw ModelError("program requires a labelled specification");
  for (const auto& p : spec_.processes) bodies_[p.name] = intern(p.body);
  for (const auto& n : nodes_)
    if (n.term->kind == TermKind::Call && !bodies_.count(n.term->target))
      throw ModelError("unresolved call target '" + n.term->target + "'");

  // Microstep graph cycle detection (white/grey/black DFS).
  std::vector<std::uint8_t> colour(nodes_.size(), 0);
  bool cyclic = false;
  std::function<void(TermId)> visit = [&](TermId v) {
    colour[v] = 1;
    for (TermId w : microsteps(v)) {
      if (colour[w] == 1) cyclic = true;
      else if (colour[w] == 0) visit(w);
      if (cyclic) return;
    }
    colour[v] = 2;
  };
  for (TermId v = 0; v < nodes_.size() && !cyclic; ++v)
    if (colour[v] == 0) visit(v);
  wellformed_ = !cyclic;
  if (!wellformed_) return;

  sterms_.assign(nodes_.size(), {});
  std::vector<bool> done(nodes_.size(), false);
  std::function<void(TermId)> st = [&](TermId v) {
    if (done[v]) return;
    const Term& t = term(v);
    TermSet out;
    if (t.kind == TermKind::Choice || t.kind == TermKind::Call) {
      for (TermId w : microsteps(v)) {
        st(w);
        unite(out, sterms_[w]);
      }
    } else {
      out = {v};
    }
    sterms_[v] = std::move(out);
    done[v] = true;
  };
  labels_.assign(nodes_.size(), {});
  for (TermId v = 0; v < nodes_.size(); ++v) {
    st(v);
    for (TermId s : sterms_[v])
      if (term(s).label) labels_[v].insert(*term(s).label);
  }

  TermSet frontier;
  for (const auto& [name, b] : bodies_) unite(cterms_, sterms_[b]);
  frontier = cterms_;
  while (!frontier.empty()) {
    TermSet next;
    for (TermId p : frontier)
      for (TermId q : dterms(p))
        if (!std::binary_search(cterms_.begin(), cterms_.end(), q)) insert_sorted(next, q);
    unite(cterms_, next);
    frontier = std::move(next);
  }
}

TermId Program::intern(const TermPtr& t) {
  std::vector<TermId> kids;
  kids.reserve(t->next.size());
  for (const auto& n : t->next) kids.push_back(intern(n));
  std::string k = compact(t, true);
  if (auto it = index_.find(k); it != index_.end()) return it->second;
  const auto id = static_cast<TermId>(nodes_.size());
  nodes_.push_back({t, std::move(kids), k});
  index_.emplace(std::move(k), id);
  return id;
}

TermId Program::body(std::string_view process) const {
  auto it = bodies_.find(std::string(process));
  if (it == bodies_.end()) throw ModelError("unknown process '" + std::string(process) + "'");
  return it->second;
}

std::optional<TermId> Program::lookup(const TermPtr& t) const {
  auto it = index_.find(compact(t, true));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Program::require_wf() const {
  if (!wellformed_) throw ModelError("specification is not well formed (infinite microstep chain)");
}

TermSet Program::microsteps(TermId p) const {
  const Term& t = term(p);
  if (t.kind == TermKind::Choice) {
    TermSet s;
    insert_sorted(s, children(p)[0]);
    insert_sorted(s, children(p)[1]);
    return s;
  }
  if (t.kind == TermKind::Call) return {body(t.target)};
  return {};
}

const TermSet& Program::sterms(TermId p) const {
  require_wf();
  return sterms_.at(p);
}

TermSet Program::stermsl(TermId p) const {
  const Term& t = term(p);
  if (t.kind == TermKind::Choice) {
    TermSet s = stermsl(children(p)[0]);
    unite(s, stermsl(children(p)[1]));
    return s;
  }
  return {p};
}

TermSet Program::dterms(TermId p) const {
  require_wf();
  const Term& t = term(p);
  if (t.kind == TermKind::Choice || t.kind == TermKind::Call) {
    TermSet s;
    for (TermId w : microsteps(p)) unite(s, dterms(w));
    return s;
  }
  TermSet s;
  for (TermId c : children(p)) unite(s, sterms_[c]);
  return s;
}

TermSet Program::ctermsl(TermId p) const {
  const Term& t = term(p);
  if (t.kind == TermKind::Call) return {p};
  TermSet s;
  if (t.kind != TermKind::Choice) s.push_back(p);
  for (TermId c : children(p)) unite(s, ctermsl(c));
  return s;
}

TermSet Program::cterms_local() const {
  require_wf();
  TermSet out;
  for (const auto& [name, b] : bodies_)
    for (TermId q : ctermsl(b))
      if (term(q).kind != TermKind::Call) insert_sorted(out, q);
  return out;
}

const std::set<Label>& Program::labels_of(TermId p) const {
  require_wf();
  return labels_.at(p);
}

std::vector<TermId> Program::subterms() const {
  std::vector<TermId> out(nodes_.size());
  for (TermId k = 0; k < out.size(); ++k) out[k] = k;
  return out;
}

bool Program::check_simple_labels() const {
  if (!wellformed_) return false;
  for (TermId v = 0; v < nodes_.size(); ++v)
    if (labels_[v].size() != 1) return false;
  return true;
}

bool Program::check_control_within(const std::vector<TermPtr>& inits) const {
  if (!wellformed_) return false;
  // Walk the given terms structurally; any prefix reached through choice or
  // call unfolding must be a pooled subterm.
  std::function<bool(const TermPtr&, int)> ok = [&](const TermPtr& t, int depth) -> bool {
    if (depth > 10000) return false;
    if (auto id = lookup(t)) return true;
    if (t->kind == TermKind::Choice) return ok(t->next[0], depth + 1) && ok(t->next[1], depth + 1);
    if (t->kind == TermKind::Call) return bodies_.count(t->target) > 0;
    return false;
  };
  return std::all_of(inits.begin(), inits.end(), [&](const TermPtr& t) { return ok(t, 0); });
}

ControlReport analyze(const Program& prog) {
  ControlReport r;
  r.wellformed = prog.wellformed();
  if (!r.wellformed) return r;
  r.simple_labels = prog.check_simple_labels();
  std::vector<TermPtr> inits;
  for (const auto& p : prog.spec().processes) inits.push_back(p.body);
  r.control_within = prog.check_control_within(inits);
  r.cterms = prog.cterms();
  r.cterm_count = r.cterms.size();
  return r;
}

}  // namespace awn
