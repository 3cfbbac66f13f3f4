#include "awn/vcgen.hpp"

namespace awn {

std::string to_string(Obligation::Kind k) { return k == Obligation::Kind::Init ? "init" : "step"; }

std::vector<std::string> VcReport::failed_conditions() const {
  std::vector<std::string> v;
  if (!wellformed) v.emplace_back("wellformed");
  if (!simple_labels) v.emplace_back("simple-labels");
  if (!control_within) v.emplace_back("control-within");
  return v;
}

bool VcReport::all_pass() const {
  return side_conditions() && std::all_of(obligations.begin(), obligations.end(), [](const auto& o) { return o.ok; });
}

namespace {

constexpr std::size_t kMaxDataStates = 2'000'000;

/// Every data state over the type domains of the schema.
std::vector<DataState> all_data(const StateSchema& schema, const Domains& dom) {
  std::vector<std::vector<Value>> ranges;
  std::size_t total = 1;
  for (const auto& v : schema.vars) {
    ranges.push_back(enumerate(v.type, dom));
    total *= ranges.back().size();
    if (total > kMaxDataStates) throw ModelError("data domains too large for VC enumeration");
  }
  std::vector<DataState> out;
  out.reserve(total);
  std::vector<std::size_t> idx(ranges.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    std::vector<Value> slots;
    slots.reserve(ranges.size());
    for (std::size_t k = 0; k < ranges.size(); ++k) slots.push_back(ranges[k][idx[k]]);
    out.emplace_back(std::move(slots));
    for (std::size_t k = 0; k < idx.size() && ++idx[k] == ranges[k].size(); ++k) idx[k] = 0;
  }
  return out;
}

std::string label_list(const std::set<Label>& ls) {
  std::string s;
  for (const auto& l : ls) s += (s.empty() ? "" : ",") + to_string(l);
  return s;
}

}  // namespace

VcReport generate_vcs(const Program& prog, const std::string& process, const Predicate& pred, const Domains& dom) {
  if (pred.kind != Predicate::Kind::State) throw ModelError("VC generation needs a state predicate: " + pred.name);
  VcReport r;
  const TermId body = prog.body(process);
  r.wellformed = prog.wellformed();
  if (r.wellformed) {
    r.simple_labels = prog.check_simple_labels();
    r.control_within = prog.check_control_within({prog.ptr(body)});
  }
  if (!r.side_conditions()) return r;
  const auto& schema = prog.spec().schema;

  for (Address self : dom.addresses) {
    Obligation o;
    o.kind = Obligation::Kind::Init;
    o.self = self;
    o.labels = prog.labels_of(body);
    o.description = "init at #" + std::to_string(self);
    for (const auto& xi : initial_data(schema, self, dom)) {
      ++o.cases;
      if (!pred.state(xi, o.labels)) {
        o.ok = false;
        o.witness = render(schema, xi);
        break;
      }
    }
    r.obligations.push_back(std::move(o));
  }

  const auto data = all_data(schema, dom);
  for (TermId p : prog.cterms()) {
    Obligation o;
    o.kind = Obligation::Kind::Step;
    o.term = p;
    o.labels = prog.labels_of(p);
    o.description = "step at " + label_list(o.labels) + " (" + std::string(to_string(prog.term(p).kind)) + ")";
    for (const auto& xi : data) {
      if (!o.ok) break;
      try {
        if (!pred.state(xi, o.labels)) continue;
        ++o.cases;
        for (const auto& t : seq_step(prog, dom, SeqState{xi, p})) {
          ++o.successors;
          const auto& after = prog.labels_of(t.target.control);
          if (!pred.state(t.target.data, after)) {
            o.ok = false;
            o.witness = render(schema, xi) + " -" + to_string(t.action) + "-> " + render(schema, t.target.data) +
                        " at " + label_list(after);
            break;
          }
        }
      } catch (const EvalError& e) {
        o.ok = false;
        o.witness = render(schema, xi) + ": " + e.what();
      }
    }
    r.obligations.push_back(std::move(o));
  }
  return r;
}

}  // namespace awn
