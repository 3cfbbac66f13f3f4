#include "awn/predicates.hpp"

#include <algorithm>
#include <regex>

#include "awn/parser.hpp"
#include "awn/printer.hpp"

namespace awn {

namespace {

void collect(const Expr& e, std::vector<VarId>& out) {
  if (e.kind == ExprKind::Var || e.kind == ExprKind::PostVar) out.push_back(e.var);
  for (const auto& a : e.args) collect(a, out);
}

}  // namespace

std::vector<VarId> variables_of(const Expr& e) {
  std::vector<VarId> out;
  collect(e, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Predicate make_predicate(const PredicateDecl& decl, const StateSchema& schema, const Domains& dom) {
  (void)schema;
  Predicate p;
  p.name = decl.name;
  p.text = to_string(decl.body);
  p.reads = variables_of(decl.body);
  if (decl.step) {
    p.kind = Predicate::Kind::Step;
    p.step = [body = decl.body, dom](const DataState& pre, const DataState& post) {
      return as_bool(eval_expr(pre, post, body, dom));
    };
    return p;
  }
  p.kind = Predicate::Kind::State;
  if (!decl.process) {
    p.state = [body = decl.body, dom](const DataState& xi, const std::set<Label>&) { return eval_bool(xi, body, dom); };
    return p;
  }
  std::set<Label> filter;
  for (auto k : decl.labels) filter.insert(Label{*decl.process, k});
  std::string ls;
  for (const auto& l : filter) ls += (ls.empty() ? "" : ",") + to_string(l);
  p.text = "l in {" + ls + "} => " + p.text;
  p.state = [body = decl.body, dom, filter](const DataState& xi, const std::set<Label>& labels) {
    const bool relevant = std::any_of(labels.begin(), labels.end(), [&](const Label& l) { return filter.count(l); });
    return !relevant || eval_bool(xi, body, dom);
  };
  return p;
}

Predicate parse_predicate(const std::string& name, const std::string& text, const StateSchema& schema,
                          const Domains& dom, bool step) {
  PredicateDecl d;
  d.name = name;
  d.step = step;
  std::string body = text;
  static const std::regex at_re(R"(^\s*at\s+([A-Za-z_][A-Za-z0-9_]*)\s*\{([^}]*)\}\s*:(.*)$)");
  std::smatch m;
  if (!step && std::regex_match(text, m, at_re)) {
    d.process = m[1].str();
    const std::string labels = m[2].str();
    static const std::regex item(R"((\d+)(?:\s*\.\.\s*(\d+))?)");
    for (auto it = std::sregex_iterator(labels.begin(), labels.end(), item); it != std::sregex_iterator(); ++it) {
      const auto lo = static_cast<std::uint32_t>(std::stoul((*it)[1].str()));
      const auto hi = (*it)[2].matched ? static_cast<std::uint32_t>(std::stoul((*it)[2].str())) : lo;
      for (auto k = lo; k <= hi; ++k) d.labels.push_back(k);
    }
    if (d.labels.empty()) throw ModelError("predicate '" + name + "' has an empty label set");
    body = m[3].str();
  }
  d.body = parse_expr(body, schema, step);
  if (type_check(d.body, schema, step) != Type::Bool) throw ModelError("predicate '" + name + "' is not boolean");
  return make_predicate(d, schema, dom);
}

Predicate equality_relation() {
  Predicate p;
  p.name = "equality";
  p.text = "x = x'";
  p.kind = Predicate::Kind::Step;
  p.step = [](const DataState& a, const DataState& b) { return a == b; };
  return p;
}

Predicate true_predicate() {
  Predicate p;
  p.name = "true";
  p.text = "true";
  p.state = [](const DataState&, const std::set<Label>&) { return true; };
  return p;
}

}  // namespace awn
