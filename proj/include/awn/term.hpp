#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "awn/expr.hpp"

namespace awn {

/// Control location tag: a process name paired with an index, printed as
/// `PToy-:3`.
struct Label {
  std::string process;
  std::uint32_t index = 0;
  auto operator<=>(const Label&) const = default;
};
std::string to_string(const Label& l);

enum class TermKind : std::uint8_t {
  Assign,
  Guard,
  Unicast,
  Broadcast,
  Groupcast,
  Send,
  Receive,
  Deliver,
  Choice,
  Call,
};

bool is_prefix(TermKind k);
std::string_view to_string(TermKind k);

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// Sequential process term. Prefix forms carry one continuation in `next`
/// (Unicast carries success then failure); Choice carries its two branches.
struct Term {
  TermKind kind = TermKind::Call;
  std::optional<Label> label;
  std::optional<std::uint32_t> label_hint;  // explicit "@k" from the source

  Assignment updates;  // Assign
  Guard guard;         // Guard
  Expr first;          // Unicast dest, Broadcast/Send msg, Groupcast dests, Deliver data
  Expr second;         // Unicast/Groupcast msg
  std::string binder;  // Receive
  VarId binder_var = 0;
  std::string target;  // Call

  std::vector<TermPtr> next;
  SourcePos pos;
};

/// Deep structural equality including labels and label hints.
bool structurally_equal(const Term& a, const Term& b);
bool structurally_equal(const TermPtr& a, const TermPtr& b);

TermPtr make_assign(Assignment u, TermPtr cont);
TermPtr make_guard(Guard g, TermPtr cont);
TermPtr make_unicast(Expr dest, Expr msg, TermPtr succ, TermPtr fail);
TermPtr make_broadcast(Expr msg, TermPtr cont);
TermPtr make_groupcast(Expr dests, Expr msg, TermPtr cont);
TermPtr make_send(Expr msg, TermPtr cont);
TermPtr make_receive(std::string binder, TermPtr cont);
TermPtr make_deliver(Expr data, TermPtr cont);
TermPtr make_choice(TermPtr left, TermPtr right);
TermPtr make_call(std::string target);

enum class InitKind : std::uint8_t { Literal, Self, Any };

struct VarDecl {
  std::string name;
  Type type = Type::Nat;
  InitKind init = InitKind::Literal;
  Expr literal;  // for InitKind::Literal
};

/// Variable layout of the data state shared by every process of a model.
struct StateSchema {
  std::vector<VarDecl> vars;
  std::optional<VarId> find(std::string_view name) const;
  VarId require(std::string_view name) const;
};

/// A named predicate declared in model text: `invariant` (optionally
/// restricted to labels) or `step` (may use primed variables).
struct PredicateDecl {
  std::string name;
  bool step = false;
  std::optional<std::string> process;  // label filter: process name
  std::vector<std::uint32_t> labels;   // label filter: indices (empty = all locations)
  Expr body;
};

struct ProcessDef {
  std::string name;
  TermPtr body;
};

/// Recursive specification: process names to terms, plus the data schema and
/// any predicates declared alongside. The first process is the initial one.
struct Specification {
  StateSchema schema;
  std::vector<ProcessDef> processes;
  std::vector<PredicateDecl> predicates;
  bool labelled = false;

  const ProcessDef* find(std::string_view name) const;
  const ProcessDef& require(std::string_view name) const;
  const std::string& initial_process() const { return processes.at(0).name; }
};

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Labels every prefix of every process with (process, k) in depth-first,
/// left-to-right order. An explicit hint pins the index and does not consume
/// a counter value.
Specification label_spec(const Specification& spec);
/// Labels every process of the specification with the single name `pn`.
Specification label_spec(const Specification& spec, const std::string& pn);

/// All labels attached to prefixes, in traversal order (duplicates kept).
std::vector<Label> collect_labels(const Specification& spec);

/// Returns a copy of the term with every label and hint removed.
TermPtr strip_labels(const TermPtr& t);

}  // namespace awn
