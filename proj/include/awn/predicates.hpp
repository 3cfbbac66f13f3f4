#pragma once

#include <functional>
#include <set>
#include <string>

#include "awn/global.hpp"
#include "awn/term.hpp"

namespace awn {

/// A named invariant. State predicates see one process (data state and the
/// labels of its control term), step predicates a pre/post data state pair of
/// one process, global predicates the whole sigma and the set of addresses
/// the state accounts for.
struct Predicate {
  enum class Kind : std::uint8_t { State, Step, Global };
  std::string name;
  std::string text;
  Kind kind = Kind::State;
  std::function<bool(const DataState&, const std::set<Label>&)> state;
  std::function<bool(const DataState&, const DataState&)> step;
  std::function<bool(const GlobalState&, AddrSet)> global;
  /// Slots the predicate depends on (pre and post); empty when unknown.
  std::vector<VarId> reads;
};

/// Relation between a global state and a message, used to constrain
/// receive/arrive actions in the open model.
using MessageRelation = std::function<bool(const GlobalState&, const Message&)>;

/// Compiles a declared predicate. A label filter makes the body apply only at
/// control terms carrying one of the listed labels.
Predicate make_predicate(const PredicateDecl& decl, const StateSchema& schema, const Domains& dom);

/// Builds a state predicate from text such as `at PToy{4}: no >= num` or a
/// plain boolean expression, or a step predicate when `step` is set.
Predicate parse_predicate(const std::string& name, const std::string& text, const StateSchema& schema,
                          const Domains& dom, bool step = false);

Predicate true_predicate();

/// Step relation `x = x'` on whole data states.
Predicate equality_relation();

/// Sorted slots read by an expression, primed or not.
std::vector<VarId> variables_of(const Expr& e);

}  // namespace awn
