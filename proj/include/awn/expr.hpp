#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "awn/value.hpp"

namespace awn {

struct SourcePos {
  int line = 0;
  int column = 0;
};

/// Raised when an expression cannot be evaluated (unbound variable, type
/// mismatch, projection on the wrong constructor). These surface as model
/// construction failures, never as silently pruned transitions.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExprKind : std::uint8_t {
  Var,      // pre-state variable
  PostVar,  // x' in step predicates
  NatLit,
  AddrLit,
  NoneLit,
  BoolLit,
  Plus,
  Max,
  Le,
  Lt,
  Eq,
  Ne,
  Ge,
  And,
  Or,
  Not,
  If,
  Pkt,
  NewPkt,
  Field,
  SetLit,
  In,
};

enum class Field : std::uint8_t { Data, Src, Dst };

/// First-order, total expression language for data functions.
struct Expr {
  ExprKind kind = ExprKind::NatLit;
  std::string name;        // Var, PostVar
  VarId var = 0;           // resolved slot for Var / PostVar
  std::uint32_t literal = 0;
  Field field = Field::Data;
  std::vector<Expr> args;
  SourcePos pos;

  static Expr variable(std::string name, VarId id = 0);
  static Expr nat(std::uint32_t n);
  static Expr address(Address a);
  static Expr none();
  static Expr boolean(bool b);
  static Expr op(ExprKind k, std::vector<Expr> args);
  static Expr project(Expr msg, Field f);

  /// Structural equality; source positions are ignored.
  bool operator==(const Expr& o) const;
};

/// One element of a parallel update list `x := e`.
struct Update {
  std::string name;
  VarId var = 0;
  Expr value;
  bool operator==(const Update& o) const { return name == o.name && value == o.value; }
};
using Assignment = std::vector<Update>;

/// One clause of a guard. Clauses are applied left to right; each maps a set
/// of environments to a set of environments.
struct GuardClause {
  enum class Kind : std::uint8_t {
    Test,      // boolean expression: keep xi iff true
    BindIn,    // x <- e, e an address set: one xi per member
    BindAny,   // x <- *, one xi per value of x's type
    IsPkt,     // msg = pkt(d, s): num := d, sip := s
    IsNewPkt,  // msg = newpkt(d, _): num := d
  };
  Kind kind = Kind::Test;
  std::string name;  // bound variable for BindIn / BindAny
  VarId var = 0;
  Type var_type = Type::Nat;
  Expr expr;
  // msg, num, sip slots for the message-shape tests
  VarId msg_var = 0, num_var = 0, sip_var = 0;

  bool operator==(const GuardClause& o) const {
    return kind == o.kind && name == o.name && expr == o.expr;
  }
};

struct Guard {
  std::vector<GuardClause> clauses;
  bool operator==(const Guard&) const = default;
};

Value eval_expr(const DataState& xi, const Expr& e, const Domains& d);
/// Evaluates with access to a post state for primed variables.
Value eval_expr(const DataState& pre, const DataState& post, const Expr& e, const Domains& d);
bool eval_bool(const DataState& xi, const Expr& e, const Domains& d);

std::vector<DataState> eval_guard(const DataState& xi, const Guard& g, const Domains& d);

/// All right-hand sides are evaluated in `xi` before any slot is written.
DataState apply_assignment(const DataState& xi, const Assignment& u, const Domains& d);

// Typed accessors that throw EvalError on mismatch.
std::uint32_t as_nat(const Value& v);
Address as_addr(const Value& v);
const Message& as_msg(const Value& v);
AddrSet as_addrset(const Value& v);
bool as_bool(const Value& v);

}  // namespace awn
