#pragma once

#include <string>

#include "awn/term.hpp"

namespace awn {

std::string to_string(const Expr& e);
std::string to_string(const GuardClause& c);
std::string to_string(const Guard& g);
std::string to_string(const Assignment& u);

/// Multi-line model text for a term; re-parses to a structurally equal term
/// (label hints are printed, derived labels are not).
std::string pretty(const TermPtr& t, int indent = 0);

/// Full model text: variables, processes and predicates.
std::string pretty(const Specification& spec);

/// One-line rendering. With `labels` set, every labelled prefix is tagged
/// `{P-:k}`; this form is used as the identity key of a term.
std::string compact(const TermPtr& t, bool labels = true);

/// Short description of a term's head, e.g. `{PToy-:3} [[no := max(no, num)]]`.
std::string head(const TermPtr& t);

}  // namespace awn
