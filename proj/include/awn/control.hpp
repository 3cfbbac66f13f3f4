#pragma once

#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "awn/term.hpp"

namespace awn {

using TermId = std::uint32_t;
using TermSet = std::vector<TermId>;  // sorted, duplicate free

/// Hash-consed pool of every subterm of a labelled specification. Two
/// subterms share an id iff they are structurally equal including labels.
/// The pool is closed under subterms and call unfolding, and immutable.
class Program {
 public:
  explicit Program(Specification labelled);

  const Specification& spec() const { return spec_; }
  std::size_t size() const { return nodes_.size(); }

  const Term& term(TermId id) const { return *nodes_.at(id).term; }
  const TermPtr& ptr(TermId id) const { return nodes_.at(id).term; }
  const std::vector<TermId>& children(TermId id) const { return nodes_.at(id).children; }
  const std::string& key(TermId id) const { return nodes_.at(id).key; }

  TermId body(std::string_view process) const;
  std::optional<TermId> lookup(const TermPtr& t) const;

  // Control analysis. sterms/dterms/cterms reject specifications that are
  // not well formed.
  TermSet microsteps(TermId p) const;
  bool wellformed() const { return wellformed_; }
  const TermSet& sterms(TermId p) const;
  TermSet stermsl(TermId p) const;
  TermSet dterms(TermId p) const;
  TermSet ctermsl(TermId p) const;
  /// Least fixpoint of the start and derivative rules.
  const TermSet& cterms() const { return require_wf(), cterms_; }
  /// Alternative characterisation via local control terms minus calls.
  TermSet cterms_local() const;
  const std::set<Label>& labels_of(TermId p) const;

  /// Every prefix-headed, choice or call subterm ordered by id.
  std::vector<TermId> subterms() const;

  bool check_simple_labels() const;
  bool check_control_within(const std::vector<TermPtr>& inits) const;

 private:
  struct Node {
    TermPtr term;
    std::vector<TermId> children;
    std::string key;
  };
  TermId intern(const TermPtr& t);
  void require_wf() const;

  Specification spec_;
  std::vector<Node> nodes_;
  std::unordered_map<std::string, TermId> index_;
  std::unordered_map<std::string, TermId> bodies_;
  bool wellformed_ = false;
  std::vector<TermSet> sterms_;
  std::vector<std::set<Label>> labels_;
  TermSet cterms_;
};

/// Graded report of the side conditions used by verification.
struct ControlReport {
  bool wellformed = false;
  bool simple_labels = false;
  bool control_within = false;
  std::size_t cterm_count = 0;
  std::vector<TermId> cterms;
};
ControlReport analyze(const Program& prog);

}  // namespace awn
