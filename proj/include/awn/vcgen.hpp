#pragma once

#include "awn/predicates.hpp"
#include "awn/seq.hpp"

namespace awn {

/// One verification condition. (init) obligations check the predicate on
/// the initial states of one address; (step) obligations assume it at a
/// control term and check it after every rule of that term.
struct Obligation {
  enum class Kind : std::uint8_t { Init, Step };
  Kind kind = Kind::Init;
  Address self = 0;              // init
  std::optional<TermId> term;    // step
  std::set<Label> labels;        // labels of the term (step)
  std::string description;
  std::size_t cases = 0;         // data states that met the hypothesis
  std::size_t successors = 0;
  bool ok = true;
  std::string witness;
};

struct VcReport {
  bool wellformed = false;
  bool simple_labels = false;
  bool control_within = false;
  std::vector<Obligation> obligations;

  bool side_conditions() const { return wellformed && simple_labels && control_within; }
  /// Names of the failed side conditions, empty when all hold.
  std::vector<std::string> failed_conditions() const;
  bool all_pass() const;
};

/// Obligations for a labelled state predicate over process `process`. Step
/// obligations enumerate every data state over the full type domains that
/// satisfies `pred` at the term's labels. When a side condition fails no
/// obligations are generated.
VcReport generate_vcs(const Program& prog, const std::string& process, const Predicate& pred, const Domains& dom);

std::string to_string(Obligation::Kind k);

}  // namespace awn
