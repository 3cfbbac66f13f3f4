#pragma once

#include "awn/lifting.hpp"
#include "awn/toy.hpp"

namespace awn {

/// The open next-hop invariant of the toy: bigger_than_next under
/// E = F = nos_increase and R = msg_num_ok.
OpenInstance toy_open_instance(std::shared_ptr<const Program> prog, Scenario sc, ExploreOptions opt = {});

/// The same invariant under a frozen environment: E = F = equality and no
/// message assumption.
OpenInstance toy_equality_instance(std::shared_ptr<const Program> prog, Scenario sc, Predicate invariant,
                                   ExploreOptions opt = {});

}  // namespace awn
