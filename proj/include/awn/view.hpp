#pragma once

#include <set>

#include "awn/term.hpp"

namespace awn {

/// What predicates see of one sequential process inside a composite state.
struct NodeView {
  Address address = 0;
  const DataState* data = nullptr;
  const std::set<Label>* labels = nullptr;
};

}  // namespace awn
