#pragma once

#include <utility>
#include <vector>

#include "awn/view.hpp"

namespace awn {

/// Total map from addresses to data states: explicit entries for the
/// universe, the fallback state everywhere else.
class GlobalState {
 public:
  GlobalState() = default;
  explicit GlobalState(DataState fallback) : fallback_(std::move(fallback)) {}

  const DataState& at(Address a) const;
  void set(Address a, DataState xi);
  bool has(Address a) const;
  const std::vector<std::pair<Address, DataState>>& entries() const { return entries_; }
  const DataState& fallback() const { return fallback_; }

  /// Entries restricted to `scope`.
  GlobalState restrict(AddrSet scope) const;

  auto operator<=>(const GlobalState& o) const { return entries_ <=> o.entries_; }
  bool operator==(const GlobalState& o) const { return entries_ == o.entries_; }

 private:
  std::vector<std::pair<Address, DataState>> entries_;  // sorted by address
  DataState fallback_;
};
std::uint64_t hash_value(const GlobalState& g);
std::string render(const StateSchema& schema, const GlobalState& g);

/// sigma of a standard state: each process's data state at its address,
/// every other universe address mapped to `fallback`.
GlobalState global_view(const std::vector<NodeView>& nodes, AddrSet universe, const DataState& fallback);

}  // namespace awn
