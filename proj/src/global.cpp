#include "awn/global.hpp"

#include <algorithm>

#include "awn/seq.hpp"

namespace awn {

namespace {

auto locate(const std::vector<std::pair<Address, DataState>>& v, Address a) {
  return std::lower_bound(v.begin(), v.end(), a, [](const auto& e, Address x) { return e.first < x; });
}

}  // namespace

const DataState& GlobalState::at(Address a) const {
  auto it = locate(entries_, a);
  if (it != entries_.end() && it->first == a) return it->second;
  return fallback_;
}

bool GlobalState::has(Address a) const {
  auto it = locate(entries_, a);
  return it != entries_.end() && it->first == a;
}

void GlobalState::set(Address a, DataState xi) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), a,
                             [](const auto& e, Address x) { return e.first < x; });
  if (it != entries_.end() && it->first == a) it->second = std::move(xi);
  else entries_.insert(it, {a, std::move(xi)});
}

GlobalState GlobalState::restrict(AddrSet scope) const {
  GlobalState g(fallback_);
  for (const auto& [a, xi] : entries_)
    if (scope.contains(a)) g.entries_.push_back({a, xi});
  return g;
}

std::uint64_t hash_value(const GlobalState& g) {
  std::uint64_t h = g.entries().size();
  for (const auto& [a, xi] : g.entries()) h = mix64(mix64(h, a), hash_value(xi));
  return h;
}

std::string render(const StateSchema& schema, const GlobalState& g) {
  std::string s;
  for (const auto& [a, xi] : g.entries()) {
    if (!s.empty()) s += " ";
    s += "#" + std::to_string(a) + "->" + render(schema, xi);
  }
  return s;
}

GlobalState global_view(const std::vector<NodeView>& nodes, AddrSet universe, const DataState& fallback) {
  GlobalState g(fallback);
  for (Address a : universe.members()) g.set(a, fallback);
  for (const auto& v : nodes) g.set(v.address, *v.data);
  return g;
}

}  // namespace awn
