#include "awn/check.hpp"

#include <cstdio>
#include <thread>

namespace awn {

unsigned default_workers() {
  if (const char* env = std::getenv("AWN_WORKERS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1 && n <= 256) return static_cast<unsigned>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::string digest(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Holds: return "holds";
    case Outcome::Counterexample: return "counterexample";
    case Outcome::BoundExceeded: return "bound-exceeded";
  }
  return "?";
}

std::string labels_string(const std::vector<NodeView>& nodes) {
  std::string out;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (k) out += "|";
    std::string ls;
    if (nodes[k].labels)
      for (const auto& l : *nodes[k].labels) ls += (ls.empty() ? "" : ",") + to_string(l);
    out += ls;
  }
  return out;
}

}  // namespace awn
