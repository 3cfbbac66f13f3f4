#include "awn/action.hpp"

namespace awn {

namespace {

struct Render {
  std::string operator()(const act::Tau&) const { return "tau"; }
  std::string operator()(const act::Receive& a) const { return "receive(" + to_string(a.m) + ")"; }
  std::string operator()(const act::Send& a) const { return "send(" + to_string(a.m) + ")"; }
  std::string operator()(const act::Deliver& a) const { return "deliver(" + std::to_string(a.data) + ")"; }
  std::string operator()(const act::Broadcast& a) const { return "broadcast(" + to_string(a.m) + ")"; }
  std::string operator()(const act::Groupcast& a) const {
    return "groupcast(" + to_string(a.dests) + ", " + to_string(a.m) + ")";
  }
  std::string operator()(const act::Unicast& a) const {
    return "unicast(#" + std::to_string(a.dest) + ", " + to_string(a.m) + ")";
  }
  std::string operator()(const act::NotUnicast& a) const { return "not-unicast(#" + std::to_string(a.dest) + ")"; }
  std::string operator()(const act::StarCast& a) const {
    return to_string(a.range) + ":*cast(" + to_string(a.m) + ")";
  }
  std::string operator()(const act::Arrive& a) const {
    return to_string(a.h) + "!" + to_string(a.k) + ":arrive(" + to_string(a.m) + ")";
  }
  std::string operator()(const act::Connect& a) const {
    return "connect(#" + std::to_string(a.a) + ", #" + std::to_string(a.b) + ")";
  }
  std::string operator()(const act::Disconnect& a) const {
    return "disconnect(#" + std::to_string(a.a) + ", #" + std::to_string(a.b) + ")";
  }
  std::string operator()(const act::NodeDeliver& a) const {
    return "#" + std::to_string(a.node) + ":deliver(" + std::to_string(a.data) + ")";
  }
  std::string operator()(const act::NewPkt& a) const {
    return "#" + std::to_string(a.node) + ":newpkt(" + std::to_string(a.data) + ", #" + std::to_string(a.dst) + ")";
  }
  std::string operator()(const act::Env&) const { return "env"; }
};

struct Hash {
  std::uint64_t operator()(const act::Tau&) const { return 0; }
  std::uint64_t operator()(const act::Receive& a) const { return hash_value(a.m); }
  std::uint64_t operator()(const act::Send& a) const { return hash_value(a.m); }
  std::uint64_t operator()(const act::Deliver& a) const { return a.data; }
  std::uint64_t operator()(const act::Broadcast& a) const { return hash_value(a.m); }
  std::uint64_t operator()(const act::Groupcast& a) const { return mix64(a.dests.bits(), hash_value(a.m)); }
  std::uint64_t operator()(const act::Unicast& a) const { return mix64(a.dest, hash_value(a.m)); }
  std::uint64_t operator()(const act::NotUnicast& a) const { return a.dest; }
  std::uint64_t operator()(const act::StarCast& a) const { return mix64(a.range.bits(), hash_value(a.m)); }
  std::uint64_t operator()(const act::Arrive& a) const {
    return mix64(mix64(a.h.bits(), a.k.bits()), hash_value(a.m));
  }
  std::uint64_t operator()(const act::Connect& a) const { return mix64(a.a, a.b); }
  std::uint64_t operator()(const act::Disconnect& a) const { return mix64(a.a, a.b); }
  std::uint64_t operator()(const act::NodeDeliver& a) const { return mix64(a.node, a.data); }
  std::uint64_t operator()(const act::NewPkt& a) const { return mix64(mix64(a.node, a.data), a.dst); }
  std::uint64_t operator()(const act::Env&) const { return 0; }
};

}  // namespace

std::string to_string(const Action& a) { return std::visit(Render{}, a); }

std::uint64_t hash_value(const Action& a) { return mix64(a.index(), std::visit(Hash{}, a)); }

const Message* received_message(const Action& a) {
  if (auto r = std::get_if<act::Receive>(&a)) return &r->m;
  if (auto r = std::get_if<act::Arrive>(&a)) return &r->m;
  return nullptr;
}

}  // namespace awn
