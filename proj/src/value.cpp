#include "awn/value.hpp"

#include <algorithm>
#include <sstream>

namespace awn {

std::string to_string(Type t) {
  switch (t) {
    case Type::Bool: return "bool";
    case Type::Nat: return "nat";
    case Type::Addr: return "addr";
    case Type::Msg: return "msg";
    case Type::AddrSet: return "addrset";
  }
  return "?";
}

std::string to_string(const Message& m) {
  std::ostringstream os;
  if (m.kind == Message::Kind::Pkt)
    os << "pkt(" << m.data << ", #" << m.addr << ")";
  else
    os << "newpkt(" << m.data << ", #" << m.addr << ")";
  return os.str();
}

std::string to_string(AddrSet s) {
  std::string out = "{";
  bool first = true;
  for (Address a : s.members()) {
    if (!first) out += ", ";
    out += "#" + std::to_string(a);
    first = false;
  }
  return out + "}";
}

std::string to_string(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, NoneValue>) return "none";
        else if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
        else if constexpr (std::is_same_v<T, Nat>) return std::to_string(x.value);
        else if constexpr (std::is_same_v<T, Addr>) return "#" + std::to_string(x.value);
        else return to_string(x);
      },
      v);
}

Type type_of(const Value& v) {
  switch (v.index()) {
    case 1: return Type::Bool;
    case 2: return Type::Nat;
    case 3: return Type::Addr;
    case 5: return Type::AddrSet;
    default: return Type::Msg;
  }
}

void Domains::finalize() {
  std::sort(addresses.begin(), addresses.end());
  addresses.erase(std::unique(addresses.begin(), addresses.end()), addresses.end());
  messages.clear();
  for (auto kind : {Message::Kind::Pkt, Message::Kind::NewPkt})
    for (std::uint32_t d = 0; d <= data_max; ++d)
      for (Address a : addresses) messages.push_back(Message{kind, d, a});
}

AddrSet Domains::universe() const {
  AddrSet s;
  for (Address a : addresses) s.insert(a);
  return s;
}

Domains make_domains(std::uint32_t data_max, std::vector<Address> addresses, std::vector<std::uint32_t> arbitrary) {
  Domains d;
  d.data_max = data_max;
  d.addresses = std::move(addresses);
  d.arbitrary = std::move(arbitrary);
  d.finalize();
  return d;
}

std::vector<Value> enumerate(Type t, const Domains& d) {
  std::vector<Value> out;
  switch (t) {
    case Type::Bool:
      out = {Value{false}, Value{true}};
      break;
    case Type::Nat:
      for (std::uint32_t n = 0; n <= d.data_max; ++n) out.emplace_back(Nat{n});
      break;
    case Type::Addr: {
      std::vector<Address> addrs = d.addresses;
      for (auto a : d.arbitrary) addrs.push_back(a);
      std::sort(addrs.begin(), addrs.end());
      addrs.erase(std::unique(addrs.begin(), addrs.end()), addrs.end());
      for (Address a : addrs) out.emplace_back(Addr{a});
      break;
    }
    case Type::Msg:
      out.emplace_back(NoneValue{});
      for (const auto& m : d.messages) out.emplace_back(m);
      break;
    case Type::AddrSet: {
      const auto bits = d.universe().bits();
      // all submasks of the universe
      std::uint64_t sub = 0;
      do {
        out.emplace_back(AddrSet::from_bits(sub));
        sub = (sub - bits) & bits;
      } while (sub != 0);
      break;
    }
  }
  return out;
}

std::uint64_t hash_value(const Message& m) {
  return mix64(mix64(static_cast<std::uint64_t>(m.kind) + 11, m.data), m.addr);
}

std::uint64_t hash_value(const Value& v) {
  std::uint64_t h = mix64(0x51ed, v.index());
  switch (v.index()) {
    case 1: return mix64(h, std::get<bool>(v) ? 1 : 0);
    case 2: return mix64(h, std::get<Nat>(v).value);
    case 3: return mix64(h, std::get<Addr>(v).value);
    case 4: return mix64(h, hash_value(std::get<Message>(v)));
    case 5: return mix64(h, std::get<AddrSet>(v).bits());
    default: return h;
  }
}

std::uint64_t hash_value(const DataState& s) {
  std::uint64_t h = 0xda7a;
  for (const auto& v : s.slots()) h = mix64(h, hash_value(v));
  return h;
}

}  // namespace awn
