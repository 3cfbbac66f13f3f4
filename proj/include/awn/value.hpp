#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace awn {

using Address = std::uint32_t;

/// Largest address representable in an AddrSet.
inline constexpr Address kMaxAddress = 63;

/// Finite set of node addresses, stored as a bit mask.
class AddrSet {
 public:
  AddrSet() = default;
  AddrSet(std::initializer_list<Address> addrs) {
    for (Address a : addrs) insert(a);
  }
  static AddrSet from_bits(std::uint64_t bits) {
    AddrSet s;
    s.bits_ = bits;
    return s;
  }

  void insert(Address a) {
    if (a > kMaxAddress)
      throw std::out_of_range("address " + std::to_string(a) + " exceeds the supported maximum of 63");
    bits_ |= std::uint64_t{1} << a;
  }
  void erase(Address a) {
    if (a <= kMaxAddress) bits_ &= ~(std::uint64_t{1} << a);
  }
  bool contains(Address a) const { return a <= kMaxAddress && ((bits_ >> a) & 1u) != 0; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  std::uint64_t bits() const { return bits_; }

  AddrSet operator|(AddrSet o) const { return from_bits(bits_ | o.bits_); }
  AddrSet operator&(AddrSet o) const { return from_bits(bits_ & o.bits_); }
  AddrSet operator-(AddrSet o) const { return from_bits(bits_ & ~o.bits_); }
  bool subset_of(AddrSet o) const { return (bits_ & ~o.bits_) == 0; }
  bool disjoint(AddrSet o) const { return (bits_ & o.bits_) == 0; }

  std::vector<Address> members() const {
    std::vector<Address> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<Address>(std::countr_zero(b)));
    return out;
  }

  auto operator<=>(const AddrSet&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

/// The two message constructors of the toy data model.
struct Message {
  enum class Kind : std::uint8_t { Pkt, NewPkt };
  Kind kind = Kind::Pkt;
  std::uint32_t data = 0;
  Address addr = 0;  // src for pkt, dst for newpkt

  static Message pkt(std::uint32_t data, Address src) { return {Kind::Pkt, data, src}; }
  static Message newpkt(std::uint32_t data, Address dst) { return {Kind::NewPkt, data, dst}; }

  auto operator<=>(const Message&) const = default;
};

struct NoneValue {
  auto operator<=>(const NoneValue&) const = default;
};
struct Nat {
  std::uint32_t value = 0;
  auto operator<=>(const Nat&) const = default;
};
struct Addr {
  Address value = 0;
  auto operator<=>(const Addr&) const = default;
};

using Value = std::variant<NoneValue, bool, Nat, Addr, Message, AddrSet>;

enum class Type : std::uint8_t { Bool, Nat, Addr, Msg, AddrSet };

std::string to_string(Type t);
std::string to_string(const Message& m);
std::string to_string(AddrSet s);
std::string to_string(const Value& v);

/// The dynamic type of a value; none counts as a message-typed value.
Type type_of(const Value& v);

/// Finite domains for one scenario. All enumeration (receive, binders,
/// verification conditions) draws from here.
struct Domains {
  std::uint32_t data_max = 7;
  std::vector<Address> addresses;             // the address universe, sorted
  std::vector<std::uint32_t> arbitrary{0};    // values used for `any` initialisers
  std::vector<Message> messages;              // pkt/newpkt over 0..data_max x addresses

  /// Recomputes `messages` from data_max and addresses; sorts addresses.
  void finalize();
  AddrSet universe() const;
  std::uint32_t clamp(std::uint64_t n) const { return n > data_max ? data_max : static_cast<std::uint32_t>(n); }
};

Domains make_domains(std::uint32_t data_max, std::vector<Address> addresses,
                     std::vector<std::uint32_t> arbitrary = {0});

/// Every value of type `t` over the domains (none included for messages).
std::vector<Value> enumerate(Type t, const Domains& d);

using VarId = std::uint32_t;

/// Variable-indexed environment of one sequential process. Slot order is
/// fixed by the owning StateSchema.
class DataState {
 public:
  DataState() = default;
  explicit DataState(std::vector<Value> slots) : slots_(std::move(slots)) {}

  const Value& operator[](VarId v) const { return slots_.at(v); }
  void set(VarId v, Value val) { slots_.at(v) = std::move(val); }
  std::size_t size() const { return slots_.size(); }
  const std::vector<Value>& slots() const { return slots_; }

  auto operator<=>(const DataState&) const = default;
  bool operator==(const DataState&) const = default;

 private:
  std::vector<Value> slots_;
};

// Hashing support; the values feed a 64-bit mix so that digests are stable
// across runs and platforms.
inline std::uint64_t mix64(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h *= 0xff51afd7ed558ccdULL;
  return h ^ (h >> 33);
}
std::uint64_t hash_value(const Message& m);
std::uint64_t hash_value(const Value& v);
std::uint64_t hash_value(const DataState& s);
/// Bare term ids, the control part of open states.
inline std::uint64_t hash_value(std::uint32_t v) { return mix64(0x51ed27, v); }

}  // namespace awn
