#include "awn/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

namespace awn {

Address Scenario::focus() const {
  if (node) return *node;
  if (net) return net->leaves().front().first;
  if (!dom.addresses.empty()) return dom.addresses.front();
  throw ModelError("scenario names no address");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::uint32_t> numbers(const std::string& s, int line) {
  std::vector<std::uint32_t> out;
  static const std::regex num(R"(#?(\d+))");
  const std::string stripped = std::regex_replace(s, std::regex(R"([\s{}\[\]])"), "");
  if (!std::regex_match(stripped, std::regex(R"((#?\d+(,#?\d+)*)?)")))
    throw ModelError("scenario line " + std::to_string(line) + ": expected a list of numbers");
  for (auto it = std::sregex_iterator(s.begin(), s.end(), num); it != std::sregex_iterator(); ++it)
    out.push_back(static_cast<std::uint32_t>(std::stoul((*it)[1].str())));
  return out;
}

std::uint32_t one_number(const std::string& s, int line) {
  auto v = numbers(s, line);
  if (v.size() != 1) throw ModelError("scenario line " + std::to_string(line) + ": expected one number");
  return v.front();
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Scenario sc;
  std::uint32_t data_max = 2;
  std::optional<std::vector<std::uint32_t>> addresses;
  std::vector<std::uint32_t> arbitrary{0};
  std::optional<std::string> env_msgs_text;
  int env_msgs_line = 0;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) {
      // '#' followed by a digit is an address literal, not a comment
      std::size_t k = h;
      while (k != std::string::npos && k + 1 < raw.size() && std::isdigit(static_cast<unsigned char>(raw[k + 1])))
        k = raw.find('#', k + 1);
      if (k != std::string::npos) raw = raw.substr(0, k);
    }
    const std::string l = trim(raw);
    if (l.empty()) continue;
    const auto eq = l.find('=');
    if (eq == std::string::npos) throw ModelError("scenario line " + std::to_string(line) + ": expected key = value");
    const std::string key = trim(l.substr(0, eq));
    const std::string val = trim(l.substr(eq + 1));
    if (key == "name") {
      sc.name = val;
    } else if (key == "net") {
      sc.net = parse_net_tree(val);
    } else if (key == "addresses") {
      addresses = numbers(val, line);
    } else if (key == "data_max") {
      data_max = one_number(val, line);
    } else if (key == "queue_bound") {
      sc.queue_bound = one_number(val, line);
      if (sc.queue_bound < 1) throw ModelError("scenario line " + std::to_string(line) + ": queue_bound must be >= 1");
    } else if (key == "topology") {
      if (val == "static") sc.topo.dynamic = false;
      else if (val == "dynamic") sc.topo.dynamic = true;
      else throw ModelError("scenario line " + std::to_string(line) + ": topology must be static or dynamic");
    } else if (key == "inject") {
      static const std::regex triple(R"(\(\s*#?(\d+)\s*,\s*(\d+)\s*,\s*#?(\d+)\s*\))");
      for (auto it = std::sregex_iterator(val.begin(), val.end(), triple); it != std::sregex_iterator(); ++it)
        sc.inject.push_back({static_cast<Address>(std::stoul((*it)[1].str())),
                             static_cast<std::uint32_t>(std::stoul((*it)[2].str())),
                             static_cast<Address>(std::stoul((*it)[3].str()))});
    } else if (key == "arbitrary") {
      arbitrary = numbers(val, line);
      if (arbitrary.empty()) throw ModelError("scenario line " + std::to_string(line) + ": empty arbitrary domain");
    } else if (key == "node") {
      sc.node = one_number(val, line);
    } else if (key == "env") {
      static const std::regex move(R"((bump|havoc)\(\s*([A-Za-z_][A-Za-z0-9_]*)\s*\)|frozen)");
      for (auto it = std::sregex_iterator(val.begin(), val.end(), move); it != std::sregex_iterator(); ++it) {
        if ((*it)[0].str() == "frozen") continue;
        sc.env.push_back({(*it)[1].str() == "bump" ? EnvMove::Kind::Bump : EnvMove::Kind::Havoc, (*it)[2].str()});
      }
    } else if (key == "env_msgs") {
      env_msgs_text = val;
      env_msgs_line = line;
    } else {
      throw ModelError("scenario line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }

  std::vector<Address> addrs;
  if (addresses) addrs.assign(addresses->begin(), addresses->end());
  else if (sc.net) addrs = sc.net->ips().members();
  for (Address a : addrs)
    if (a > kMaxAddress) throw ModelError("scenario address #" + std::to_string(a) + " exceeds 63");
  sc.dom = make_domains(data_max, addrs, arbitrary);
  sc.topo.universe = sc.dom.universe();
  if (sc.net && !sc.net->ips().subset_of(sc.topo.universe))
    throw ModelError("net addresses must lie within the address universe");

  if (env_msgs_text) {
    static const std::regex msg(R"((newpkt|pkt)\(\s*(\d+)\s*,\s*#?(\d+)\s*\))");
    const auto& v = *env_msgs_text;
    for (auto it = std::sregex_iterator(v.begin(), v.end(), msg); it != std::sregex_iterator(); ++it) {
      const auto d = static_cast<std::uint32_t>(std::stoul((*it)[2].str()));
      const auto a = static_cast<Address>(std::stoul((*it)[3].str()));
      const Message m = (*it)[1].str() == "pkt" ? Message::pkt(d, a) : Message::newpkt(d, a);
      if (std::find(sc.dom.messages.begin(), sc.dom.messages.end(), m) == sc.dom.messages.end())
        throw ModelError("scenario line " + std::to_string(env_msgs_line) + ": " + to_string(m) +
                         " is outside the message domain");
      sc.env_msgs.push_back(m);
    }
  }
  for (const auto& inj : sc.inject) {
    if (inj.data > data_max || !sc.topo.universe.contains(inj.dst) || !sc.topo.universe.contains(inj.node))
      throw ModelError("injection (" + std::to_string(inj.node) + "," + std::to_string(inj.data) + "," +
                       std::to_string(inj.dst) + ") lies outside the scenario domains");
  }
  if (sc.inject.size() > 64) throw ModelError("at most 64 injections are supported");
  return sc;
}

Scenario load_scenario(const std::string& path) { return parse_scenario(read_file(path)); }

}  // namespace awn
