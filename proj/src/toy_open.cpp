#include "awn/toy_open.hpp"

namespace awn {

OpenInstance toy_open_instance(std::shared_ptr<const Program> prog, Scenario sc, ExploreOptions opt) {
  const auto suite = toy_suite(*prog, sc.dom);
  OpenInstance inst;
  inst.R_reads = {prog->spec().schema.require("no")};
  inst.prog = std::move(prog);
  inst.process = "PToy";
  inst.sc = std::move(sc);
  inst.invariant = suite.bigger_than_next;
  inst.E = suite.nos_increase;
  inst.F = suite.nos_increase;
  inst.R = suite.msg_num_ok;
  inst.R_text = "msg_num_ok";
  inst.options = std::move(opt);
  return inst;
}

OpenInstance toy_equality_instance(std::shared_ptr<const Program> prog, Scenario sc, Predicate invariant,
                                   ExploreOptions opt) {
  OpenInstance inst;
  inst.prog = std::move(prog);
  inst.process = "PToy";
  inst.sc = std::move(sc);
  inst.invariant = std::move(invariant);
  inst.R = [](const GlobalState&, const Message&) { return true; };
  inst.R_text = "true";
  inst.options = std::move(opt);
  return inst;
}

}  // namespace awn
