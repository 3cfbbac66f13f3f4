#include "support.hpp"

#include "awn/lifting.hpp"
#include "awn/toy_open.hpp"

using namespace awn;

namespace {

const StateSchema& schema() { return toy_program()->spec().schema; }

Scenario scenario(const std::string& name) { return load_scenario(test::corpus("scenarios/" + name + ".scn")); }

template <class L>
std::vector<std::tuple<Action, Updates, L>> normal(std::vector<OpenTransition<L>> v) {
  std::vector<std::tuple<Action, Updates, L>> out;
  for (auto& t : v) out.emplace_back(std::move(t.action), std::move(t.owned), std::move(t.local));
  std::sort(out.begin(), out.end());
  return out;
}

template <class L>
AddrSet addresses(const Updates& u) {
  AddrSet s;
  for (const auto& [a, xi] : u) s.insert(a);
  return s;
}

// Every transition lists exactly the owned addresses, in order.
template <class L>
void check_owned(const OpenAutomaton<L>& a, const OpenSetup& setup, std::size_t samples) {
  auto ex = explore(open_system(a, setup), ExploreOptions{});
  REQUIRE(ex->complete);
  for (std::size_t r = 0; r < samples; ++r) {
    const auto& s = ex->states[test::pick(ex->states.size())];
    for (const auto& t : a.step(s.sigma, s.local)) {
      REQUIRE(addresses<L>(t.owned) == a.owned);
      REQUIRE(std::is_sorted(t.owned.begin(), t.owned.end()));
    }
  }
}

Predicate step_rel(const std::string& name, const std::string& text) {
  return parse_predicate(name, text, schema(), scenario("single").dom, true);
}

ExploreOptions fixed_workers() {
  ExploreOptions o;
  o.workers = 1;
  return o;
}

}  // namespace

TEST_SUITE("semantics-open") {
  TEST_CASE("open sequential step reads and writes only its own entry") {
    const auto sc = scenario("single");
    const auto p = toy_program();
    const auto oseq = make_oseq(p, "PToy", 1, sc.dom);
    CHECK(oseq.owned == AddrSet{1});
    const auto init = oseq.init();
    REQUIRE(!init.empty());
    GlobalState g(default_data(schema(), sc.dom));
    for (const auto& [a, xi] : init[0].owned) g.set(a, xi);
    const auto ts = oseq.step(g, init[0].local);
    CHECK(ts.size() == sc.dom.messages.size());
    for (const auto& t : ts) {
      REQUIRE(t.owned.size() == 1);
      CHECK(t.owned[0].first == 1);
      CHECK(std::holds_alternative<act::Receive>(t.action));
    }
  }

  TEST_CASE("open rules at other addresses ignore the rest of sigma") {
    const auto sc = scenario("single");
    const auto p = toy_program();
    const auto xi = toy_init(*p, 1, sc.dom).front();
    GlobalState a(default_data(schema(), sc.dom)), b = a;
    a.set(1, xi);
    b.set(1, xi);
    auto other = xi;
    other.set(schema().require("no"), Nat{2});
    b.set(2, other);
    const TermId t = p->body("PToy");
    CHECK(normal(open_seq_step(*p, sc.dom, 1, a, t)) == normal(open_seq_step(*p, sc.dom, 1, b, t)));
  }

  TEST_CASE("property: erasing sigma gives the standard sequential rules") {
    const auto sc = scenario("single");
    const auto p = toy_program();
    const auto seq = make_seq(p, "PToy", 1, sc.dom);
    auto ex = explore(seq, fixed_workers());
    REQUIRE(ex->complete);
    const GlobalState base(default_data(schema(), sc.dom));
    for (const auto& s : ex->states) {
      GlobalState g = base;
      g.set(1, s.data);
      std::vector<std::tuple<Action, DataState, TermId>> want, got;
      for (const auto& t : seq_step(*p, sc.dom, s)) want.emplace_back(t.action, t.target.data, t.target.control);
      for (const auto& t : open_seq_step(*p, sc.dom, 1, g, s.control))
        got.emplace_back(t.action, updated(t.owned, 1), t.local);
      std::sort(want.begin(), want.end());
      std::sort(got.begin(), got.end());
      REQUIRE(want == got);
    }
  }

  TEST_CASE("property: owned-set discipline at every layer") {
    const auto single = toy_open_instance(toy_program(), scenario("single"));
    auto setup = [&](const OpenInstance& inst, Layer l, AddrSet owned) {
      return open_setup(schema(), inst.sc, layer_assumption(inst, l, owned));
    };
    check_owned(instance_oseq(single, 1), setup(single, Layer::Seq, {1}), 200);
    check_owned(instance_opar(single, 1), setup(single, Layer::Qmsg, {1}), 200);
    const auto line = toy_open_instance(toy_program(), scenario("line2"));
    const auto onet = instance_onet(line);
    check_owned(make_oclosed(onet, line.sc.inject), setup(line, Layer::Closed, onet->owned()), 200);
  }

  TEST_CASE("the open partial network owns its addresses") {
    const auto inst = toy_open_instance(toy_program(), scenario("net3"));
    const auto onet = instance_onet(inst);
    CHECK(make_opnet(onet).owned == AddrSet{1, 2, 3});
    CHECK(make_oclosed(onet, inst.sc.inject).owned == AddrSet{1, 2, 3});
  }

  TEST_CASE("open nodes stutter on foreign arrivals and topology changes") {
    const auto inst = toy_open_instance(toy_program(), scenario("line2-dynamic"));
    const auto node = instance_onode(inst, 1);
    auto setup = open_setup(schema(), inst.sc, layer_assumption(inst, Layer::Node, {1}));
    auto ex = explore(open_system(node, setup), fixed_workers());
    std::size_t stutters = 0, changes = 0;
    for (std::size_t r = 0; r < 100; ++r) {
      const auto& s = ex->states[test::pick(ex->states.size())];
      for (const auto& t : node.step(s.sigma, s.local)) {
        const auto* a = std::get_if<act::Arrive>(&t.action);
        const bool topo = std::holds_alternative<act::Connect>(t.action) || std::holds_alternative<act::Disconnect>(t.action);
        if ((a && a->h.empty()) || topo) {
          REQUIRE(updated(t.owned, 1) == s.sigma.at(1));
          REQUIRE(t.local.inner == s.local.inner);
          if (a) {
            CHECK(t.local == s.local);
            ++stutters;
          } else {
            ++changes;
          }
        }
      }
    }
    CHECK(stutters > 0);
    CHECK(changes > 0);
  }

  TEST_CASE("global view fills unowned addresses with the fallback") {
    const auto dom = test::small_domains(2, {1, 2, 3});
    const auto fallback = default_data(schema(), dom);
    const auto x1 = toy_init(*toy_program(), 1, dom).front();
    const auto x3 = toy_init(*toy_program(), 3, dom).front();
    const std::set<Label> none;
    const auto g = global_view({{1, &x1, &none}, {3, &x3, &none}}, AddrSet{1, 2, 3}, fallback);
    CHECK(g.at(1) == x1);
    CHECK(g.at(2) == fallback);
    CHECK(g.at(3) == x3);
    CHECK(g.at(9) == fallback);
    CHECK(g.restrict(AddrSet{1}).entries().size() == 1);
  }

  TEST_CASE("property: a larger environment reaches more") {
    auto sc = scenario("single");
    const auto inst = toy_open_instance(toy_program(), sc);
    const auto oseq = instance_oseq(inst, 1);
    auto run = [&](std::vector<EnvMove> env) {
      auto s = sc;
      s.env = std::move(env);
      return explore(open_system(oseq, open_setup(schema(), s, layer_assumption(inst, Layer::Seq, {1}))),
                     fixed_workers());
    };
    const auto frozen = run({});
    const auto bump = run({{EnvMove::Kind::Bump, "no"}});
    const auto havoc = run({{EnvMove::Kind::Havoc, "no"}});
    for (const auto& s : frozen->states) REQUIRE(bump->find(s));
    for (const auto& s : bump->states) REQUIRE(havoc->find(s));
    CHECK(frozen->states.size() < bump->states.size());
  }

  TEST_CASE("equality regime: the closed invariant transfers to the standard network") {
    const auto sc = scenario("line2");
    const auto suite = toy_suite(*toy_program(), sc.dom);
    const auto inst = toy_equality_instance(toy_program(), sc, suite.bigger_than_next);
    const auto r = check_transfer(inst, suite.bigger_than_next);
    CHECK(r.outcome == Outcome::Holds);
    CHECK(r.pullback_holds);
    CHECK(r.standard_states > 0);
    CHECK(r.standard_states <= r.open_states);
    // the label invariant holds on the same open system
    const auto onet = instance_onet(inst);
    auto setup = open_setup(schema(), sc, layer_assumption(inst, Layer::Closed, onet->owned()));
    CheckContext ctx{setup.universe, setup.fallback, fixed_workers()};
    const auto v = check_invariant(open_system(make_oclosed(onet, sc.inject), setup), suite.nhip_eq_ip, ctx);
    CHECK(v.outcome == Outcome::Holds);
  }

  TEST_CASE("simulation: the sequential process and its queued composition") {
    const auto sc = scenario("single");
    const auto p = toy_program();
    const auto fallback = default_data(schema(), sc.dom);
    const auto r1 = check_simulation(make_seq(p, "PToy", 1, sc.dom), make_oseq(p, "PToy", 1, sc.dom), split_seq(1),
                                     fallback, fixed_workers());
    CHECK(r1.outcome == Outcome::Holds);
    CHECK(r1.transitions > 0);
    const auto r2 = check_simulation(protocol_with_queue(p, "PToy", sc.dom, sc.queue_bound)(1),
                                     opar(make_oseq(p, "PToy", 1, sc.dom), make_qmsg(sc.dom, sc.queue_bound)),
                                     split_proc(1), fallback, fixed_workers());
    CHECK(r2.outcome == Outcome::Holds);
  }

  TEST_CASE("simulation: a missing open rule is caught") {
    const auto sc = scenario("single");
    const auto p = toy_program();
    const auto r = check_simulation(make_seq(p, "PToy", 1, sc.dom),
                                    make_oseq(p, "PToy", 1, sc.dom, {TermKind::Broadcast}), split_seq(1),
                                    default_data(schema(), sc.dom), fixed_workers());
    CHECK(r.outcome == Outcome::Counterexample);
    CHECK(r.reason.find("broadcast") != std::string::npos);
  }

  TEST_CASE("lifting up to the node layer on one node") {
    const auto inst = toy_open_instance(toy_program(), scenario("single"), fixed_workers());
    const auto reports = check_lifting(inst, Layer::Node, 1);
    REQUIRE(reports.size() == 3);
    for (const auto& r : reports) {
      INFO(to_string(r.layer));
      CHECK(r.invariant.outcome == Outcome::Holds);
      for (const auto& c : r.premises) CHECK_MESSAGE(c.ok, c.name, ": ", c.witness);
      for (const auto& c : r.conclusions) CHECK_MESSAGE(c.ok, c.name, ": ", c.witness);
      CHECK(r.ok());
    }
  }

  TEST_CASE("lifting: a non-reflexive F fails its premise") {
    auto inst = toy_open_instance(toy_program(), scenario("single"), fixed_workers());
    inst.F = step_rel("strict", "no < no'");
    const auto reports = check_lifting(inst, Layer::Qmsg, 1);
    REQUIRE(reports.size() == 2);
    bool found = false;
    for (const auto& c : reports[1].premises)
      if (c.name == "(4) F reflexive") {
        found = true;
        CHECK(!c.ok);
        CHECK(!c.witness.empty());
      }
    CHECK(found);
    CHECK(!reports[1].ok());
  }

  TEST_CASE("an enlarged environment keeps the invariant only under its assumptions") {
    // havoc may lower no elsewhere; nos_increase as E and F filters that out
    const auto sc = scenario("single-havoc");
    const auto inst = toy_open_instance(toy_program(), sc, fixed_workers());
    CHECK(check_lifting(inst, Layer::Seq, 1).front().invariant.outcome == Outcome::Holds);

    auto loose = inst;
    loose.E = step_rel("any", "true");
    loose.F = loose.E;
    const auto v = check_lifting(loose, Layer::Seq, 1).front().invariant;
    CHECK(v.outcome == Outcome::Counterexample);
    CHECK(v.trace.has_value());

    auto no_r = inst;
    no_r.R = [](const GlobalState&, const Message&) { return true; };
    no_r.R_text = "true";
    CHECK(check_lifting(no_r, Layer::Seq, 1).front().invariant.outcome == Outcome::Counterexample);
  }
}
