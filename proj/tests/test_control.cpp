#include "oracles.hpp"

#include "awn/check.hpp"
#include "awn/seq.hpp"

using namespace awn;
using namespace oracle;

namespace {

std::shared_ptr<const Program> program(const std::string& src) { return load_program(src); }

const std::string kVars = "var x : nat = 0\n";

std::set<std::uint32_t> label_indices(const Program& p, TermId t) {
  std::set<std::uint32_t> s;
  for (const auto& l : p.labels_of(t)) s.insert(l.index);
  return s;
}

}  // namespace

TEST_SUITE("control-analysis") {
  TEST_CASE("microsteps") {
    const auto p = program(kVars + "process A: ([[x := 0]] . call(A)) (+) ([[x := 1]] . call(A))");
    const TermId body = p->body("A");
    CHECK(p->microsteps(body) == p->children(body));
    const auto toy = toy_program();
    for (TermId c : toy->cterms()) CHECK(toy->microsteps(c).empty());
    // a call unfolds to the process body
    for (TermId id : toy->subterms())
      if (toy->term(id).kind == TermKind::Call) CHECK(toy->microsteps(id) == TermSet{toy->body("PToy")});
  }

  TEST_CASE("well-formedness examples") {
    CHECK_FALSE(program(kVars + "process A: ([[x := 0]] . call(A)) (+) call(A)")->wellformed());
    CHECK(program(kVars + "process A: [[x := 0]] . call(A)")->wellformed());
    CHECK(toy_program()->wellformed());
    CHECK(oracle_wellformed(*toy_program()));
  }

  TEST_CASE("sterms on an ill-formed specification is rejected") {
    const auto p = program(kVars + "process A: ([[x := 0]] . call(A)) (+) call(A)");
    CHECK_THROWS_AS(p->sterms(p->body("A")), ModelError);
    CHECK_THROWS_AS(p->cterms(), ModelError);
  }

  TEST_CASE("sterms and stermsl") {
    const auto toy = toy_program();
    const TermId body = toy->body("PToy");
    REQUIRE(toy->sterms(body).size() == 1);
    const TermId recv = toy->sterms(body)[0];
    CHECK(toy->term(recv).kind == TermKind::Receive);
    CHECK(to_string(*toy->term(recv).label) == "PToy-:0");
    CHECK(toy->sterms(recv) == TermSet{recv});

    // the inner choices of the toy: every start term is guard headed
    for (TermId id : toy->subterms())
      if (toy->term(id).kind == TermKind::Choice) {
        CHECK(toy->sterms(id) == oracle_sterms(*toy, id));
        for (TermId s : toy->sterms(id)) CHECK(toy->term(s).kind == TermKind::Guard);
      }

    const auto calls = program(kVars + "process A: call(B) (+) [[x := 0]] . call(A)\nprocess B: [[x := 1]] . call(A)");
    const TermId a = calls->body("A");
    CHECK(calls->stermsl(a).size() == 2);
    CHECK(calls->sterms(a).size() == 2);
    bool has_call = false;
    for (TermId t : calls->stermsl(a)) has_call = has_call || calls->term(t).kind == TermKind::Call;
    CHECK(has_call);
  }

  TEST_CASE("dterms examples") {
    const auto toy = toy_program();
    const TermId recv = toy->body("PToy");
    const auto d = toy->dterms(recv);
    REQUIRE(d.size() == 1);
    CHECK(toy->term(d[0]).kind == TermKind::Assign);
    CHECK(to_string(*toy->term(d[0]).label) == "PToy-:1");

    const auto u = program(kVars + "process A: unicast(#1, pkt(0, #1)) |> [[x := 0]] . call(A) <| [[x := 1]] . call(A)");
    const TermId uni = u->body("A");
    CHECK(u->dterms(uni) == unite({u->children(uni)[0]}, {u->children(uni)[1]}));

    // an assign continuing with call(PToy) derives the body's start terms
    for (TermId c : toy->cterms()) {
      const Term& t = toy->term(c);
      if (t.kind == TermKind::Assign && toy->term(toy->children(c)[0]).kind == TermKind::Call)
        CHECK(toy->dterms(c) == toy->sterms(toy->body("PToy")));
    }
  }

  TEST_CASE("cterms of the toy agree with the oracles") {
    const auto toy = toy_program();
    CHECK(toy->cterms() == oracle_cterms(*toy));
    CHECK(toy->cterms() == toy->cterms_local());
    CHECK(toy->cterms().size() == 14);
    for (TermId c : toy->cterms()) CHECK(toy->dterms(c) == oracle_dterms(*toy, c));
  }

  TEST_CASE("cterms of a one-assign loop") {
    const auto p = program(kVars + "process A: [[x := 0]] . call(A)");
    REQUIRE(p->cterms().size() == 1);
    CHECK(p->term(p->cterms()[0]).kind == TermKind::Assign);
  }

  TEST_CASE("labels") {
    const auto toy = toy_program();
    for (TermId id : toy->subterms())
      if (toy->term(id).kind == TermKind::Choice && toy->term(toy->children(id)[0]).label &&
          toy->term(toy->children(id)[0]).label->index == 2)
        CHECK(label_indices(*toy, id) == std::set<std::uint32_t>{2});
    for (TermId c : toy->cterms()) CHECK(toy->labels_of(c) == std::set<Label>{*toy->term(c).label});
    CHECK(toy->check_simple_labels());
    CHECK(toy->check_control_within({toy->ptr(toy->body("PToy"))}));
  }

  TEST_CASE("inconsistently labelled choice is not simple") {
    const auto p = program(kVars + "process A: ([[x := 0]] . call(A)) (+) ([[x := 1]] . call(A))");
    CHECK_FALSE(p->check_simple_labels());
    const auto q = program(kVars + "process A: ([[x := 0]] @0 . call(A)) (+) ([[x := 1]] @0 . call(A))");
    CHECK(q->check_simple_labels());
  }

  TEST_CASE("control terms outside the specification are not within it") {
    const auto toy = toy_program();
    const auto other = program(kVars + "process Q: [[x := 0]] . call(Q)");
    CHECK_FALSE(toy->check_control_within({other->ptr(other->body("Q"))}));
  }

  TEST_CASE("property: fixpoint and local characterisation agree on corpus and random specs") {
    for (const auto& path : test::corpus_models()) {
      CAPTURE(path);
      const auto p = load_program(read_file(path));
      REQUIRE(p->wellformed());
      CHECK(p->cterms() == p->cterms_local());
      CHECK(p->cterms() == oracle_cterms(*p));
    }
    for (int k = 0; k < 100; ++k) {
      const auto p = std::make_shared<const Program>(label_spec(random_spec(true)));
      REQUIRE(p->wellformed());
      CHECK(p->cterms() == p->cterms_local());
      CHECK(p->cterms() == oracle_cterms(*p));
    }
  }

  TEST_CASE("property: control terms are prefix-headed subterms") {
    for (const auto& path : test::corpus_models()) {
      const auto p = load_program(read_file(path));
      const auto subs = p->subterms();
      for (TermId c : p->cterms()) {
        CHECK(is_prefix(p->term(c).kind));
        CHECK(std::find(subs.begin(), subs.end(), c) != subs.end());
      }
    }
  }

  TEST_CASE("property: stermsl within ctermsl") {
    for (int k = 0; k < 100; ++k) {
      const auto p = std::make_shared<const Program>(label_spec(random_spec(true)));
      for (TermId t : p->subterms()) {
        const auto sl = p->stermsl(t);
        const auto cl = p->ctermsl(t);
        CHECK(std::includes(cl.begin(), cl.end(), sl.begin(), sl.end()));
      }
    }
  }

  TEST_CASE("property: no call in stermsl implies well-formed") {
    int checked = 0;
    for (int k = 0; k < 300 || checked < 100; ++k) {
      const bool guarded = k % 2 == 0;
      const auto p = std::make_shared<const Program>(label_spec(random_spec(guarded)));
      CHECK(p->wellformed() == oracle_wellformed(*p));
      if (guarded) {
        CHECK(no_call_in_stermsl(*p));
        CHECK(p->wellformed());
        ++checked;
      } else if (no_call_in_stermsl(*p)) {
        CHECK(p->wellformed());
      }
    }
  }

  TEST_CASE("property: reachable control states are over-approximated") {
    const auto dom = test::small_domains();
    for (const auto& path : test::corpus_models()) {
      CAPTURE(path);
      const auto p = load_program(read_file(path));
      const auto a = make_seq(p, p->spec().initial_process(), 1, dom);
      ExploreOptions opt;
      opt.keep_edges = true;
      const auto ex = explore(a, opt);
      REQUIRE(ex->complete);
      const auto& ct = p->cterms();
      for (const auto& s : ex->states)
        for (TermId st : p->sterms(s.control)) CHECK(std::binary_search(ct.begin(), ct.end(), st));
      for (const auto& e : ex->edges) {
        TermSet reach;
        for (TermId q : p->sterms(ex->states[e.src].control)) reach = unite(reach, p->dterms(q));
        const auto& next = p->sterms(ex->states[e.dst].control);
        CHECK(std::includes(reach.begin(), reach.end(), next.begin(), next.end()));
      }
    }
  }

  TEST_CASE("analyze report") {
    const auto r = analyze(*toy_program());
    CHECK(r.wellformed);
    CHECK(r.simple_labels);
    CHECK(r.control_within);
    CHECK(r.cterm_count == 14);
  }
}
