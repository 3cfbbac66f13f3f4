#include "support.hpp"

#include "awn/seq.hpp"

using namespace awn;

namespace {

const StateSchema& toy_schema() { return toy_program()->spec().schema; }

DataState toy_state(std::initializer_list<std::pair<const char*, Value>> set) {
  auto xi = default_data(toy_schema(), test::small_domains(7, {1, 2, 3, 7, 9}));
  for (const auto& [name, v] : set) xi.set(toy_schema().require(name), v);
  return xi;
}

Value eval(const std::string& text, const DataState& xi, const Domains& dom) {
  return eval_expr(xi, parse_expr(text, toy_schema()), dom);
}

Guard guard_of(const std::string& text) {
  const auto spec = parse_spec(
      "var ip : addr = self\nvar no : nat = 0\nvar nhip : addr = self\nvar msg : msg = none\n"
      "var num : nat = any\nvar sip : addr = any\nprocess A: <" + text + "> . call(A)");
  return spec.processes[0].body->guard;
}

std::size_t count_labels(const TermPtr& t) {
  std::size_t n = t->label ? 1 : 0;
  for (const auto& c : t->next) n += count_labels(c);
  return n;
}

}  // namespace

TEST_SUITE("awn-syntax") {
  TEST_CASE("toy source has exactly one process, PToy") {
    const auto spec = parse_spec(toy_source());
    REQUIRE(spec.processes.size() == 1);
    CHECK(spec.processes[0].name == "PToy");
  }

  TEST_CASE("dangling call is rejected") {
    CHECK_THROWS_AS(parse_spec("process A: call(B)"), ModelError);
  }

  TEST_CASE("duplicate process names are rejected") {
    CHECK_THROWS_AS(parse_spec("process A: call(A)\nprocess A: call(A)"), ModelError);
  }

  TEST_CASE("syntax errors carry line and column") {
    try {
      parse_spec("process A:\n  [[ x := ]] . call(A)");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() > 0);
    }
  }

  TEST_CASE("pretty printing round-trips every corpus model") {
    for (const auto& path : test::corpus_models()) {
      CAPTURE(path);
      const auto once = parse_spec(read_file(path));
      const std::string text = pretty(once);
      const auto twice = parse_spec(text);
      REQUIRE(twice.processes.size() == once.processes.size());
      for (std::size_t k = 0; k < once.processes.size(); ++k)
        CHECK(structurally_equal(once.processes[k].body, twice.processes[k].body));
      CHECK(pretty(twice) == text);
    }
  }

  TEST_CASE("labelling in traversal order") {
    const auto& spec = toy_program()->spec();
    const auto& body = spec.processes[0].body;
    REQUIRE(body->kind == TermKind::Receive);
    CHECK(to_string(*body->label) == "PToy-:0");

    const auto one = label_spec(parse_spec("var x : nat = 0\nprocess A: [[x := 0]] . call(A)"));
    const auto labels = collect_labels(one);
    REQUIRE(labels.size() == 1);
    CHECK(labels[0].index == 0);
  }

  TEST_CASE("both guards heading the outer choice carry index 2") {
    const auto& body = toy_program()->spec().processes[0].body;
    const auto& choice = body->next[0]->next[0];
    REQUIRE(choice->kind == TermKind::Choice);
    CHECK(choice->next[0]->label->index == 2);
    CHECK(choice->next[1]->label->index == 2);
    CHECK_FALSE(choice->label.has_value());
  }

  TEST_CASE("labels are distinct except declared choice sharing") {
    const auto labels = collect_labels(toy_program()->spec());
    std::map<std::uint32_t, int> seen;
    for (const auto& l : labels) ++seen[l.index];
    for (const auto& [k, n] : seen) CHECK((n == 1 || k == 2 || k == 6));
    CHECK(seen[2] == 2);
    CHECK(seen[6] == 2);
  }

  TEST_CASE("labelling twice is rejected") {
    CHECK_THROWS_AS(label_spec(toy_program()->spec()), ModelError);
  }

  TEST_CASE("expression examples") {
    const auto dom = test::small_domains(7, {1, 2, 3, 7, 9});
    CHECK(as_nat(eval("max(no, num)", toy_state({{"no", Nat{2}}, {"num", Nat{5}}}), dom)) == 5);
    CHECK(as_nat(eval("0", toy_state({}), dom)) == 0);
    CHECK(as_nat(eval("msg.data", toy_state({{"msg", Message::pkt(3, 7)}}), dom)) == 3);
  }

  TEST_CASE("naturals saturate at data_max") {
    const auto dom = test::small_domains(2);
    CHECK(as_nat(eval("no + 1", toy_state({{"no", Nat{2}}}), dom)) == 2);
    CHECK(as_nat(eval("no + 1", toy_state({{"no", Nat{1}}}), dom)) == 2);
  }

  TEST_CASE("projection on the wrong constructor is an evaluation error") {
    const auto dom = test::small_domains();
    CHECK_THROWS_AS(eval("msg.src", toy_state({{"msg", Message::newpkt(1, 2)}}), dom), EvalError);
  }

  TEST_CASE("guard examples") {
    const auto dom = test::small_domains(7, {1, 2, 3, 7, 9});
    const auto xi = toy_state({{"num", Nat{3}}, {"no", Nat{3}}});
    CHECK(eval_guard(xi, guard_of("num >= no"), dom) == std::vector<DataState>{xi});

    CHECK(eval_guard(toy_state({{"msg", Message::newpkt(4, 1)}}), guard_of("is_pkt"), dom).empty());

    const auto p = toy_state({{"msg", Message::pkt(4, 9)}});
    auto expect = p;
    expect.set(toy_schema().require("num"), Nat{4});
    expect.set(toy_schema().require("sip"), Addr{9});
    CHECK(eval_guard(p, guard_of("is_pkt"), dom) == std::vector<DataState>{expect});

    const auto n = toy_state({{"msg", Message::newpkt(4, 1)}});
    auto expect_n = n;
    expect_n.set(toy_schema().require("num"), Nat{4});
    CHECK(eval_guard(n, guard_of("is_newpkt"), dom) == std::vector<DataState>{expect_n});
  }

  TEST_CASE("binder guards stay within the product of domain sizes") {
    const auto dom = test::small_domains(3, {1, 2, 4});
    const auto xi = toy_state({});
    const auto any_nat = eval_guard(xi, guard_of("num <- *"), dom).size();
    const auto both = eval_guard(xi, guard_of("num <- *, sip <- *"), dom).size();
    CHECK(any_nat == enumerate(Type::Nat, dom).size());
    CHECK(both == enumerate(Type::Nat, dom).size() * enumerate(Type::Addr, dom).size());
    CHECK(eval_guard(xi, guard_of("sip <- {#1, #4}"), dom).size() == 2);
  }

  TEST_CASE("assignment examples") {
    const auto dom = test::small_domains();
    const auto xi = toy_state({{"ip", Addr{2}}, {"nhip", Addr{0}}});
    const auto t = parse_spec(
        "var ip : addr = self\nvar no : nat = 0\nvar nhip : addr = self\nvar msg : msg = none\n"
        "var num : nat = any\nvar sip : addr = any\nprocess A: [[nhip := ip]] . call(A)");
    auto expect = xi;
    expect.set(toy_schema().require("nhip"), Addr{2});
    CHECK(apply_assignment(xi, t.processes[0].body->updates, dom) == expect);
    CHECK(apply_assignment(xi, Assignment{}, dom) == xi);
  }

  TEST_CASE("assignments are simultaneous") {
    const auto spec = parse_spec("var x : nat = 1\nvar y : nat = 2\nprocess A: [[x := y, y := x]] . call(A)");
    const auto& u = spec.processes[0].body->updates;
    const auto dom = test::small_domains(7);
    const DataState xi({Nat{1}, Nat{2}});
    // oracle: read every right-hand side first, then write
    std::vector<Value> rhs;
    for (const auto& up : u) rhs.push_back(eval_expr(xi, up.value, dom));
    DataState expect = xi;
    for (std::size_t k = 0; k < u.size(); ++k) expect.set(u[k].var, rhs[k]);
    CHECK(apply_assignment(xi, u, dom) == expect);
    CHECK(apply_assignment(xi, u, dom) == DataState({Nat{2}, Nat{1}}));
  }

  TEST_CASE("property: update order does not matter") {
    const std::string decl = "var a : nat = 0\nvar b : nat = 0\nvar c : nat = 0\nvar d : nat = 0\n";
    const std::vector<std::string> rhs = {"a", "b + 1", "max(c, d)", "2", "if a < b then c else d", "d + a"};
    const auto dom = test::small_domains(5);
    for (int round = 0; round < 200; ++round) {
      std::vector<std::string> ups;
      for (const char* v : {"a", "b", "c", "d"})
        if (test::pick(2)) ups.push_back(std::string(v) + " := " + rhs[test::pick(rhs.size())]);
      if (ups.empty()) continue;
      auto shuffled = ups;
      std::shuffle(shuffled.begin(), shuffled.end(), test::rng());
      auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
        return s;
      };
      const auto s1 = parse_spec(decl + "process A: [[" + join(ups) + "]] . call(A)");
      const auto s2 = parse_spec(decl + "process A: [[" + join(shuffled) + "]] . call(A)");
      std::vector<Value> slots;
      for (int k = 0; k < 4; ++k) slots.emplace_back(Nat{static_cast<std::uint32_t>(test::pick(6))});
      const DataState xi(slots);
      CHECK(apply_assignment(xi, s1.processes[0].body->updates, dom) ==
            apply_assignment(xi, s2.processes[0].body->updates, dom));
    }
  }

  TEST_CASE("abbreviations expand to a labelled clearing assign and a call") {
    const auto& body = toy_program()->spec().processes[0].body;
    // receive . nhip . (newpkt-branch ...)
    const auto& newpkt = body->next[0]->next[0]->next[0];
    const auto& clear = newpkt->next[0]->next[0]->next[0];
    REQUIRE(clear->kind == TermKind::Assign);
    CHECK(clear->label->index == 5);
    CHECK(clear->updates.size() == 3);
    CHECK(clear->next[0]->kind == TermKind::Call);
    CHECK(count_labels(body) == 14);
  }
}
