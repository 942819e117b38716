#include "doctest.h"

#include <string>

#include "support/builders.hpp"
#include "ticksup/operations.hpp"
#include "ticksup/testkit.hpp"
#include "ticksup/ttg.hpp"

using namespace ticksup;
using test::Builder;
using test::evs;
using test::make_table;

namespace {

std::shared_ptr<const EventTable> plain_table() {
  return make_table({{"a", false, false}, {"b", false, false}});
}

Automaton deadline_plant(std::shared_ptr<const EventTable> t) {
  Builder g(t);
  g.tr("s0", "tick", "s2")
      .tr("s2", "tick", "s5")
      .tr("s5", "a", "s6")
      .tr("s6", "b", "s8")
      .tr("s6", "tick", "s7")
      .tr("s7", "b", "s8");
  for (const char* n : {"s0", "s2", "s5", "s6", "s7", "s8"}) g.st(n, false, n);
  g.mark("s8");
  return g.take();
}

// "class 'x': ..." -> "x"
std::string failing_class(const Verdict& v) {
  auto from = v.detail.find('\'');
  auto to = v.detail.find('\'', from + 1);
  REQUIRE(from != std::string::npos);
  REQUIRE(to != std::string::npos);
  return v.detail.substr(from + 1, to - from - 1);
}

}  // namespace

TEST_CASE("oracle and verifier agree on the handcrafted shapes") {
  auto t = plain_table();
  Automaton g = deadline_plant(t);

  SUBCASE("holds within a wide budget") {
    MarkerCover cover{{CoverClass{"service", 3, {"s8"}}}};
    CHECK(verify_bounded_time_nonblocking(g, cover).holds);
    CHECK(btc_oracle(g, cover).holds);
  }

  SUBCASE("the slow route breaks a tight budget") {
    MarkerCover cover{{CoverClass{"service", 2, {"s8"}}}};
    Verdict v = verify_bounded_time_nonblocking(g, cover);
    Verdict o = btc_oracle(g, cover);
    REQUIRE_FALSE(v.holds);
    REQUIRE_FALSE(o.holds);
    CHECK(failing_class(v) == failing_class(o));
  }

  SUBCASE("a stranded state fails both") {
    Builder a(t);
    a.tr("v0", "a", "v1").tr("v0", "b", "m");
    a.st("v1", false, "V");
    a.st("m", true, "M");
    MarkerCover cover{{CoverClass{"only", 1, {"M"}}}};
    Verdict v = verify_bounded_time_nonblocking(a.get(), cover);
    Verdict o = btc_oracle(a.get(), cover);
    REQUIRE_FALSE(v.holds);
    REQUIRE_FALSE(o.holds);
    CHECK(o.code == VerdictCode::class_unreachable);
    CHECK(failing_class(v) == failing_class(o));
  }

  SUBCASE("a completion-dodging cycle fails both") {
    Builder a(t);
    a.tr("v0", "a", "v1")
        .tr("v1", "b", "m")
        .tr("v1", "tick", "v2")
        .tr("v2", "a", "v1");
    a.st("m", true, "M");
    MarkerCover cover{{CoverClass{"only", 4, {"M"}}}};
    Verdict v = verify_bounded_time_nonblocking(a.get(), cover);
    Verdict o = btc_oracle(a.get(), cover);
    REQUIRE_FALSE(v.holds);
    REQUIRE_FALSE(o.holds);
    CHECK(v.code == VerdictCode::class_cycle);
    CHECK(o.code == VerdictCode::budget_exceeded);  // same defect, pumped out
    CHECK(failing_class(v) == failing_class(o));
  }

  SUBCASE("both insist on activity-loop-freeness") {
    Builder a(t);
    a.tr("v0", "a", "v0").tr("v0", "b", "m");
    a.st("m", true, "M");
    MarkerCover cover{{CoverClass{"only", 1, {"M"}}}};
    CHECK_THROWS_AS(verify_bounded_time_nonblocking(a.get(), cover), Error);
    CHECK_THROWS_AS(btc_oracle(a.get(), cover), Error);
  }
}

TEST_CASE("closure enumeration lists strings shortest first") {
  auto t = plain_table();
  Builder a(t);
  a.tr("p0", "a", "p1").tr("p0", "b", "p0").tr("p1", "tick", "p0");
  a.mark("p0");

  auto strings = enumerate_closure_strings(a.get(), 2);
  REQUIRE(strings.size() == 6);
  CHECK(strings[0].empty());
  CHECK(strings[1] == evs(*t, "a"));
  CHECK(strings[2] == evs(*t, "b"));
  CHECK(strings[3] == evs(*t, "a tick"));
  CHECK(strings[4] == evs(*t, "b a"));
  CHECK(strings[5] == evs(*t, "b b"));

  CHECK(enumerate_closure_strings(Automaton::empty(t), 4).empty());
  CHECK(enumerate_closure_strings(a.get(), 0).size() == 1);
}

TEST_CASE("membership survivors equal the closure of the pruned result") {
  auto t = plain_table();
  Automaton g = deadline_plant(t);
  CoverClass cls{"service", 2, {"s8"}};

  auto survivors = supremal_membership_oracle(g, g, cls, 7);
  Automaton out = sup_btc(g, g, cls);
  CHECK(survivors == enumerate_closure_strings(out, 7));

  REQUIRE(survivors.size() == 5);
  CHECK(survivors[0].empty());
  CHECK(survivors[1] == evs(*t, "tick"));
  CHECK(survivors[2] == evs(*t, "tick tick"));
  CHECK(survivors[3] == evs(*t, "tick tick a"));
  CHECK(survivors[4] == evs(*t, "tick tick a b"));

  SUBCASE("a completion makes the following tick free") {
    Builder k(t);
    k.tr("m0", "tick", "u1").tr("u1", "tick", "u2");
    k.st("m0", true, "M");
    k.st("u1", false, "U");
    k.st("u2", true, "M");
    CoverClass c{"c", 1, {"M"}};
    auto s = supremal_membership_oracle(k.get(), k.get(), c, 5);
    CHECK(s == enumerate_closure_strings(sup_btc(k.get(), k.get(), c), 5));
    REQUIRE(s.size() == 3);
    CHECK(s[2] == evs(*t, "tick tick"));
  }

  SUBCASE("an unaffordable start leaves nothing") {
    auto s = supremal_membership_oracle(g, g, CoverClass{"c", 1, {"s8"}}, 7);
    CHECK(s.empty());
    CHECK(supremal_membership_oracle(g, Automaton::empty(t),
                                     CoverClass{"c", 1, {"s8"}}, 7)
              .empty());
  }
}

TEST_CASE("the union recognizer merges the resolved classes") {
  auto t = plain_table();
  Builder g(t);
  g.tr("h0", "a", "h1").tr("h0", "b", "h2");
  g.st("h1", true, "A");
  g.st("h2", true, "B");

  Automaton both = union_recognizer(
      g.get(),
      MarkerCover{{CoverClass{"l", 1, {"A"}}, CoverClass{"r", 1, {"B"}}}});
  CHECK(both.state(both.find_state("h1")).marked);
  CHECK(both.state(both.find_state("h2")).marked);

  Automaton left =
      union_recognizer(g.get(), MarkerCover{{CoverClass{"l", 1, {"A"}}}});
  CHECK(left.state(left.find_state("h1")).marked);
  CHECK_FALSE(left.state(left.find_state("h2")).marked);
  CHECK(is_nonblocking(both).holds);
  CHECK_FALSE(is_nonblocking(left).holds);
}

TEST_CASE("instance generation is reproducible and well formed") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    InstanceParams p;
    p.seed = seed;
    RandomInstance inst = random_instance(p);

    CHECK_FALSE(inst.ttg.is_empty());
    CHECK(check_activity_loop_free(inst.ttg).holds);
    CHECK_NOTHROW(check_cover(inst.ttg, inst.cover));
    CHECK_FALSE(inst.spec.is_empty());
    for (StateId q = 0; q < inst.spec.state_count(); ++q)
      CHECK(inst.spec.state(q).marked);

    RandomInstance again = random_instance(p);
    CHECK(inst.ttg == again.ttg);
    CHECK(inst.spec == again.spec);
    REQUIRE(inst.cover.classes.size() == again.cover.classes.size());
    for (std::size_t i = 0; i < inst.cover.classes.size(); ++i) {
      CHECK(inst.cover.classes[i].name == again.cover.classes[i].name);
      CHECK(inst.cover.classes[i].budget == again.cover.classes[i].budget);
      CHECK(inst.cover.classes[i].activities ==
            again.cover.classes[i].activities);
    }
  }
  InstanceParams bad;
  bad.min_activities = 0;
  CHECK_THROWS_AS(random_instance(bad), Error);
}
