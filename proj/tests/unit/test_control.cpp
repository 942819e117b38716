#include "doctest.h"

#include "support/builders.hpp"
#include "ticksup/control.hpp"
#include "ticksup/operations.hpp"

using namespace ticksup;
using test::Builder;
using test::evs;
using test::make_table;

namespace {

// u: uncontrollable; c: prohibitible; f: forcible and prohibitible.
std::shared_ptr<const EventTable> ctl_table() {
  return make_table(
      {{"u", false, false}, {"c", false, true}, {"f", true, true}});
}

}  // namespace

TEST_CASE("control context insists on a trim plant") {
  auto t = ctl_table();
  Builder ok(t);
  ok.tr("p0", "c", "p1").mark("p0").mark("p1");
  CHECK_NOTHROW(ControlContext(ok.get()));

  Builder loose(t);
  loose.tr("p0", "c", "p1").mark("p0");  // p1 blocks
  CHECK_THROWS_AS(ControlContext(loose.get()), Error);
  CHECK_THROWS_AS(ControlContext(Automaton::empty(t)), Error);
}

TEST_CASE("eligible_events lists the defined events in table order") {
  auto t = ctl_table();
  Builder b(t);
  b.tr("p0", "f", "p1").tr("p0", "u", "p1").tr("p0", "tick", "p0").mark("p1");
  auto evts = eligible_events(b.get(), b.get().find_state("p0"));
  REQUIRE(evts.size() == 3);
  CHECK(t->name(evts[0]) == "u");
  CHECK(t->name(evts[1]) == "f");
  CHECK(t->name(evts[2]) == "tick");
  CHECK(eligible_events(b.get(), b.get().find_state("p1")).empty());
  CHECK_THROWS_AS(eligible_events(b.get(), 99), Error);
}

TEST_CASE("the plant is controllable with respect to itself") {
  auto t = ctl_table();
  Builder g(t);
  g.tr("p0", "u", "p1").tr("p0", "tick", "p0").tr("p1", "c", "p0");
  g.mark("p0");
  ControlContext ctx(g.get());
  CHECK(is_controllable(g.get(), ctx).holds);
  CHECK(is_controllable(Automaton::empty(t), ctx).holds);
}

TEST_CASE("severing an eligible uncontrollable event is detected") {
  auto t = ctl_table();
  Builder g(t);
  g.tr("p0", "c", "p1").tr("p1", "u", "p2").tr("p1", "c", "p0");
  g.mark("p0").mark("p1").mark("p2");
  ControlContext ctx(g.get());

  Builder k(t);
  k.tr("q0", "c", "q1").tr("q1", "c", "q0");  // drops u after c
  k.mark("q0").mark("q1");
  Verdict v = is_controllable(k.get(), ctx);
  REQUIRE_FALSE(v.holds);
  CHECK(v.code == VerdictCode::uncontrollable_event);
  CHECK(v.witness == evs(*t, "c u"));
  CHECK(k.get().state(v.anchor).name == "q1");
}

TEST_CASE("dropping tick needs an eligible forcible event") {
  auto t = ctl_table();
  Builder g(t);
  g.tr("p0", "tick", "p1").tr("p0", "f", "p2").tr("p0", "c", "p3");
  g.tr("p1", "c", "p2");
  g.mark("p2").mark("p3");
  ControlContext ctx(g.get());

  // Keeping the forcible branch lets the supervisor preempt the clock.
  Builder urgent(t);
  urgent.tr("q0", "f", "q1").mark("q1");
  CHECK(is_controllable(urgent.get(), ctx).holds);

  // Only a non-forcible branch left: the clock cannot be stopped.
  Builder lazy(t);
  lazy.tr("q0", "c", "q1").mark("q1");
  Verdict v = is_controllable(lazy.get(), ctx);
  REQUIRE_FALSE(v.holds);
  CHECK(v.code == VerdictCode::tick_not_preemptable);
  CHECK(v.witness == evs(*t, "tick"));
}

TEST_CASE("behavior outside the plant is rejected outright") {
  auto t = ctl_table();
  Builder g(t);
  g.tr("p0", "c", "p1").mark("p0").mark("p1");
  ControlContext ctx(g.get());
  Builder k(t);
  k.tr("q0", "f", "q1").mark("q1");
  CHECK_THROWS_AS(is_controllable(k.get(), ctx), Error);
}

TEST_CASE("sup_c prunes back to the controllable core") {
  auto t = ctl_table();
  Builder g(t);
  g.tr("p0", "c", "p1").tr("p1", "u", "p2").mark("p0").mark("p1").mark("p2");
  ControlContext ctx(g.get());

  // k keeps c but not the uncontrollable continuation: only the empty
  // string survives.
  Builder k(t);
  k.tr("q0", "c", "q1").mark("q0").mark("q1");
  SupCStats stats;
  Automaton out = sup_c(k.get(), ctx, &stats);
  REQUIRE_FALSE(out.is_empty());
  CHECK(out.state_count() == 1);
  CHECK(out.state(out.initial()).marked);
  CHECK(stats.states_removed >= 1);
  CHECK(is_controllable(out, ctx).holds);
  CHECK(language_subset(out, k.get()).holds);
}

TEST_CASE("sup_c leaves controllable behavior untouched") {
  auto t = ctl_table();
  Builder g(t);
  g.tr("p0", "c", "p1").tr("p1", "u", "p2").mark("p0").mark("p1").mark("p2");
  ControlContext ctx(g.get());
  Builder k(t);
  k.tr("q0", "c", "q1").tr("q1", "u", "q2").mark("q0").mark("q1").mark("q2");
  Automaton out = sup_c(k.get(), ctx);
  CHECK(language_equal(out, k.get()).holds);
  CHECK(language_equal(sup_c(out, ctx), out).holds);  // idempotent
}

TEST_CASE("sup_c empties out when the initial state is indefensible") {
  auto t = ctl_table();
  Builder g(t);
  g.tr("p0", "u", "p1").mark("p0").mark("p1");
  ControlContext ctx(g.get());
  Builder k(t);
  k.mark("q0");
  Automaton out = sup_c(k.get(), ctx);
  CHECK(out.is_empty());
  CHECK(is_controllable(out, ctx).holds);  // trivially
}

TEST_CASE("uncontrollability cascades through the clock") {
  auto t = ctl_table();
  Builder g(t);
  g.tr("p0", "tick", "p1").tr("p1", "u", "p2").tr("p0", "c", "p3");
  g.mark("p0").mark("p1").mark("p2").mark("p3");
  ControlContext ctx(g.get());

  // k drops u after one tick. The tick state dies, and without a forcible
  // alternative at the root the whole language collapses.
  Builder k(t);
  k.tr("q0", "tick", "q1").tr("q0", "c", "q2");
  k.mark("q0").mark("q1").mark("q2");
  Automaton out = sup_c(k.get(), ctx);
  CHECK(out.is_empty());
}

TEST_CASE("sup_c keeps a forced departure") {
  auto t = ctl_table();
  Builder g(t);
  g.tr("p0", "tick", "p1").tr("p0", "f", "p2").tr("p1", "u", "p3");
  g.mark("p0").mark("p1").mark("p2").mark("p3");
  ControlContext ctx(g.get());
  Builder k(t);
  k.tr("q0", "f", "q1").mark("q0").mark("q1");
  Automaton out = sup_c(k.get(), ctx);
  CHECK(language_equal(out, k.get()).holds);
}
