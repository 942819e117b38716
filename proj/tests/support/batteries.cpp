#include "batteries.hpp"

#include <algorithm>

#include "lang_union.hpp"
#include "ticksup/bounded_time.hpp"
#include "ticksup/control.hpp"
#include "ticksup/operations.hpp"
#include "ticksup/testkit.hpp"

namespace ticksup::testsupport {
namespace {

// The class name quoted at the front of a violation detail.
std::string blamed_class(const std::string& detail) {
  std::size_t open = detail.find('\'');
  if (open == std::string::npos) return "";
  std::size_t close = detail.find('\'', open + 1);
  if (close == std::string::npos) return "";
  return detail.substr(open + 1, close - open - 1);
}

// Largest depth not above `target` at which the closed language of `a`
// still holds at most `cap` strings, so exhaustive comparison stays cheap
// on branchy instances.
std::size_t affordable_depth(const Automaton& a, std::size_t target,
                             std::size_t cap) {
  if (a.is_empty()) return target;
  std::vector<std::size_t> paths(a.state_count(), 0);
  paths[a.initial()] = 1;
  std::size_t total = 1;
  std::size_t depth = 0;
  while (depth < target) {
    std::vector<std::size_t> next(a.state_count(), 0);
    std::size_t layer = 0;
    for (StateId q = 0; q < a.state_count(); ++q) {
      if (paths[q] == 0) continue;
      for (const Transition& t : a.transitions_from(q)) {
        next[t.target] += paths[q];
        layer += paths[q];
      }
    }
    if (total + layer > cap) break;
    total += layer;
    paths = std::move(next);
    ++depth;
    if (layer == 0) break;
  }
  return depth;
}

void visit_bound(const BtcStats& st, std::uint64_t seed,
                 PropertyOutcome& out) {
  ++out.visit_bound_checks;
  std::size_t bound = st.base_states * (st.budget + 1);
  if (st.visited_counter_states > bound)
    out.failures.push_back("seed " + std::to_string(seed) + ": class '" +
                           st.class_name + "' visited " +
                           std::to_string(st.visited_counter_states) +
                           " counter states, above the bound " +
                           std::to_string(bound));
}

}  // namespace

DifferentialOutcome run_differential_battery(std::uint64_t seed_base,
                                             std::size_t count) {
  DifferentialOutcome out;
  for (std::size_t i = 0; i < count; ++i) {
    InstanceParams p;
    p.seed = seed_base + i;
    p.max_activities = 8;
    p.max_classes = 3;
    p.max_budget = 5;
    RandomInstance inst = random_instance(p);
    ++out.instances;
    auto fail = [&](const std::string& what) {
      out.failures.push_back("seed " + std::to_string(p.seed) + ": " + what);
    };

    Verdict ours = verify_bounded_time_nonblocking(inst.ttg, inst.cover);
    Verdict theirs = btc_oracle(inst.ttg, inst.cover);
    ++out.verdict_comparisons;
    ++(ours.holds ? out.verdicts_held : out.verdicts_failed);
    if (ours.holds != theirs.holds)
      fail("verifier says " + std::string(ours.holds ? "holds" : "fails") +
           ", oracle says " + (theirs.holds ? "holds" : "fails"));
    else if (!ours.holds &&
             blamed_class(ours.detail) != blamed_class(theirs.detail))
      fail("verifier blames '" + blamed_class(ours.detail) +
           "', oracle blames '" + blamed_class(theirs.detail) + "'");

    Automaton k = trim(product(inst.spec, inst.ttg));
    const CoverClass& cls = inst.cover.classes.front();
    BtcStats st;
    Automaton pruned = sup_btc(inst.ttg, k, cls, WorklistOrder::lifo, &st);
    std::size_t bound = st.base_states * (st.budget + 1);
    if (st.visited_counter_states > bound)
      fail("visited " + std::to_string(st.visited_counter_states) +
           " counter states, above the bound " + std::to_string(bound));

    std::size_t depth = affordable_depth(k, 10, 10000);
    auto expected = supremal_membership_oracle(inst.ttg, k, cls, depth);
    auto got = enumerate_closure_strings(pruned, depth);
    ++out.membership_comparisons;
    out.strings_compared += expected.size();
    if (expected != got)
      fail("membership oracle keeps " + std::to_string(expected.size()) +
           " strings at depth " + std::to_string(depth) +
           ", the pruned closure holds " + std::to_string(got.size()));
  }
  return out;
}

PropertyOutcome run_property_battery(std::uint64_t seed_base,
                                     std::size_t count) {
  PropertyOutcome out;
  for (std::size_t i = 0; i < count; ++i) {
    InstanceParams p;
    p.seed = seed_base + i;
    RandomInstance inst = random_instance(p);
    ++out.instances;
    auto fail = [&](const std::string& what) {
      out.failures.push_back("seed " + std::to_string(p.seed) + ": " + what);
    };

    Automaton gp = trim(inst.ttg);
    ControlContext ctx(gp);
    Automaton k = trim(product(inst.spec, gp));
    const CoverClass& cls = inst.cover.classes.front();

    BtcStats st1, st2;
    Automaton b1 = sup_btc(gp, k, cls, WorklistOrder::lifo, &st1);
    Automaton b2 = sup_btc(gp, gp, cls, WorklistOrder::lifo, &st2);
    visit_bound(st1, p.seed, out);
    visit_bound(st2, p.seed, out);

    Automaton c1 = sup_c(k, ctx);
    Automaton c2 = sup_c(b2, ctx);

    // Idempotence: each operator is a no-op on its own output.
    ++out.idempotence_checks;
    if (!language_equal(sup_c(c1, ctx), c1).holds)
      fail("sup_c is not idempotent");
    if (!language_equal(sup_btc(gp, b1, cls), b1).holds)
      fail("sup_btc is not idempotent");

    // Containment: outputs never stray outside their input.
    ++out.containment_checks;
    if (!language_subset(b1, k).holds) fail("sup_btc output escapes input");
    if (!language_subset(b2, gp).holds) fail("sup_btc output escapes plant");
    if (!language_subset(c1, k).holds) fail("sup_c output escapes input");

    // A bigger budget never keeps less.
    CoverClass wider = cls;
    wider.budget = cls.budget + 1;
    ++out.monotonicity_checks;
    if (!language_subset(b1, sup_btc(gp, k, wider)).holds)
      fail("raising the budget lost strings");

    // Union closure of budget-pruned languages: gluing two outputs still
    // completes the class within its budget from every state.
    Automaton ub = trim(language_union(b1, b2));
    if (!ub.is_empty()) {
      ++out.union_btc_checks;
      MarkerCover only{{cls}};
      if (!verify_bounded_time_nonblocking(ub, only).holds)
        fail("union of pruned outputs misses the deadline");
    }

    // Union closure of controllable languages.
    Automaton uc = trim(language_union(c1, c2));
    if (!uc.is_empty()) {
      ++out.union_control_checks;
      if (!is_controllable(uc, ctx).holds)
        fail("union of controllable outputs is uncontrollable");
    }

    // Full synthesis: pass bound, idempotence, containment, verdicts, and
    // independence from worklist order and class order.
    SynthesisReport rep;
    Automaton s = sup_cbtc(gp, inst.spec, inst.cover, WorklistOrder::lifo,
                           &rep);
    ++out.pass_bound_checks;
    if (rep.passes > rep.pass_bound)
      fail("synthesis took " + std::to_string(rep.passes) +
           " passes, above the bound " + std::to_string(rep.pass_bound));
    out.max_passes = std::max(out.max_passes, rep.passes);
    out.total_passes += rep.passes;
    for (const SynthesisPass& pass : rep.pass_log)
      for (const BtcStats& st : pass.classes)
        visit_bound(st, p.seed, out);

    ++out.order_checks;
    MarkerCover reversed = inst.cover;
    std::reverse(reversed.classes.begin(), reversed.classes.end());
    if (!language_equal(sup_cbtc(gp, inst.spec, reversed), s).holds)
      fail("synthesis depends on class order");
    if (!language_equal(
            sup_cbtc(gp, inst.spec, inst.cover, WorklistOrder::fifo), s)
             .holds)
      fail("synthesis depends on worklist order");

    if (!s.is_empty()) {
      ++out.idempotence_checks;
      if (!language_equal(sup_cbtc(gp, s, inst.cover), s).holds)
        fail("sup_cbtc is not idempotent");
      ++out.containment_checks;
      if (!language_subset(s, k).holds) fail("sup_cbtc escapes its input");
      if (!verify_bounded_time_nonblocking(s, inst.cover).holds)
        fail("synthesis result misses a deadline");
      if (!is_controllable(s, ctx).holds)
        fail("synthesis result is uncontrollable");
    }
  }
  return out;
}

}  // namespace ticksup::testsupport
