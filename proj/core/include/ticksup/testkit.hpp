#pragma once

#include <cstdint>
#include <vector>

#include "ticksup/activity_model.hpp"
#include "ticksup/automaton.hpp"
#include "ticksup/bounded_time.hpp"

namespace ticksup {

// Reference checks and seeded instance generation for cross-examining the
// production algorithms. Everything here favors obviousness over speed and
// shares no traversal machinery with the code it is meant to check.

// Same question as verify_bounded_time_nonblocking, answered by per-state
// forward searches instead of one global pass: from every reachable state,
// each class must be reachable at all, and no completion-free path may
// accumulate more ticks than the class budget. Agreement is on the overall
// answer and the failing class; the reported shape and witness may differ.
Verdict btc_oracle(const Automaton& a, const MarkerCover& cover);

// Every string of the closed language up to the given length, in order of
// length and, within a length, transition order. Empty for the empty
// automaton; otherwise the empty string comes first.
std::vector<std::vector<EventId>> enumerate_closure_strings(
    const Automaton& a, std::size_t max_len);

// The strings of length at most max_len that the supremal budget-pruned
// sublanguage of L_m(k) keeps in its closure, decided string by string: a
// string survives when each of its prefixes leaves the completion of the
// class affordable (fewest remaining ticks plus ticks already spent stay
// within the budget). Must coincide with enumerating the closure of the
// sup_btc result.
std::vector<std::vector<EventId>> supremal_membership_oracle(
    const Automaton& g, const Automaton& k, const CoverClass& cls,
    std::size_t max_len);

// Copy of `a` whose marking is the union of the resolved cover classes.
Automaton union_recognizer(const Automaton& a, const MarkerCover& cover);

struct InstanceParams {
  std::uint64_t seed = 0;
  unsigned min_activities = 2;
  unsigned max_activities = 5;
  unsigned min_events = 1;
  unsigned max_events = 4;
  unsigned max_upper = 3;      // widest finite delay window
  unsigned max_classes = 2;
  unsigned max_budget = 4;
  unsigned max_spec_states = 3;
};

struct RandomInstance {
  ActivityModel model;
  Automaton ttg;    // the compiled model
  Automaton spec;   // all states marked, over the same event table
  MarkerCover cover;  // partitions the activities marked in the tick automaton
};

// Seed-determined instance: an activity graph grown from a spanning tree
// (cycle-closing edges only carry events with a nonzero lower bound, which
// keeps the compiled automaton activity-loop-free), a random all-marked
// spec automaton, and a cover partitioning the marked activities. The same
// parameters always produce the same instance.
RandomInstance random_instance(const InstanceParams& p);

}  // namespace ticksup
