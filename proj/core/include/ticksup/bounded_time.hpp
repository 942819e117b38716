#pragma once

#include <string>
#include <vector>

#include "ticksup/automaton.hpp"
#include "ticksup/control.hpp"

namespace ticksup {

// One completion requirement: the activities whose marked states count as
// completing this kind of task, and the number of ticks within which some
// completion must stay reachable. Budgets are at least 1.
struct CoverClass {
  std::string name;
  unsigned budget = 1;
  std::vector<std::string> activities;
};

// A family of classes whose resolved marker sets jointly cover the marked
// states of the automaton they are applied to.
struct MarkerCover {
  std::vector<CoverClass> classes;

  const CoverClass& require(const std::string& name) const;
};

// Marked states of `a` whose activity belongs to the class selector,
// ascending by id. Errors when the class resolves to nothing or its budget
// is zero.
std::vector<StateId> resolve_class(const Automaton& a, const CoverClass& cls);

// Full-cover validation: every class resolves nonempty and the union of the
// resolved classes is exactly the marked state set.
void check_cover(const Automaton& a, const MarkerCover& cover);

// Copy of trim(k) whose marking is cut down to the states that complete the
// given class of the plant: state marked iff it was marked in k and its
// plant counterpart lies in the class resolved against g. Activity labels
// are refreshed from the plant. Throws when trim(k)'s behavior (closed or
// marked) escapes the plant's.
Automaton restrict_marking(const Automaton& k, const Automaton& g,
                           const CoverClass& cls);

// Decides whether from every reachable state, each class marker set stays
// reachable, and every path that first enters it spends at most the class
// budget in ticks. Requires an activity-loop-free automaton (error
// otherwise). Violations come in three shapes: a state from which a class
// is unreachable, a cycle avoiding a class (its ticks can pump forever),
// and a completion path whose tick total exceeds the budget.
Verdict verify_bounded_time_nonblocking(const Automaton& a,
                                        const MarkerCover& cover);

enum class WorklistOrder { lifo, fifo };

struct BtcStats {
  std::string class_name;
  unsigned budget = 0;
  std::size_t base_states = 0;            // class-restricted recognizer size
  std::size_t visited_counter_states = 0; // never above base_states*(budget+1)
  std::size_t budget_cut_transitions = 0;
  bool emptied = false;
};

// Supremal sublanguage of L_m(k) whose every string, at every point, can
// still complete the class within its tick budget. Realized by pairing the
// class-restricted recognizer with a countdown of ticks spent since the
// last completion: tick edges that would overrun the budget are dropped,
// entering a completing state resets the count, and the first event after a
// completion is on the house. The result is trimmed, renumbered, and
// carries counter annotations.
Automaton sup_btc(const Automaton& g, const Automaton& k,
                  const CoverClass& cls,
                  WorklistOrder order = WorklistOrder::lifo,
                  BtcStats* stats = nullptr);

struct SynthesisPass {
  std::vector<BtcStats> classes;
  SupCStats supc;
  std::size_t states_after = 0;
};

struct SynthesisReport {
  std::size_t passes = 0;
  std::size_t pass_bound = 0;  // recognizer size times the budget product
  std::vector<SynthesisPass> pass_log;
  bool empty_result = false;
  bool controllable = false;
  bool bounded_time = false;
  std::size_t final_states = 0;
  std::size_t final_transitions = 0;
};

// Supremal controllable and bounded-time-complete sublanguage of
// L_m(e) intersected with L_m(g): alternates the per-class budget pruning
// with controllable-core extraction until the language stabilizes.
Automaton sup_cbtc(const Automaton& g, const Automaton& e,
                   const MarkerCover& cover,
                   WorklistOrder order = WorklistOrder::lifo,
                   SynthesisReport* report = nullptr);

}  // namespace ticksup
