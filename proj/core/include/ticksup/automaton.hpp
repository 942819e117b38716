#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "ticksup/events.hpp"

namespace ticksup {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = static_cast<StateId>(-1);

struct State {
  std::string name;
  bool marked = false;
  std::string activity;  // originating activity label, empty when untracked
  int counter = -1;      // tick-budget annotation, -1 when absent
};

struct Transition {
  EventId event;
  StateId target;
};

// Deterministic finite automaton over a shared event table. States are
// indexed densely; per-state transitions are kept sorted by event id so all
// traversals are order-deterministic. An automaton with no states at all is
// the distinguished empty automaton (its initial state is kNoState).
class Automaton {
 public:
  explicit Automaton(std::shared_ptr<const EventTable> table)
      : table_(std::move(table)) {
    if (!table_) throw Error("automaton requires an event table");
  }

  static Automaton empty(std::shared_ptr<const EventTable> table) {
    return Automaton(std::move(table));
  }

  const EventTable& events() const { return *table_; }
  const std::shared_ptr<const EventTable>& events_ptr() const {
    return table_;
  }

  bool is_empty() const { return states_.empty(); }
  std::size_t state_count() const { return states_.size(); }

  StateId add_state(State s) {
    if (s.name.empty()) throw Error("state name must be nonempty");
    if (find_state(s.name) != kNoState)
      throw Error("duplicate state '" + s.name + "'");
    StateId q = static_cast<StateId>(states_.size());
    index_.emplace(s.name, q);
    states_.push_back(std::move(s));
    edges_.emplace_back();
    return q;
  }

  const State& state(StateId q) const {
    check_state(q);
    return states_[q];
  }

  void set_marked(StateId q, bool marked) {
    check_state(q);
    states_[q].marked = marked;
  }
  void set_activity(StateId q, std::string activity) {
    check_state(q);
    states_[q].activity = std::move(activity);
  }
  void set_counter(StateId q, int counter) {
    check_state(q);
    states_[q].counter = counter;
  }

  StateId find_state(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? kNoState : it->second;
  }

  void set_initial(StateId q) {
    check_state(q);
    initial_ = q;
  }
  StateId initial() const { return initial_; }

  void add_transition(StateId src, EventId ev, StateId dst) {
    check_state(src);
    check_state(dst);
    if (ev >= table_->size()) throw Error("event id out of range");
    auto& out = edges_[src];
    auto it = out.begin();
    while (it != out.end() && it->event < ev) ++it;
    if (it != out.end() && it->event == ev) {
      if (it->target == dst) return;
      throw Error("conflicting transition on '" + table_->name(ev) +
                  "' from state '" + states_[src].name + "'");
    }
    out.insert(it, Transition{ev, dst});
  }

  const std::vector<Transition>& transitions_from(StateId q) const {
    check_state(q);
    return edges_[q];
  }

  // kNoState when the event is undefined at q.
  StateId target(StateId q, EventId ev) const {
    check_state(q);
    for (const Transition& t : edges_[q]) {
      if (t.event == ev) return t.target;
      if (t.event > ev) break;
    }
    return kNoState;
  }

  std::size_t transition_count() const {
    std::size_t n = 0;
    for (const auto& out : edges_) n += out.size();
    return n;
  }

  // Structural equality: same table content, states in the same order with
  // the same names, marks, annotations, and transitions.
  friend bool operator==(const Automaton& a, const Automaton& b) {
    if (*a.table_ != *b.table_) return false;
    if (a.initial_ != b.initial_) return false;
    if (a.states_.size() != b.states_.size()) return false;
    for (std::size_t i = 0; i < a.states_.size(); ++i) {
      const State& x = a.states_[i];
      const State& y = b.states_[i];
      if (x.name != y.name || x.marked != y.marked ||
          x.activity != y.activity || x.counter != y.counter)
        return false;
      if (a.edges_[i].size() != b.edges_[i].size()) return false;
      for (std::size_t j = 0; j < a.edges_[i].size(); ++j)
        if (a.edges_[i][j].event != b.edges_[i][j].event ||
            a.edges_[i][j].target != b.edges_[i][j].target)
          return false;
    }
    return true;
  }
  friend bool operator!=(const Automaton& a, const Automaton& b) {
    return !(a == b);
  }

 private:
  void check_state(StateId q) const {
    if (q >= states_.size())
      throw Error("state id " + std::to_string(q) + " out of range");
  }

  std::shared_ptr<const EventTable> table_;
  std::vector<State> states_;
  std::vector<std::vector<Transition>> edges_;
  std::unordered_map<std::string, StateId> index_;
  StateId initial_ = kNoState;
};

enum class VerdictCode {
  ok,
  blocking,              // reachable state cannot reach any marked state
  uncontrollable_event,  // eligible uncontrollable plant event is disabled
  tick_not_preemptable,  // tick disabled with no eligible forcible event
  class_unreachable,     // state cannot reach the class marker set
  class_cycle,           // cycle avoiding the marker set: unbounded delay
  budget_exceeded,       // marker set reachable only beyond the tick budget
  activity_loop,         // cycle without a tick
  language_difference,   // string in one closed language only
  marking_difference,    // string marked on one side only
};

const char* verdict_code_name(VerdictCode code);

// Outcome of a decision procedure. When the property fails, `witness` holds
// an event string that exhibits the violation and `anchor` the state (of the
// automaton under analysis) where it materializes.
struct Verdict {
  bool holds = true;
  VerdictCode code = VerdictCode::ok;
  std::vector<EventId> witness;
  StateId anchor = kNoState;
  std::string detail;

  explicit operator bool() const { return holds; }
};

std::string format_string(const EventTable& table,
                          const std::vector<EventId>& s);

}  // namespace ticksup
