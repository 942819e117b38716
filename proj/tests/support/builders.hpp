#pragma once

// Small helpers for assembling automata and event strings in tests.

#include <initializer_list>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "ticksup/automaton.hpp"
#include "ticksup/events.hpp"

namespace ticksup::test {

struct EventSpec {
  std::string name;
  bool forcible = false;
  bool prohibitible = false;
};

inline std::shared_ptr<const EventTable> make_table(
    std::initializer_list<EventSpec> events) {
  auto t = std::make_shared<EventTable>();
  for (const auto& e : events) t->add(e.name, e.forcible, e.prohibitible);
  return t;
}

// States are created on first mention; the first state named becomes the
// initial state unless overridden.
class Builder {
 public:
  explicit Builder(std::shared_ptr<const EventTable> table)
      : table_(std::move(table)), a_(table_) {}

  StateId st(const std::string& name, bool marked = false,
             const std::string& activity = "") {
    StateId q = a_.find_state(name);
    if (q == kNoState) {
      q = a_.add_state(State{name, marked, activity, -1});
      if (a_.initial() == kNoState) a_.set_initial(q);
    } else {
      if (marked) a_.set_marked(q, true);
      if (!activity.empty()) a_.set_activity(q, activity);
    }
    return q;
  }

  Builder& tr(const std::string& src, const std::string& event,
              const std::string& dst) {
    StateId s = st(src);
    StateId d = st(dst);
    a_.add_transition(s, table_->require(event), d);
    return *this;
  }

  Builder& mark(const std::string& name) {
    st(name, true);
    return *this;
  }

  Builder& initial(const std::string& name) {
    a_.set_initial(st(name));
    return *this;
  }

  const Automaton& get() const { return a_; }
  Automaton take() { return std::move(a_); }

 private:
  std::shared_ptr<const EventTable> table_;
  Automaton a_;
};

// "tick a b" -> event id vector.
inline std::vector<EventId> evs(const EventTable& table,
                                const std::string& names) {
  std::vector<EventId> out;
  std::istringstream in(names);
  std::string tok;
  while (in >> tok) out.push_back(table.require(tok));
  return out;
}

}  // namespace ticksup::test
