#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ticksup/automaton.hpp"
#include "ticksup/events.hpp"

namespace ticksup {

using ActivityId = std::uint32_t;

// Delay window of one activity event: the event may occur between `lower`
// and `upper` ticks after it last became enabled, and must occur (or be
// preempted) by `upper` when that bound is finite.
struct TimerBound {
  unsigned lower = 0;
  bool finite = true;
  unsigned upper = 0;

  static TimerBound bounded(unsigned lower, unsigned upper) {
    return TimerBound{lower, true, upper};
  }
  static TimerBound unbounded(unsigned lower) {
    return TimerBound{lower, false, 0};
  }

  // Initial countdown value: ticks remaining until the deadline, or until
  // the window opens when there is none.
  unsigned default_timer() const { return finite ? upper : lower; }

  friend bool operator==(const TimerBound& a, const TimerBound& b) {
    return a.lower == b.lower && a.finite == b.finite &&
           (!a.finite || a.upper == b.upper);
  }
};

struct ActivityInfo {
  std::string name;
  bool marked = false;
};

// Untimed activity graph plus one timer bound per activity event. Compiling
// it (build_ttg) yields the tick automaton the rest of the toolkit works on.
class ActivityModel {
 public:
  ActivityModel(std::shared_ptr<const EventTable> table,
                std::vector<TimerBound> bounds)
      : table_(std::move(table)), bounds_(std::move(bounds)) {
    if (!table_) throw Error("activity model requires an event table");
    if (bounds_.size() != table_->activity_count())
      throw Error("one timer bound per activity event required");
    for (std::size_t i = 0; i < bounds_.size(); ++i)
      if (bounds_[i].finite && bounds_[i].lower > bounds_[i].upper)
        throw Error("event '" + table_->name(static_cast<EventId>(i)) +
                    "': lower bound exceeds upper bound");
  }

  const EventTable& events() const { return *table_; }
  const std::shared_ptr<const EventTable>& events_ptr() const {
    return table_;
  }
  const TimerBound& bound(EventId e) const {
    if (e >= bounds_.size()) throw Error("no timer bound for this event");
    return bounds_[e];
  }

  ActivityId add_activity(const std::string& name, bool marked) {
    if (name.empty()) throw Error("activity name must be nonempty");
    if (find_activity(name) != kNoActivity)
      throw Error("duplicate activity '" + name + "'");
    activities_.push_back(ActivityInfo{name, marked});
    edges_.emplace_back();
    return static_cast<ActivityId>(activities_.size() - 1);
  }

  static constexpr ActivityId kNoActivity = static_cast<ActivityId>(-1);

  ActivityId find_activity(const std::string& name) const {
    for (std::size_t i = 0; i < activities_.size(); ++i)
      if (activities_[i].name == name) return static_cast<ActivityId>(i);
    return kNoActivity;
  }

  std::size_t activity_count() const { return activities_.size(); }
  const ActivityInfo& activity(ActivityId a) const {
    check(a);
    return activities_[a];
  }

  void set_initial(ActivityId a) {
    check(a);
    initial_ = a;
  }
  ActivityId initial() const { return initial_; }

  void add_transition(ActivityId src, EventId e, ActivityId dst) {
    check(src);
    check(dst);
    if (e >= table_->activity_count())
      throw Error("activity transitions use activity events only");
    auto& out = edges_[src];
    auto it = out.begin();
    while (it != out.end() && it->event < e) ++it;
    if (it != out.end() && it->event == e) {
      if (it->target == dst) return;
      throw Error("conflicting transition on '" + table_->name(e) +
                  "' from activity '" + activities_[src].name + "'");
    }
    out.insert(it, Transition{e, dst});
  }

  const std::vector<Transition>& transitions_from(ActivityId a) const {
    check(a);
    return edges_[a];
  }

  // Target activity, kNoActivity when e is not defined at a.
  ActivityId step(ActivityId a, EventId e) const {
    check(a);
    for (const Transition& t : edges_[a]) {
      if (t.event == e) return t.target;
      if (t.event > e) break;
    }
    return kNoActivity;
  }

 private:
  void check(ActivityId a) const {
    if (a >= activities_.size()) throw Error("activity id out of range");
  }

  std::shared_ptr<const EventTable> table_;
  std::vector<TimerBound> bounds_;
  std::vector<ActivityInfo> activities_;
  std::vector<std::vector<Transition>> edges_;
  ActivityId initial_ = kNoActivity;
};

}  // namespace ticksup
