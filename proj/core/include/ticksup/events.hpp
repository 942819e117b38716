#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ticksup/errors.hpp"

namespace ticksup {

using EventId = std::uint32_t;

struct EventInfo {
  std::string name;
  bool forcible = false;      // can preempt the clock event
  bool prohibitible = false;  // can be disabled by a supervisor
};

// Alphabet shared by every automaton of one system: the declared activity
// events plus the implicit clock event `tick`, which always occupies the
// last slot. Tables are built up front and treated as immutable once any
// automaton refers to them.
class EventTable {
 public:
  static constexpr const char* kTickName = "tick";

  EventId add(const std::string& name, bool forcible, bool prohibitible) {
    if (name.empty()) throw Error("event name must be nonempty");
    if (name == kTickName)
      throw Error("'tick' is reserved and may not be declared");
    if (find(name)) throw Error("duplicate event '" + name + "'");
    activity_.push_back(EventInfo{name, forcible, prohibitible});
    return static_cast<EventId>(activity_.size() - 1);
  }

  // Count including tick.
  std::size_t size() const { return activity_.size() + 1; }
  std::size_t activity_count() const { return activity_.size(); }

  EventId tick() const { return static_cast<EventId>(activity_.size()); }
  bool is_tick(EventId e) const { return e == tick(); }

  const std::string& name(EventId e) const {
    static const std::string tick_name = kTickName;
    check(e);
    return is_tick(e) ? tick_name : activity_[e].name;
  }

  bool forcible(EventId e) const {
    check(e);
    return !is_tick(e) && activity_[e].forcible;
  }

  bool prohibitible(EventId e) const {
    check(e);
    return !is_tick(e) && activity_[e].prohibitible;
  }

  // The controllable events are the prohibitible ones plus tick; everything
  // else is uncontrollable.
  bool controllable(EventId e) const { return is_tick(e) || prohibitible(e); }

  std::optional<EventId> find(const std::string& name) const {
    if (name == kTickName) return tick();
    for (std::size_t i = 0; i < activity_.size(); ++i)
      if (activity_[i].name == name) return static_cast<EventId>(i);
    return std::nullopt;
  }

  EventId require(const std::string& name) const {
    auto e = find(name);
    if (!e) throw Error("unknown event '" + name + "'");
    return *e;
  }

  friend bool operator==(const EventTable& a, const EventTable& b) {
    if (a.activity_.size() != b.activity_.size()) return false;
    for (std::size_t i = 0; i < a.activity_.size(); ++i) {
      const EventInfo& x = a.activity_[i];
      const EventInfo& y = b.activity_[i];
      if (x.name != y.name || x.forcible != y.forcible ||
          x.prohibitible != y.prohibitible)
        return false;
    }
    return true;
  }
  friend bool operator!=(const EventTable& a, const EventTable& b) {
    return !(a == b);
  }

 private:
  void check(EventId e) const {
    if (e >= size()) throw Error("event id out of range");
  }

  std::vector<EventInfo> activity_;
};

}  // namespace ticksup
