#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "relobs/errors.hpp"

namespace relobs {

using EventId = std::uint32_t;
using StateId = std::uint32_t;

/// A string over an alphabet, stored as event ids. The empty word is epsilon.
using Word = std::vector<EventId>;

struct Event {
    std::string name;
    bool observable = true;
    bool controllable = true;

    friend bool operator==(const Event&, const Event&) = default;
};

/// The event set shared by every language in a problem instance. Each event
/// carries its observability and controllability flags, so the observable and
/// uncontrollable subsets are induced rather than stored separately.
///
/// An alphabet built from an explicit event list must be nonempty. The empty
/// alphabet exists only as the image of a projection that erases every event;
/// it is obtained via the default constructor or observable_subset().
class Alphabet {
public:
    Alphabet() = default;

    explicit Alphabet(std::vector<Event> events) {
        if (events.empty())
            throw ValidationError("alphabet: event list is empty");
        assign(std::move(events));
    }

    std::size_t size() const { return events_.size(); }
    bool empty() const { return events_.empty(); }

    const Event& event(EventId id) const { return events_.at(id); }
    const std::vector<Event>& events() const { return events_; }

    std::optional<EventId> find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    /// Like find() but throws when the event does not exist.
    EventId require(const std::string& name) const {
        auto id = find(name);
        if (!id)
            throw ValidationError("alphabet: unknown event '" + name + "'");
        return *id;
    }

    std::vector<EventId> observable_ids() const {
        return ids_where([](const Event& e) { return e.observable; });
    }
    std::vector<EventId> unobservable_ids() const {
        return ids_where([](const Event& e) { return !e.observable; });
    }
    std::vector<EventId> uncontrollable_ids() const {
        return ids_where([](const Event& e) { return !e.controllable; });
    }

    /// The sub-alphabet of observable events, in the same relative order.
    /// May be empty when no event is observable.
    Alphabet observable_subset() const {
        std::vector<Event> obs;
        for (const Event& e : events_)
            if (e.observable)
                obs.push_back(e);
        Alphabet a;
        if (!obs.empty())
            a.assign(std::move(obs));
        return a;
    }

    /// Position of an event in the name-sorted order. Words compare
    /// length-first, then lexicographically by these ranks, so enumeration
    /// output is independent of the declaration order of events.
    std::uint32_t name_rank(EventId id) const { return name_rank_.at(id); }

    bool word_less(const Word& a, const Word& b) const {
        if (a.size() != b.size())
            return a.size() < b.size();
        for (std::size_t i = 0; i < a.size(); ++i)
            if (name_rank_[a[i]] != name_rank_[b[i]])
                return name_rank_[a[i]] < name_rank_[b[i]];
        return false;
    }

    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        return a.events_ == b.events_;
    }

private:
    void assign(std::vector<Event> events) {
        events_ = std::move(events);
        index_.clear();
        for (EventId id = 0; id < events_.size(); ++id) {
            const std::string& name = events_[id].name;
            if (name.empty())
                throw ValidationError("alphabet: empty event name");
            for (unsigned char ch : name)
                if (std::isspace(ch) != 0 || std::isprint(ch) == 0)
                    throw ValidationError("alphabet: event name '" + name +
                                          "' must be printable and contain no whitespace");
            if (!index_.emplace(name, id).second)
                throw ValidationError("alphabet: duplicate event name '" + name + "'");
        }
        std::vector<EventId> order(events_.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](EventId x, EventId y) {
            return events_[x].name < events_[y].name;
        });
        name_rank_.assign(events_.size(), 0);
        for (std::uint32_t pos = 0; pos < order.size(); ++pos)
            name_rank_[order[pos]] = pos;
    }

    template <class Pred>
    std::vector<EventId> ids_where(Pred pred) const {
        std::vector<EventId> out;
        for (EventId id = 0; id < events_.size(); ++id)
            if (pred(events_[id]))
                out.push_back(id);
        return out;
    }

    std::vector<Event> events_;
    std::unordered_map<std::string, EventId> index_;
    std::vector<std::uint32_t> name_rank_;
};

/// Renders a word as space-separated event names; epsilon prints as "eps".
inline std::string format_word(const Alphabet& alphabet, const Word& word) {
    if (word.empty())
        return "eps";
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i > 0)
            out += ' ';
        out += alphabet.event(word[i]).name;
    }
    return out;
}

} // namespace relobs
