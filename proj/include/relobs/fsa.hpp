#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <vector>

#include "relobs/alphabet.hpp"
#include "relobs/errors.hpp"

namespace relobs {

struct Transition {
    StateId from = 0;
    EventId event = 0;
    StateId to = 0;

    friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// A finite-state recognizer over an Alphabet. States are 0..state_count-1.
/// The transition relation may be nondeterministic or partial; determinize()
/// and minimize() below normalize it. A word is accepted when some run from
/// the initial state ends in a marked state; the recognized language is the
/// set of accepted (marked) words.
class Fsa {
public:
    Fsa(Alphabet alphabet, std::uint32_t state_count, StateId initial,
        const std::vector<StateId>& marked, std::vector<Transition> transitions)
        : alphabet_(std::move(alphabet)),
          state_count_(state_count),
          initial_(initial),
          marked_(state_count, false),
          transitions_(std::move(transitions)) {
        if (state_count_ == 0)
            throw ValidationError("fsa: automaton needs at least one state");
        if (initial_ >= state_count_)
            throw ValidationError("fsa: initial state out of range");
        for (StateId s : marked) {
            if (s >= state_count_)
                throw ValidationError("fsa: marked state out of range");
            marked_[s] = true;
        }
        for (const Transition& t : transitions_) {
            if (t.from >= state_count_ || t.to >= state_count_)
                throw ValidationError("fsa: transition endpoint out of range");
            if (t.event >= alphabet_.size())
                throw ValidationError("fsa: transition event out of range");
        }
        std::sort(transitions_.begin(), transitions_.end());
        transitions_.erase(std::unique(transitions_.begin(), transitions_.end()),
                           transitions_.end());
    }

    const Alphabet& alphabet() const { return alphabet_; }
    std::uint32_t state_count() const { return state_count_; }
    StateId initial() const { return initial_; }
    bool marked(StateId s) const { return marked_.at(s); }
    const std::vector<Transition>& transitions() const { return transitions_; }

    std::vector<StateId> marked_states() const {
        std::vector<StateId> out;
        for (StateId s = 0; s < state_count_; ++s)
            if (marked_[s])
                out.push_back(s);
        return out;
    }

    /// At most one successor per (state, event) pair.
    bool deterministic() const {
        for (std::size_t i = 1; i < transitions_.size(); ++i)
            if (transitions_[i].from == transitions_[i - 1].from &&
                transitions_[i].event == transitions_[i - 1].event)
                return false;
        return true;
    }

    /// At least one successor per (state, event) pair.
    bool complete() const {
        std::vector<bool> seen(std::size_t(state_count_) * alphabet_.size(), false);
        for (const Transition& t : transitions_)
            seen[std::size_t(t.from) * alphabet_.size() + t.event] = true;
        return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    }

private:
    Alphabet alphabet_;
    std::uint32_t state_count_;
    StateId initial_;
    std::vector<bool> marked_;
    std::vector<Transition> transitions_;
};

namespace detail {

/// Deterministic complete automaton with a dense transition table:
/// next[s * |Sigma| + e] is the unique successor. The canonical form used by
/// Lang additionally requires initial == 0 and states numbered in BFS
/// discovery order (events explored in id order), which makes structural
/// equality decide language equality once the table is minimal.
struct Dense {
    Alphabet alphabet;
    std::uint32_t state_count = 1;
    StateId initial = 0;
    std::vector<StateId> next;  // state_count * alphabet.size()
    std::vector<bool> marked;   // state_count

    StateId step(StateId s, EventId e) const {
        return next[std::size_t(s) * alphabet.size() + e];
    }

    friend bool operator==(const Dense&, const Dense&) = default;
};

inline Dense to_dense(const Fsa& f) {
    if (!f.deterministic())
        throw ValidationError("fsa: expected a deterministic automaton");
    if (!f.complete())
        throw ValidationError("fsa: expected a complete automaton");
    Dense d;
    d.alphabet = f.alphabet();
    d.state_count = f.state_count();
    d.initial = f.initial();
    d.next.assign(std::size_t(d.state_count) * d.alphabet.size(), 0);
    d.marked.assign(d.state_count, false);
    for (const Transition& t : f.transitions())
        d.next[std::size_t(t.from) * d.alphabet.size() + t.event] = t.to;
    for (StateId s = 0; s < d.state_count; ++s)
        d.marked[s] = f.marked(s);
    return d;
}

inline Fsa to_fsa(const Dense& d) {
    std::vector<Transition> trans;
    trans.reserve(d.next.size());
    for (StateId s = 0; s < d.state_count; ++s)
        for (EventId e = 0; e < d.alphabet.size(); ++e)
            trans.push_back({s, e, d.step(s, e)});
    std::vector<StateId> marked;
    for (StateId s = 0; s < d.state_count; ++s)
        if (d.marked[s])
            marked.push_back(s);
    return Fsa(d.alphabet, d.state_count, d.initial, marked, std::move(trans));
}

/// Renumbers states in BFS discovery order from the initial state, events
/// explored in id order. Unreachable states are dropped. The result has
/// initial == 0 and a numbering that depends only on the recognized
/// structure, not on the input numbering.
inline Dense bfs_renumber(const Dense& d) {
    const std::size_t k = d.alphabet.size();
    std::vector<StateId> newid(d.state_count, UINT32_MAX);
    std::vector<StateId> order;
    order.reserve(d.state_count);
    newid[d.initial] = 0;
    order.push_back(d.initial);
    for (std::size_t head = 0; head < order.size(); ++head) {
        StateId s = order[head];
        for (EventId e = 0; e < k; ++e) {
            StateId t = d.step(s, e);
            if (newid[t] == UINT32_MAX) {
                newid[t] = static_cast<StateId>(order.size());
                order.push_back(t);
            }
        }
    }
    Dense out;
    out.alphabet = d.alphabet;
    out.state_count = static_cast<std::uint32_t>(order.size());
    out.initial = 0;
    out.next.assign(order.size() * k, 0);
    out.marked.assign(order.size(), false);
    for (StateId ns = 0; ns < order.size(); ++ns) {
        StateId s = order[ns];
        out.marked[ns] = d.marked[s];
        for (EventId e = 0; e < k; ++e)
            out.next[std::size_t(ns) * k + e] = newid[d.step(s, e)];
    }
    return out;
}

/// Merges language-equivalent states (Moore partition refinement). Expects
/// every state reachable; run bfs_renumber first when in doubt.
inline Dense minimize_dense(const Dense& d) {
    const std::size_t k = d.alphabet.size();
    const std::uint32_t n = d.state_count;
    std::vector<std::uint32_t> part(n);
    std::uint32_t blocks = 0;
    {
        // Seed the partition with marked/unmarked, ids by first occurrence.
        std::uint32_t ids[2] = {UINT32_MAX, UINT32_MAX};
        for (StateId s = 0; s < n; ++s) {
            int key = d.marked[s] ? 1 : 0;
            if (ids[key] == UINT32_MAX)
                ids[key] = blocks++;
            part[s] = ids[key];
        }
    }
    for (;;) {
        std::map<std::vector<std::uint32_t>, std::uint32_t> sig_ids;
        std::vector<std::uint32_t> next_part(n);
        std::vector<std::uint32_t> sig(k + 1);
        std::uint32_t next_blocks = 0;
        for (StateId s = 0; s < n; ++s) {
            sig[0] = part[s];
            for (EventId e = 0; e < k; ++e)
                sig[e + 1] = part[d.step(s, e)];
            auto [it, fresh] = sig_ids.emplace(sig, next_blocks);
            if (fresh)
                ++next_blocks;
            next_part[s] = it->second;
        }
        if (next_blocks == blocks)
            break;
        part = std::move(next_part);
        blocks = next_blocks;
    }
    Dense out;
    out.alphabet = d.alphabet;
    out.state_count = blocks;
    out.initial = part[d.initial];
    out.next.assign(std::size_t(blocks) * k, 0);
    out.marked.assign(blocks, false);
    for (StateId s = 0; s < n; ++s) {
        out.marked[part[s]] = d.marked[s];
        for (EventId e = 0; e < k; ++e)
            out.next[std::size_t(part[s]) * k + e] = part[d.step(s, e)];
    }
    return out;
}

/// Minimal automaton in canonical numbering; the entry point every Lang
/// construction funnels through.
inline Dense canonical(const Dense& d) {
    return bfs_renumber(minimize_dense(bfs_renumber(d)));
}

/// States from which some marked state is reachable.
inline std::vector<bool> coreachable(const Dense& d) {
    const std::size_t k = d.alphabet.size();
    std::vector<std::vector<StateId>> rev(d.state_count);
    for (StateId s = 0; s < d.state_count; ++s)
        for (EventId e = 0; e < k; ++e)
            rev[d.step(s, e)].push_back(s);
    std::vector<bool> live(d.state_count, false);
    std::vector<StateId> stack;
    for (StateId s = 0; s < d.state_count; ++s)
        if (d.marked[s]) {
            live[s] = true;
            stack.push_back(s);
        }
    while (!stack.empty()) {
        StateId s = stack.back();
        stack.pop_back();
        for (StateId p : rev[s])
            if (!live[p]) {
                live[p] = true;
                stack.push_back(p);
            }
    }
    return live;
}

/// Subset construction with event relabeling and silent moves. The result
/// recognizes the image of the input's marked language under the map that
/// erases silent events and renames out_to_src[e] to e; with no silent
/// events and the identity map this is plain determinization. Events in the
/// output alphabet must not be silent. The result is deterministic, complete,
/// all-reachable, and BFS-numbered by construction.
inline Dense subset_construct(const Fsa& a, const std::vector<bool>& silent,
                              const Alphabet& out_alphabet,
                              const std::vector<EventId>& out_to_src) {
    const std::size_t k = out_alphabet.size();
    std::vector<std::vector<std::pair<EventId, StateId>>> adj(a.state_count());
    for (const Transition& t : a.transitions())
        adj[t.from].push_back({t.event, t.to});

    std::vector<bool> in_set(a.state_count(), false);
    auto close = [&](std::vector<StateId>& set) {
        std::fill(in_set.begin(), in_set.end(), false);
        std::vector<StateId> stack(set);
        for (StateId s : set)
            in_set[s] = true;
        while (!stack.empty()) {
            StateId s = stack.back();
            stack.pop_back();
            for (auto [e, t] : adj[s])
                if (silent[e] && !in_set[t]) {
                    in_set[t] = true;
                    stack.push_back(t);
                }
        }
        set.clear();
        for (StateId s = 0; s < a.state_count(); ++s)
            if (in_set[s])
                set.push_back(s);
    };

    std::map<std::vector<StateId>, StateId> ids;
    std::vector<std::vector<StateId>> subsets;
    auto intern = [&](std::vector<StateId> set) {
        auto [it, fresh] = ids.emplace(std::move(set), static_cast<StateId>(subsets.size()));
        if (fresh)
            subsets.push_back(it->first);
        return it->second;
    };

    std::vector<StateId> start{a.initial()};
    close(start);
    intern(std::move(start));

    Dense out;
    out.alphabet = out_alphabet;
    out.initial = 0;
    for (std::size_t head = 0; head < subsets.size(); ++head) {
        std::vector<StateId> current = subsets[head];  // copy: subsets may grow
        for (EventId oe = 0; oe < k; ++oe) {
            EventId src = out_to_src[oe];
            std::vector<StateId> targets;
            for (StateId s : current)
                for (auto [e, t] : adj[s])
                    if (e == src)
                        targets.push_back(t);
            std::sort(targets.begin(), targets.end());
            targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
            close(targets);
            out.next.push_back(intern(std::move(targets)));
        }
    }
    out.state_count = static_cast<std::uint32_t>(subsets.size());
    out.marked.assign(out.state_count, false);
    for (StateId id = 0; id < out.state_count; ++id)
        for (StateId s : subsets[id])
            if (a.marked(s)) {
                out.marked[id] = true;
                break;
            }
    return out;
}

} // namespace detail

/// Equivalent deterministic complete automaton via subset construction.
inline Fsa determinize(const Fsa& a) {
    std::vector<bool> silent(a.alphabet().size(), false);
    std::vector<EventId> identity(a.alphabet().size());
    std::iota(identity.begin(), identity.end(), 0);
    return detail::to_fsa(detail::subset_construct(a, silent, a.alphabet(), identity));
}

/// Minimal equivalent automaton. Requires a deterministic complete input;
/// determinize() first when the input may not satisfy that.
inline Fsa minimize(const Fsa& a) {
    return detail::to_fsa(detail::canonical(detail::to_dense(a)));
}

} // namespace relobs
