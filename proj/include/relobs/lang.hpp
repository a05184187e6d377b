#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <vector>

#include "relobs/alphabet.hpp"
#include "relobs/errors.hpp"
#include "relobs/finite_lang.hpp"
#include "relobs/fsa.hpp"

namespace relobs {

/// A regular language in canonical form: the minimal complete deterministic
/// recognizer with initial state 0 and states numbered in BFS discovery
/// order. Two Lang values are structurally identical iff they recognize the
/// same language over the same alphabet, so equality tests are O(table size)
/// comparisons. state_count() doubles as the language's size measure.
class Lang {
public:
    static Lang empty(Alphabet alphabet) {
        return Lang(single_state(std::move(alphabet), false));
    }

    static Lang universal(Alphabet alphabet) {
        return Lang(single_state(std::move(alphabet), true));
    }

    /// Canonicalizes an arbitrary recognizer (nondeterministic or partial
    /// inputs are determinized first).
    static Lang from_fsa(const Fsa& f) {
        if (f.deterministic() && f.complete())
            return Lang(detail::canonical(detail::to_dense(f)));
        std::vector<bool> silent(f.alphabet().size(), false);
        std::vector<EventId> identity(f.alphabet().size());
        std::iota(identity.begin(), identity.end(), 0);
        return Lang(detail::canonical(
            detail::subset_construct(f, silent, f.alphabet(), identity)));
    }

    /// The finite language consisting of exactly the given words.
    static Lang from_words(Alphabet alphabet, const std::vector<Word>& words) {
        for (const Word& w : words)
            for (EventId e : w)
                if (e >= alphabet.size())
                    throw ValidationError("language: event id out of range in word");
        // Build a trie and canonicalize it.
        std::vector<std::map<EventId, StateId>> children(1);
        std::vector<StateId> marked;
        for (const Word& w : words) {
            StateId node = 0;
            for (EventId e : w) {
                auto it = children[node].find(e);
                if (it == children[node].end()) {
                    StateId fresh = static_cast<StateId>(children.size());
                    children[node].emplace(e, fresh);
                    children.emplace_back();
                    node = fresh;
                } else {
                    node = it->second;
                }
            }
            marked.push_back(node);
        }
        std::vector<Transition> trans;
        for (StateId s = 0; s < children.size(); ++s)
            for (auto [e, t] : children[s])
                trans.push_back({s, e, t});
        return from_fsa(Fsa(std::move(alphabet), static_cast<std::uint32_t>(children.size()),
                            0, marked, std::move(trans)));
    }

    static Lang from_finite(const FiniteLang& f) {
        return from_words(f.alphabet(), f.words());
    }

    /// Wraps a table that is already canonical (minimal, BFS-numbered,
    /// initial 0). Intended for the operator implementations in this library.
    static Lang from_canonical(detail::Dense d) { return Lang(std::move(d)); }

    const Alphabet& alphabet() const { return dfa_.alphabet; }

    /// Number of states of the canonical recognizer: the size measure used
    /// in complexity bounds.
    std::size_t state_count() const { return dfa_.state_count; }

    Fsa recognizer() const { return detail::to_fsa(dfa_); }

    const detail::Dense& dense() const { return dfa_; }

    friend bool operator==(const Lang& a, const Lang& b) { return a.dfa_ == b.dfa_; }

private:
    explicit Lang(detail::Dense d) : dfa_(std::move(d)) {}

    static detail::Dense single_state(Alphabet alphabet, bool marked) {
        detail::Dense d;
        d.alphabet = std::move(alphabet);
        d.state_count = 1;
        d.initial = 0;
        d.next.assign(d.alphabet.size(), 0);
        d.marked.assign(1, marked);
        return d;
    }

    detail::Dense dfa_;
};

namespace detail {

inline void require_same_alphabet(const Lang& a, const Lang& b, const char* op) {
    if (!(a.alphabet() == b.alphabet()))
        throw ValidationError(std::string(op) + ": operands have different alphabets");
}

template <class Mark>
Dense product_dense(const Dense& a, const Dense& b, Mark mark) {
    const std::size_t k = a.alphabet.size();
    std::unordered_map<std::uint64_t, StateId> ids;
    std::vector<std::pair<StateId, StateId>> pairs;
    auto intern = [&](StateId pa, StateId pb) {
        std::uint64_t key = std::uint64_t(pa) * b.state_count + pb;
        auto [it, fresh] = ids.emplace(key, static_cast<StateId>(pairs.size()));
        if (fresh)
            pairs.emplace_back(pa, pb);
        return it->second;
    };
    intern(a.initial, b.initial);
    Dense out;
    out.alphabet = a.alphabet;
    out.initial = 0;
    for (std::size_t head = 0; head < pairs.size(); ++head) {
        auto [pa, pb] = pairs[head];
        for (EventId e = 0; e < k; ++e)
            out.next.push_back(intern(a.step(pa, e), b.step(pb, e)));
    }
    out.state_count = static_cast<std::uint32_t>(pairs.size());
    out.marked.assign(out.state_count, false);
    for (StateId s = 0; s < out.state_count; ++s)
        out.marked[s] = mark(a.marked[pairs[s].first], b.marked[pairs[s].second]);
    return out;
}

/// Events of the alphabet in name-rank order; enumeration walks use this so
/// output order is independent of event declaration order.
inline std::vector<EventId> events_by_rank(const Alphabet& alphabet) {
    std::vector<EventId> order(alphabet.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](EventId x, EventId y) {
        return alphabet.name_rank(x) < alphabet.name_rank(y);
    });
    return order;
}

} // namespace detail

inline Lang complement(const Lang& l) {
    // Flipping acceptance preserves minimality and the BFS numbering, so the
    // result is canonical without another minimization pass.
    detail::Dense d = l.dense();
    d.marked.flip();
    return Lang::from_canonical(std::move(d));
}

inline Lang intersect(const Lang& a, const Lang& b) {
    detail::require_same_alphabet(a, b, "intersect");
    return Lang::from_canonical(detail::canonical(detail::product_dense(
        a.dense(), b.dense(), [](bool x, bool y) { return x && y; })));
}

inline Lang union_of(const Lang& a, const Lang& b) {
    detail::require_same_alphabet(a, b, "union");
    return Lang::from_canonical(detail::canonical(detail::product_dense(
        a.dense(), b.dense(), [](bool x, bool y) { return x || y; })));
}

inline Lang difference(const Lang& a, const Lang& b) {
    detail::require_same_alphabet(a, b, "difference");
    return Lang::from_canonical(detail::canonical(detail::product_dense(
        a.dense(), b.dense(), [](bool x, bool y) { return x && !y; })));
}

/// The set of all prefixes of members (epsilon included when l is nonempty).
inline Lang prefix_closure(const Lang& l) {
    detail::Dense d = l.dense();
    std::vector<bool> live = detail::coreachable(d);
    for (StateId s = 0; s < d.state_count; ++s)
        d.marked[s] = live[s];
    return Lang::from_canonical(detail::canonical(d));
}

inline bool is_empty(const Lang& l) {
    const detail::Dense& d = l.dense();
    return std::none_of(d.marked.begin(), d.marked.end(), [](bool b) { return b; });
}

inline bool contains(const Lang& l, const Word& w) {
    const detail::Dense& d = l.dense();
    StateId s = d.initial;
    for (EventId e : w) {
        if (e >= d.alphabet.size())
            throw ValidationError("language membership: event id out of range");
        s = d.step(s, e);
    }
    return d.marked[s];
}

inline bool is_subset(const Lang& a, const Lang& b) {
    detail::require_same_alphabet(a, b, "subset test");
    const detail::Dense& da = a.dense();
    const detail::Dense& db = b.dense();
    const std::size_t k = da.alphabet.size();
    std::unordered_map<std::uint64_t, bool> seen;
    std::vector<std::pair<StateId, StateId>> stack{{da.initial, db.initial}};
    seen.emplace(std::uint64_t(da.initial) * db.state_count + db.initial, true);
    while (!stack.empty()) {
        auto [pa, pb] = stack.back();
        stack.pop_back();
        if (da.marked[pa] && !db.marked[pb])
            return false;
        for (EventId e = 0; e < k; ++e) {
            StateId na = da.step(pa, e);
            StateId nb = db.step(pb, e);
            if (seen.emplace(std::uint64_t(na) * db.state_count + nb, true).second)
                stack.emplace_back(na, nb);
        }
    }
    return true;
}

inline bool is_equal(const Lang& a, const Lang& b) {
    detail::require_same_alphabet(a, b, "equality test");
    return a == b;
}

/// True when the language equals its prefix closure. On the canonical
/// recognizer this holds exactly when the marked states are the coreachable
/// ones.
inline bool is_prefix_closed(const Lang& l) {
    const detail::Dense& d = l.dense();
    std::vector<bool> live = detail::coreachable(d);
    for (StateId s = 0; s < d.state_count; ++s)
        if (d.marked[s] != live[s])
            return false;
    return true;
}

/// The language {s sigma | s in l}: every member extended by one event.
inline Lang append_event(const Lang& l, EventId sigma) {
    const detail::Dense& d = l.dense();
    if (sigma >= d.alphabet.size())
        throw ValidationError("append: event id out of range");
    std::vector<bool> live = detail::coreachable(d);
    if (!live[d.initial])
        return Lang::empty(d.alphabet);
    std::vector<StateId> lmap(d.state_count, UINT32_MAX);
    StateId live_count = 0;
    for (StateId s = 0; s < d.state_count; ++s)
        if (live[s])
            lmap[s] = live_count++;
    // Nondeterministic recognizer: l's live part, plus a fresh accepting
    // state reachable by sigma from every live state.
    const StateId accept = live_count;
    std::vector<Transition> trans;
    for (StateId s = 0; s < d.state_count; ++s) {
        if (!live[s])
            continue;
        for (EventId e = 0; e < d.alphabet.size(); ++e) {
            StateId t = d.step(s, e);
            if (live[t])
                trans.push_back({lmap[s], e, lmap[t]});
        }
        trans.push_back({lmap[s], sigma, accept});
    }
    return Lang::from_fsa(Fsa(d.alphabet, live_count + 1, lmap[d.initial],
                              {accept}, std::move(trans)));
}

namespace detail {

/// Restriction of the canonical table to its useful (coreachable) states:
/// every word spelled along useful states extends to a member, so walks over
/// this subgraph enumerate exactly the prefixes of members.
struct UsefulGraph {
    std::vector<bool> useful;
    bool initial_useful = false;
};

inline UsefulGraph useful_graph(const Dense& d) {
    UsefulGraph g;
    g.useful = coreachable(d);
    g.initial_useful = g.useful[d.initial];
    return g;
}

/// True when the useful subgraph contains a cycle (iterative DFS, colors).
inline bool useful_has_cycle(const Dense& d, const UsefulGraph& g) {
    if (!g.initial_useful)
        return false;
    const std::size_t k = d.alphabet.size();
    std::vector<int> color(d.state_count, 0);  // 0 new, 1 open, 2 done
    std::vector<std::pair<StateId, EventId>> stack{{d.initial, 0}};
    color[d.initial] = 1;
    while (!stack.empty()) {
        auto& [s, e] = stack.back();
        if (e == k) {
            color[s] = 2;
            stack.pop_back();
            continue;
        }
        StateId t = d.step(s, e++);
        if (!g.useful[t])
            continue;
        if (color[t] == 1)
            return true;
        if (color[t] == 0) {
            color[t] = 1;
            stack.emplace_back(t, 0);
        }
    }
    return false;
}

/// Useful states in a topological order of the useful subgraph (which must be
/// acyclic), plus per-state path counts from the initial state saturated at
/// cap, and longest-path lengths.
struct UsefulDag {
    std::vector<StateId> topo;
    std::vector<std::uint64_t> paths;
    std::vector<std::size_t> longest;
};

inline UsefulDag useful_dag(const Dense& d, const UsefulGraph& g, std::uint64_t cap) {
    const std::size_t k = d.alphabet.size();
    UsefulDag dag;
    dag.paths.assign(d.state_count, 0);
    dag.longest.assign(d.state_count, 0);
    if (!g.initial_useful)
        return dag;
    std::vector<std::uint32_t> indeg(d.state_count, 0);
    for (StateId s = 0; s < d.state_count; ++s) {
        if (!g.useful[s])
            continue;
        for (EventId e = 0; e < k; ++e) {
            StateId t = d.step(s, e);
            if (g.useful[t])
                ++indeg[t];
        }
    }
    std::vector<StateId> queue;
    for (StateId s = 0; s < d.state_count; ++s)
        if (g.useful[s] && indeg[s] == 0)
            queue.push_back(s);
    dag.paths[d.initial] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        StateId s = queue[head];
        dag.topo.push_back(s);
        for (EventId e = 0; e < k; ++e) {
            StateId t = d.step(s, e);
            if (!g.useful[t])
                continue;
            dag.paths[t] = (dag.paths[t] > cap - dag.paths[s])
                               ? cap
                               : dag.paths[t] + dag.paths[s];
            dag.longest[t] = std::max(dag.longest[t], dag.longest[s] + 1);
            if (--indeg[t] == 0)
                queue.push_back(t);
        }
    }
    return dag;
}

} // namespace detail

inline bool is_finite(const Lang& l) {
    detail::UsefulGraph g = detail::useful_graph(l.dense());
    return !detail::useful_has_cycle(l.dense(), g);
}

/// Number of members, saturated at cap (and returning cap for infinite
/// languages). cap must be below 2^64-1.
inline std::uint64_t count_words(const Lang& l, std::uint64_t cap) {
    const detail::Dense& d = l.dense();
    detail::UsefulGraph g = detail::useful_graph(d);
    if (!g.initial_useful)
        return 0;
    if (detail::useful_has_cycle(d, g))
        return cap;
    detail::UsefulDag dag = detail::useful_dag(d, g, cap);
    std::uint64_t total = 0;
    for (StateId s = 0; s < d.state_count; ++s)
        if (d.marked[s]) {
            total = (total > cap - dag.paths[s]) ? cap : total + dag.paths[s];
        }
    return total;
}

/// Length of the longest member; nullopt when the language is infinite.
/// The empty language reports 0.
inline std::optional<std::size_t> longest_word_length(const Lang& l) {
    const detail::Dense& d = l.dense();
    detail::UsefulGraph g = detail::useful_graph(d);
    if (!g.initial_useful)
        return 0;
    if (detail::useful_has_cycle(d, g))
        return std::nullopt;
    detail::UsefulDag dag = detail::useful_dag(d, g, 1);
    std::size_t best = 0;
    for (StateId s = 0; s < d.state_count; ++s)
        if (d.marked[s])
            best = std::max(best, dag.longest[s]);
    return best;
}

/// All members of length at most max_length, in length/name order.
inline FiniteLang enumerate_words(const Lang& l, std::size_t max_length) {
    const detail::Dense& d = l.dense();
    detail::UsefulGraph g = detail::useful_graph(d);
    std::vector<Word> out;
    if (!g.initial_useful)
        return FiniteLang(d.alphabet, {});
    std::vector<EventId> order = detail::events_by_rank(d.alphabet);
    // Level-wise expansion in name order keeps each level sorted; pruning to
    // useful states bounds the frontier by the number of member prefixes.
    std::vector<std::pair<StateId, Word>> frontier{{d.initial, {}}};
    for (std::size_t len = 0;; ++len) {
        for (const auto& [s, w] : frontier)
            if (d.marked[s])
                out.push_back(w);
        if (len == max_length || frontier.empty())
            break;
        std::vector<std::pair<StateId, Word>> next_frontier;
        for (const auto& [s, w] : frontier)
            for (EventId e : order) {
                StateId t = d.step(s, e);
                if (!g.useful[t])
                    continue;
                Word ext = w;
                ext.push_back(e);
                next_frontier.emplace_back(t, std::move(ext));
            }
        frontier = std::move(next_frontier);
    }
    return FiniteLang(d.alphabet, std::move(out));
}

/// Every member, when the language is finite with at most max_count members;
/// nullopt otherwise.
inline std::optional<FiniteLang> all_words(const Lang& l, std::size_t max_count) {
    if (!is_finite(l))
        return std::nullopt;
    if (count_words(l, std::uint64_t(max_count) + 1) > max_count)
        return std::nullopt;
    std::optional<std::size_t> len = longest_word_length(l);
    return enumerate_words(l, *len);
}

/// A shortest member (ties broken by event name order); nullopt when empty.
inline std::optional<Word> shortest_word(const Lang& l) {
    const detail::Dense& d = l.dense();
    std::vector<EventId> order = detail::events_by_rank(d.alphabet);
    std::vector<bool> seen(d.state_count, false);
    std::vector<StateId> parent(d.state_count, 0);
    std::vector<EventId> via(d.state_count, 0);
    std::vector<StateId> queue{d.initial};
    seen[d.initial] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        StateId s = queue[head];
        if (d.marked[s]) {
            // Walk the BFS tree back to the root.
            Word w;
            for (StateId cur = s; cur != d.initial; cur = parent[cur])
                w.push_back(via[cur]);
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (EventId e : order) {
            StateId t = d.step(s, e);
            if (!seen[t]) {
                seen[t] = true;
                parent[t] = s;
                via[t] = e;
                queue.push_back(t);
            }
        }
    }
    return std::nullopt;
}

} // namespace relobs
