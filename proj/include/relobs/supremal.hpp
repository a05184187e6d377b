#pragma once

#include <vector>

#include "relobs/lang.hpp"
#include "relobs/projection.hpp"

namespace relobs {

/// Normality of k with respect to an ambient language h: k is exactly the
/// part of h that looks like k, i.e. lookalike(k) ∩ h = k.
inline bool is_normal(const Lang& k, const Lang& h) {
    return intersect(lookalike(k), h) == k;
}

/// Largest sublanguage of k that is normal with respect to h, computed as
/// k − [h − k]: a word of k survives unless some lookalike word of h escapes
/// k. Requires k ⊆ h (the formula is supremal only under that assumption).
inline Lang sup_normal(const Lang& k, const Lang& h) {
    detail::require_same_alphabet(k, h, "sup normal");
    if (!is_subset(k, h))
        throw ValidationError("sup normal: operand must be a sublanguage of the ambient");
    return difference(k, lookalike(difference(h, k)));
}

/// Largest sublanguage closed under full lookalike classes: {s | [s] ⊆ l},
/// computed as l − [complement(l)]. This is sup_normal with the whole
/// universe as ambient; the consistent-core decomposition needs it for
/// operands that escape every proper ambient.
inline Lang lookalike_interior(const Lang& l) {
    return difference(l, lookalike(complement(l)));
}

/// Largest prefix-closed sublanguage: the words all of whose prefixes are
/// members. On the canonical recognizer: paths that stay within marked
/// states.
inline Lang sup_closed(const Lang& l) {
    const detail::Dense& d = l.dense();
    if (!d.marked[d.initial])
        return Lang::empty(d.alphabet);
    const std::size_t k = d.alphabet.size();
    // States reachable through marked states only.
    std::vector<bool> good(d.state_count, false);
    std::vector<StateId> queue{d.initial};
    good[d.initial] = true;
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (EventId e = 0; e < k; ++e) {
            StateId t = d.step(queue[head], e);
            if (d.marked[t] && !good[t]) {
                good[t] = true;
                queue.push_back(t);
            }
        }
    // Rebuild with everything outside `good` redirected to a dump state, so
    // acceptance means the whole path stayed inside.
    std::vector<StateId> gmap(d.state_count, UINT32_MAX);
    StateId good_count = 0;
    for (StateId s = 0; s < d.state_count; ++s)
        if (good[s])
            gmap[s] = good_count++;
    const StateId dump = good_count;
    detail::Dense out;
    out.alphabet = d.alphabet;
    out.state_count = good_count + 1;
    out.initial = gmap[d.initial];
    out.next.assign(std::size_t(out.state_count) * k, dump);
    out.marked.assign(out.state_count, false);
    for (StateId s = 0; s < d.state_count; ++s) {
        if (!good[s])
            continue;
        out.marked[gmap[s]] = true;
        for (EventId e = 0; e < k; ++e) {
            StateId t = d.step(s, e);
            if (good[t])
                out.next[std::size_t(gmap[s]) * k + e] = gmap[t];
        }
    }
    return Lang::from_canonical(detail::canonical(out));
}

/// Controllability of k against plant m: no uncontrollable event enabled by
/// the plant after a prefix of k may leave k's closure.
inline bool is_controllable(const Lang& k, const Lang& m) {
    detail::require_same_alphabet(k, m, "controllability test");
    Lang kbar = prefix_closure(k);
    Lang mbar = prefix_closure(m);
    for (EventId u : k.alphabet().uncontrollable_ids())
        if (!is_subset(intersect(append_event(k, u), mbar), kbar))
            return false;
    return true;
}

/// Supremal controllable sublanguage of k with respect to plant m, by the
/// standard pruning fixpoint on the product of the two recognizers: delete
/// product states where the plant enables an uncontrollable event that the
/// surviving candidate cannot follow, re-trim to states on a path from the
/// initial state to marking, repeat until stable. Requires k ⊆ m.
inline Lang sup_controllable(const Lang& k, const Lang& m) {
    detail::require_same_alphabet(k, m, "sup controllable");
    if (!is_subset(k, m))
        throw ValidationError("sup controllable: operand must be a sublanguage of the plant");
    const detail::Dense& a = k.dense();
    const detail::Dense mb = prefix_closure(m).dense();
    const std::size_t nk = a.alphabet.size();
    std::vector<EventId> unctrl = a.alphabet.uncontrollable_ids();

    // In the closed plant's canonical recognizer, "the plant allows the
    // word" is exactly "the state is marked".
    std::vector<bool> a_useful = detail::coreachable(a);

    // Reachable product states whose word lies in closure(k) ∩ closure(m).
    std::unordered_map<std::uint64_t, StateId> ids;
    std::vector<std::pair<StateId, StateId>> pairs;
    auto key = [&](StateId pa, StateId pb) {
        return std::uint64_t(pa) * mb.state_count + pb;
    };
    auto intern = [&](StateId pa, StateId pb) {
        auto [it, fresh] = ids.emplace(key(pa, pb), static_cast<StateId>(pairs.size()));
        if (fresh)
            pairs.emplace_back(pa, pb);
        return it->second;
    };
    if (!a_useful[a.initial] || !mb.marked[mb.initial])
        return Lang::empty(a.alphabet);
    intern(a.initial, mb.initial);
    for (std::size_t head = 0; head < pairs.size(); ++head) {
        auto [pa, pb] = pairs[head];
        for (EventId e = 0; e < nk; ++e) {
            StateId na = a.step(pa, e);
            StateId nb = mb.step(pb, e);
            if (a_useful[na] && mb.marked[nb])
                intern(na, nb);
        }
    }

    const std::size_t n = pairs.size();
    std::vector<bool> alive(n, true);
    auto alive_step = [&](std::size_t p, EventId e) -> std::int64_t {
        auto [pa, pb] = pairs[p];
        StateId na = a.step(pa, e);
        StateId nb = mb.step(pb, e);
        if (!a_useful[na] || !mb.marked[nb])
            return -1;
        auto it = ids.find(key(na, nb));
        if (it == ids.end() || !alive[it->second])
            return -1;
        return it->second;
    };

    for (;;) {
        bool changed = false;
        // Uncontrollable escape: the plant continues with an uncontrollable
        // event but the candidate's closure cannot.
        for (std::size_t p = 0; p < n; ++p) {
            if (!alive[p])
                continue;
            for (EventId u : unctrl) {
                StateId nb = mb.step(pairs[p].second, u);
                if (mb.marked[nb] && alive_step(p, u) < 0) {
                    alive[p] = false;
                    changed = true;
                    break;
                }
            }
        }
        // Trim: keep states reachable from the start and on a path to a
        // marked pair, within the alive set.
        std::vector<bool> reach(n, false);
        if (alive[0]) {
            std::vector<StateId> queue{0};
            reach[0] = true;
            for (std::size_t head = 0; head < queue.size(); ++head)
                for (EventId e = 0; e < nk; ++e) {
                    std::int64_t t = alive_step(queue[head], e);
                    if (t >= 0 && !reach[std::size_t(t)]) {
                        reach[std::size_t(t)] = true;
                        queue.push_back(static_cast<StateId>(t));
                    }
                }
        }
        std::vector<bool> keep(n, false);
        std::vector<StateId> stack;
        for (std::size_t p = 0; p < n; ++p)
            if (reach[p] && a.marked[pairs[p].first]) {
                keep[p] = true;
                stack.push_back(static_cast<StateId>(p));
            }
        // Walk marked-pair ancestry backwards over alive+reachable states.
        std::vector<std::vector<StateId>> rev(n);
        for (std::size_t p = 0; p < n; ++p)
            if (reach[p])
                for (EventId e = 0; e < nk; ++e) {
                    std::int64_t t = alive_step(p, e);
                    if (t >= 0 && reach[std::size_t(t)])
                        rev[std::size_t(t)].push_back(static_cast<StateId>(p));
                }
        while (!stack.empty()) {
            StateId p = stack.back();
            stack.pop_back();
            for (StateId q : rev[p])
                if (!keep[q]) {
                    keep[q] = true;
                    stack.push_back(q);
                }
        }
        for (std::size_t p = 0; p < n; ++p)
            if (alive[p] && !keep[p]) {
                alive[p] = false;
                changed = true;
            }
        if (!changed)
            break;
    }

    if (!alive[0])
        return Lang::empty(a.alphabet);
    // Materialize the surviving subautomaton (plus dump).
    std::vector<StateId> amap(n, UINT32_MAX);
    StateId live_count = 0;
    for (std::size_t p = 0; p < n; ++p)
        if (alive[p])
            amap[p] = live_count++;
    const StateId dump = live_count;
    detail::Dense out;
    out.alphabet = a.alphabet;
    out.state_count = live_count + 1;
    out.initial = amap[0];
    out.next.assign(std::size_t(out.state_count) * nk, dump);
    out.marked.assign(out.state_count, false);
    for (std::size_t p = 0; p < n; ++p) {
        if (!alive[p])
            continue;
        out.marked[amap[p]] = a.marked[pairs[p].first];
        for (EventId e = 0; e < nk; ++e) {
            std::int64_t t = alive_step(p, e);
            if (t >= 0)
                out.next[std::size_t(amap[p]) * nk + e] = amap[std::size_t(t)];
        }
    }
    return Lang::from_canonical(detail::canonical(out));
}

} // namespace relobs
