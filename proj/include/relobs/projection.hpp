#pragma once

#include <vector>

#include "relobs/lang.hpp"

namespace relobs {

/// Natural projection: the image of l under the string map that erases
/// unobservable events. The result lives over the observable sub-alphabet
/// (flags preserved). Implemented by treating unobservable transitions as
/// silent moves and determinizing. When no event is observable the image
/// collapses to {eps} iff l is nonempty.
inline Lang project(const Lang& l) {
    const Alphabet& full = l.alphabet();
    Alphabet out = full.observable_subset();
    std::vector<bool> silent(full.size(), false);
    std::vector<EventId> out_to_src;
    for (EventId e = 0; e < full.size(); ++e) {
        if (full.event(e).observable)
            out_to_src.push_back(e);
        else
            silent[e] = true;
    }
    return Lang::from_canonical(detail::canonical(
        detail::subset_construct(l.recognizer(), silent, out, out_to_src)));
}

/// Inverse image of a projected language: all words over `target` that erase
/// to a member of lo. target's observable sub-alphabet must equal lo's
/// alphabet. Constructed by adding self-loops on every unobservable event.
inline Lang inverse_project(const Lang& lo, const Alphabet& target) {
    if (!(target.observable_subset() == lo.alphabet()))
        throw ValidationError(
            "inverse projection: target alphabet's observable part does not match the operand");
    const detail::Dense& d = lo.dense();
    // Position of each observable target event within lo's alphabet.
    std::vector<EventId> obs_pos(target.size(), 0);
    EventId pos = 0;
    for (EventId e = 0; e < target.size(); ++e)
        if (target.event(e).observable)
            obs_pos[e] = pos++;
    detail::Dense out;
    out.alphabet = target;
    out.state_count = d.state_count;
    out.initial = d.initial;
    out.marked = d.marked;
    out.next.assign(std::size_t(d.state_count) * target.size(), 0);
    for (StateId s = 0; s < d.state_count; ++s)
        for (EventId e = 0; e < target.size(); ++e)
            out.next[std::size_t(s) * target.size() + e] =
                target.event(e).observable ? d.step(s, obs_pos[e]) : s;
    return Lang::from_canonical(detail::canonical(out));
}

/// The lookalike hull: every word observationally indistinguishable from some
/// member of l (inverse projection of the projection).
inline Lang lookalike(const Lang& l) {
    return inverse_project(project(l), l.alphabet());
}

} // namespace relobs
