#pragma once

// Brute-force ground truth for finite instances. Everything here works on
// explicit string sets and evaluates the definitions directly — projections
// by string rewriting, properties by pair enumeration, supremal elements by
// enumerating sublanguages and taking the union (each property is closed
// under unions). Deliberately shares nothing with the recognizer-based
// engine beyond the Event/Alphabet/FiniteLang value types and the two
// declared bridge conversions at the bottom.

#include <map>
#include <set>
#include <vector>

#include "relobs/errors.hpp"
#include "relobs/finite_lang.hpp"
#include "relobs/lang.hpp"

namespace relobs::oracle {

using WordSet = std::set<Word>;

inline WordSet to_set(const FiniteLang& f) {
    return WordSet(f.words().begin(), f.words().end());
}

inline FiniteLang to_finite(const Alphabet& alphabet, const WordSet& s) {
    return FiniteLang(alphabet, std::vector<Word>(s.begin(), s.end()));
}

/// Natural projection of one word: drop unobservable events.
inline Word project_word(const Alphabet& alphabet, const Word& w) {
    Word out;
    for (EventId e : w)
        if (alphabet.event(e).observable)
            out.push_back(e);
    return out;
}

inline WordSet prefix_set(const WordSet& s) {
    WordSet out;
    for (const Word& w : s)
        for (std::size_t len = 0; len <= w.size(); ++len)
            out.insert(Word(w.begin(), w.begin() + len));
    return out;
}

inline bool subset_of(const WordSet& a, const WordSet& b) {
    for (const Word& w : a)
        if (!b.count(w))
            return false;
    return true;
}

namespace detail {

/// Relative observability of k against ambient c within plant m, by the
/// defining conditions: for every pair of words with equal projections,
/// (i) a one-step continuation inside k's closure forces the same
/// continuation on the ambient word whenever the plant allows it, and
/// (ii) marked membership transfers from k to lookalike words of c̄ ∩ m.
inline bool relobs_holds(const Alphabet& alphabet, const WordSet& k, const WordSet& c,
                         const WordSet& m) {
    WordSet kbar = prefix_set(k);
    WordSet cbar = prefix_set(c);
    WordSet mbar = prefix_set(m);
    std::map<Word, std::vector<const Word*>> cbar_by_view;
    for (const Word& w : cbar)
        cbar_by_view[project_word(alphabet, w)].push_back(&w);

    // (i): for s with s.sigma in kbar, every lookalike s' in cbar with
    // s'.sigma in mbar must keep s'.sigma in kbar.
    for (const Word& t : kbar) {
        if (t.empty())
            continue;
        Word s(t.begin(), t.end() - 1);
        EventId sigma = t.back();
        auto it = cbar_by_view.find(project_word(alphabet, s));
        if (it == cbar_by_view.end())
            continue;
        for (const Word* sp : it->second) {
            Word tp = *sp;
            tp.push_back(sigma);
            if (mbar.count(tp) && !kbar.count(tp))
                return false;
        }
    }
    // (ii): marked consistency over c̄ ∩ m.
    for (const Word& s : k) {
        auto it = cbar_by_view.find(project_word(alphabet, s));
        if (it == cbar_by_view.end())
            continue;
        for (const Word* sp : it->second)
            if (m.count(*sp) && !k.count(*sp))
                return false;
    }
    return true;
}

inline bool controllable_holds(const Alphabet& alphabet, const WordSet& k,
                               const WordSet& m) {
    WordSet kbar = prefix_set(k);
    WordSet mbar = prefix_set(m);
    std::vector<EventId> unctrl = alphabet.uncontrollable_ids();
    for (const Word& w : kbar)
        for (EventId u : unctrl) {
            Word wu = w;
            wu.push_back(u);
            if (mbar.count(wu) && !kbar.count(wu))
                return false;
        }
    return true;
}

/// Union of all subsets of `base` satisfying a union-closed predicate.
/// Subsets already inside the running union are skipped: they cannot add
/// anything.
template <class Pred>
WordSet union_of_good_subsets(const std::vector<Word>& base, Pred good) {
    if (base.size() > 20)
        throw ValidationError("oracle: sublanguage enumeration capped at 20 strings");
    const std::size_t n = base.size();
    WordSet result;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        WordSet subset;
        bool covered = true;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::uint64_t(1) << i)) {
                subset.insert(base[i]);
                if (!result.count(base[i]))
                    covered = false;
            }
        if (covered && mask != 0)
            continue;
        if (good(subset))
            for (const Word& w : subset)
                result.insert(w);
    }
    return result;
}

inline void require_subset(const WordSet& a, const WordSet& b, const char* what) {
    if (!subset_of(a, b))
        throw ValidationError(std::string("oracle: ") + what);
}

} // namespace detail

inline bool check_relobs_definition(const FiniteLang& k, const FiniteLang& c,
                                    const FiniteLang& m) {
    WordSet ks = to_set(k), cs = to_set(c), ms = to_set(m);
    detail::require_subset(ks, cs, "candidate must be a subset of the ambient");
    detail::require_subset(cs, ms, "ambient must be a subset of the plant");
    return detail::relobs_holds(k.alphabet(), ks, cs, ms);
}

inline FiniteLang brute_sup_relobs(const FiniteLang& c, const FiniteLang& m) {
    WordSet cs = to_set(c), ms = to_set(m);
    detail::require_subset(cs, ms, "ambient must be a subset of the plant");
    WordSet best = detail::union_of_good_subsets(c.words(), [&](const WordSet& k) {
        return detail::relobs_holds(c.alphabet(), k, cs, ms);
    });
    return to_finite(c.alphabet(), best);
}

/// Normality against ambient h: the candidate equals the lookalike-selected
/// part of h ({w in h : P(w) in P(candidate)}).
inline FiniteLang brute_sup_normal(const FiniteLang& k, const FiniteLang& h) {
    WordSet ks = to_set(k), hs = to_set(h);
    detail::require_subset(ks, hs, "candidate must be a subset of the ambient");
    const Alphabet& alphabet = k.alphabet();
    WordSet best = detail::union_of_good_subsets(k.words(), [&](const WordSet& sub) {
        std::set<Word> views;
        for (const Word& w : sub)
            views.insert(project_word(alphabet, w));
        for (const Word& w : hs)
            if (views.count(project_word(alphabet, w)) && !sub.count(w))
                return false;
        return true;
    });
    return to_finite(alphabet, best);
}

/// Largest prefix-closed subset: keep a word iff all its prefixes are
/// members (the union of all closed subsets is exactly this filter).
inline FiniteLang brute_sup_closed(const FiniteLang& l) {
    WordSet ls = to_set(l);
    WordSet keep;
    for (const Word& w : ls) {
        bool all_in = true;
        for (std::size_t len = 0; len < w.size(); ++len)
            if (!ls.count(Word(w.begin(), w.begin() + len))) {
                all_in = false;
                break;
            }
        if (all_in)
            keep.insert(w);
    }
    return to_finite(l.alphabet(), keep);
}

inline FiniteLang brute_sup_controllable(const FiniteLang& k, const FiniteLang& m) {
    WordSet ks = to_set(k), ms = to_set(m);
    detail::require_subset(ks, ms, "candidate must be a subset of the plant");
    WordSet best = detail::union_of_good_subsets(k.words(), [&](const WordSet& sub) {
        return detail::controllable_holds(k.alphabet(), sub, ms);
    });
    return to_finite(k.alphabet(), best);
}

inline FiniteLang brute_sup_ctrl_relobs(const FiniteLang& c, const FiniteLang& m) {
    WordSet cs = to_set(c), ms = to_set(m);
    detail::require_subset(cs, ms, "ambient must be a subset of the plant");
    WordSet best = detail::union_of_good_subsets(c.words(), [&](const WordSet& k) {
        return detail::controllable_holds(c.alphabet(), k, ms) &&
               detail::relobs_holds(c.alphabet(), k, cs, ms);
    });
    return to_finite(c.alphabet(), best);
}

inline bool check_controllable_definition(const FiniteLang& k, const FiniteLang& m) {
    WordSet ks = to_set(k), ms = to_set(m);
    detail::require_subset(ks, ms, "candidate must be a subset of the plant");
    return detail::controllable_holds(k.alphabet(), ks, ms);
}

// ---- bridges between the two representations ----

inline Lang finite_to_lang(const FiniteLang& f) {
    return Lang::from_words(f.alphabet(), f.words());
}

struct Truncation {
    FiniteLang words;
    bool truncated = false;
};

/// Members up to max_len, with a flag when the language has longer members
/// (or is infinite).
inline Truncation lang_to_finite(const Lang& l, std::size_t max_len) {
    std::optional<std::size_t> longest = longest_word_length(l);
    bool truncated = !longest.has_value() || *longest > max_len;
    return Truncation{enumerate_words(l, max_len), truncated};
}

/// Exact conversion: rejects languages with members beyond max_len.
inline FiniteLang lang_to_finite_exact(const Lang& l, std::size_t max_len) {
    Truncation t = lang_to_finite(l, max_len);
    if (t.truncated)
        throw ValidationError("oracle: language has members beyond the requested length");
    return t.words;
}

} // namespace relobs::oracle
