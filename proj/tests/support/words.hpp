#pragma once

// Word-level helpers for tests: build words from readable strings, accept
// words on raw (possibly nondeterministic/partial) automata by subset
// stepping, and enumerate bounded-length languages by exhaustion. These
// deliberately avoid the library's Lang machinery so they can serve as an
// independent cross-check.

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "relobs/alphabet.hpp"
#include "relobs/fsa.hpp"

namespace test_support {

inline relobs::Word parse_word(const relobs::Alphabet& alphabet, const std::string& text) {
    relobs::Word w;
    if (text == "eps")
        return w;
    std::istringstream in(text);
    std::string token;
    while (in >> token)
        w.push_back(alphabet.require(token));
    return w;
}

inline std::vector<relobs::Word> parse_words(const relobs::Alphabet& alphabet,
                                             const std::vector<std::string>& lines) {
    std::vector<relobs::Word> out;
    out.reserve(lines.size());
    for (const std::string& line : lines)
        out.push_back(parse_word(alphabet, line));
    return out;
}

/// Acceptance on a raw Fsa by stepping subsets of states (no epsilon moves).
inline bool nfa_accepts(const relobs::Fsa& f, const relobs::Word& w) {
    std::set<relobs::StateId> current{f.initial()};
    for (relobs::EventId e : w) {
        std::set<relobs::StateId> next;
        for (const relobs::Transition& t : f.transitions())
            if (t.event == e && current.count(t.from))
                next.insert(t.to);
        current = std::move(next);
        if (current.empty())
            return false;
    }
    return std::any_of(current.begin(), current.end(),
                       [&](relobs::StateId s) { return f.marked(s); });
}

/// Every accepted word of length <= max_len, by trying all words. Exponential
/// in max_len; keep max_len small.
inline std::vector<relobs::Word> accepted_words_up_to(const relobs::Fsa& f,
                                                      std::size_t max_len) {
    std::vector<relobs::Word> out;
    std::vector<relobs::Word> level{{}};
    for (std::size_t len = 0;; ++len) {
        for (const relobs::Word& w : level)
            if (nfa_accepts(f, w))
                out.push_back(w);
        if (len == max_len)
            break;
        std::vector<relobs::Word> next_level;
        for (const relobs::Word& w : level)
            for (relobs::EventId e = 0; e < f.alphabet().size(); ++e) {
                relobs::Word ext = w;
                ext.push_back(e);
                next_level.push_back(std::move(ext));
            }
        level = std::move(next_level);
    }
    std::sort(out.begin(), out.end(), [&](const relobs::Word& a, const relobs::Word& b) {
        return f.alphabet().word_less(a, b);
    });
    return out;
}

inline std::vector<relobs::Word> random_word_set(std::mt19937& rng,
                                                 const relobs::Alphabet& alphabet,
                                                 std::size_t max_words,
                                                 std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> count_dist(0, max_words);
    std::uniform_int_distribution<std::size_t> len_dist(0, max_len);
    std::uniform_int_distribution<relobs::EventId> event_dist(
        0, static_cast<relobs::EventId>(alphabet.size() - 1));
    std::vector<relobs::Word> words;
    std::size_t count = count_dist(rng);
    for (std::size_t i = 0; i < count; ++i) {
        relobs::Word w(len_dist(rng));
        for (relobs::EventId& e : w)
            e = event_dist(rng);
        words.push_back(std::move(w));
    }
    return words;
}

} // namespace test_support
