#pragma once

#include <algorithm>
#include <vector>

#include "relobs/alphabet.hpp"
#include "relobs/errors.hpp"

namespace relobs {

/// An explicit finite set of words, kept sorted (length-first, then by event
/// name rank) and deduplicated. This is the exchange format between the
/// recognizer-based engine and the string-set reference implementations, and
/// the payload of enumeration output.
class FiniteLang {
public:
    FiniteLang(Alphabet alphabet, std::vector<Word> words)
        : alphabet_(std::move(alphabet)), words_(std::move(words)) {
        for (const Word& w : words_)
            for (EventId e : w)
                if (e >= alphabet_.size())
                    throw ValidationError("finite language: event id out of range");
        sort_unique();
    }

    static FiniteLang empty(Alphabet alphabet) {
        return FiniteLang(std::move(alphabet), {});
    }

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<Word>& words() const { return words_; }
    std::size_t size() const { return words_.size(); }
    bool empty() const { return words_.empty(); }

    bool contains(const Word& w) const {
        return std::binary_search(words_.begin(), words_.end(), w,
                                  [this](const Word& a, const Word& b) {
                                      return alphabet_.word_less(a, b);
                                  });
    }

    friend bool operator==(const FiniteLang& a, const FiniteLang& b) {
        return a.alphabet_ == b.alphabet_ && a.words_ == b.words_;
    }

private:
    void sort_unique() {
        std::sort(words_.begin(), words_.end(), [this](const Word& a, const Word& b) {
            return alphabet_.word_less(a, b);
        });
        words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
    }

    Alphabet alphabet_;
    std::vector<Word> words_;
};

} // namespace relobs
