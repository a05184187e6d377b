#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "relobs/control.hpp"
#include "relobs/fsa.hpp"
#include "relobs/lang.hpp"
#include "relobs/synthesis.hpp"

// Model-file formats and trace emission. Two file kinds exist, told apart by
// extension:
//   .fsa  — an automaton: an `alphabet:` block (one `name o=<0|1> c=<0|1>`
//           per line), `states: <n>`, `initial: <id>`, `marked: <id list>`,
//           and a `trans:` block (`<src> <event> <dst>` per line). May be
//           nondeterministic or partial.
//   .lang — a finite language: a header `alphabet: name o=<0|1> c=<0|1>, ...`
//           and one string per line, events separated by whitespace, with
//           the literal `eps` denoting the empty string.
// `#` starts a comment in both. Serialization is deterministic: canonical
// state numbering and sorted emission, so equal languages produce
// byte-identical files.
namespace relobs::io {

namespace detail {

inline std::string strip_comment(std::string_view line) {
    auto hash = line.find('#');
    if (hash != std::string_view::npos)
        line = line.substr(0, hash);
    return std::string(line);
}

inline std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

inline std::uint32_t parse_uint(const std::string& tok, const char* what) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || value > UINT32_MAX)
        throw ParseError(std::string("expected a number for ") + what + ", got '" +
                         tok + "'");
    return static_cast<std::uint32_t>(value);
}

inline bool parse_flag(const std::string& tok, char key, const std::string& event_name) {
    if (tok.size() == 3 && tok[0] == key && tok[1] == '=' &&
        (tok[2] == '0' || tok[2] == '1'))
        return tok[2] == '1';
    throw ParseError("event '" + event_name + "': expected " + key +
                     "=<0|1>, got '" + tok + "'");
}

/// An event declaration is exactly `name o=<0|1> c=<0|1>`.
inline Event parse_event_decl(const std::vector<std::string>& toks) {
    if (toks.size() != 3)
        throw ParseError("event declaration must be 'name o=<0|1> c=<0|1>', got '" +
                         (toks.empty() ? std::string() : toks[0]) + "' with " +
                         std::to_string(toks.size()) + " token(s)");
    Event e;
    e.name = toks[0];
    e.observable = parse_flag(toks[1], 'o', e.name);
    e.controllable = parse_flag(toks[2], 'c', e.name);
    return e;
}

inline std::string format_event_decl(const Event& e) {
    return e.name + " o=" + (e.observable ? "1" : "0") + " c=" +
           (e.controllable ? "1" : "0");
}

inline Alphabet alphabet_from_events(std::vector<Event> events) {
    try {
        return Alphabet(std::move(events));
    } catch (const ValidationError& err) {
        // A bad alphabet in a model file is a malformed file.
        throw ParseError(err.what());
    }
}

} // namespace detail

// --- automaton files (.fsa) ---

inline Fsa parse_fsa(const std::string& text) {
    enum class Block { none, alphabet, trans };
    Block block = Block::none;
    std::vector<Event> events;
    struct RawTransition {
        std::uint32_t from;
        std::string event;
        std::uint32_t to;
    };
    std::vector<RawTransition> raw;
    std::uint32_t state_count = 0;
    std::uint32_t initial = 0;
    std::vector<StateId> marked;
    bool have_alphabet = false, have_states = false, have_initial = false,
         have_marked = false;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> toks = detail::tokens_of(detail::strip_comment(line));
        if (toks.empty())
            continue;
        const std::string& head = toks[0];
        if (head == "alphabet:") {
            if (have_alphabet)
                throw ParseError("duplicate alphabet: block");
            if (toks.size() != 1)
                throw ParseError("alphabet: block header takes no arguments here");
            have_alphabet = true;
            block = Block::alphabet;
        } else if (head == "states:") {
            if (have_states)
                throw ParseError("duplicate states: line");
            if (toks.size() != 2)
                throw ParseError("states: takes exactly one number");
            state_count = detail::parse_uint(toks[1], "states:");
            have_states = true;
            block = Block::none;
        } else if (head == "initial:") {
            if (have_initial)
                throw ParseError("duplicate initial: line");
            if (toks.size() != 2)
                throw ParseError("initial: takes exactly one state id");
            initial = detail::parse_uint(toks[1], "initial:");
            have_initial = true;
            block = Block::none;
        } else if (head == "marked:") {
            if (have_marked)
                throw ParseError("duplicate marked: line");
            for (std::size_t i = 1; i < toks.size(); ++i)
                marked.push_back(detail::parse_uint(toks[i], "marked:"));
            have_marked = true;
            block = Block::none;
        } else if (head == "trans:") {
            if (toks.size() != 1)
                throw ParseError("trans: block header takes no arguments");
            block = Block::trans;
        } else if (block == Block::alphabet) {
            events.push_back(detail::parse_event_decl(toks));
        } else if (block == Block::trans) {
            if (toks.size() != 3)
                throw ParseError("transition must be '<src> <event> <dst>', got '" +
                                 line + "'");
            raw.push_back({detail::parse_uint(toks[0], "transition source"), toks[1],
                           detail::parse_uint(toks[2], "transition target")});
        } else {
            throw ParseError("unexpected line outside any block: '" + head + "'");
        }
    }

    if (!have_alphabet)
        throw ParseError("missing alphabet: block");
    if (!have_states)
        throw ParseError("missing states: line");
    if (!have_initial)
        throw ParseError("missing initial: line");
    Alphabet alphabet = detail::alphabet_from_events(std::move(events));
    std::vector<Transition> transitions;
    for (const RawTransition& t : raw) {
        auto e = alphabet.find(t.event);
        if (!e)
            throw ParseError("transition uses undeclared event '" + t.event + "'");
        transitions.push_back({t.from, *e, t.to});
    }
    try {
        return Fsa(std::move(alphabet), state_count, initial, marked,
                   std::move(transitions));
    } catch (const ValidationError& err) {
        throw ParseError(err.what());
    }
}

inline std::string serialize_fsa(const Fsa& f) {
    std::ostringstream out;
    out << "alphabet:\n";
    for (const Event& e : f.alphabet().events())
        out << "  " << detail::format_event_decl(e) << "\n";
    out << "states: " << f.state_count() << "\n";
    out << "initial: " << f.initial() << "\n";
    out << "marked:";
    for (StateId s : f.marked_states())
        out << " " << s;
    out << "\n";
    out << "trans:\n";
    for (const Transition& t : f.transitions())
        out << "  " << t.from << " " << f.alphabet().event(t.event).name << " "
            << t.to << "\n";
    return out.str();
}

// --- finite-language files (.lang) ---

struct WordFile {
    Alphabet alphabet;
    std::vector<Word> words;
};

inline WordFile parse_lang(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::optional<Alphabet> alphabet;
    std::vector<Word> words;
    while (std::getline(in, line)) {
        std::string content = detail::strip_comment(line);
        std::vector<std::string> toks = detail::tokens_of(content);
        if (toks.empty())
            continue;
        if (!alphabet) {
            if (toks[0] != "alphabet:")
                throw ParseError("the first line must be an alphabet: header");
            auto colon = content.find(':');
            std::string decls = content.substr(colon + 1);
            std::vector<Event> events;
            std::size_t start = 0;
            while (start <= decls.size()) {
                std::size_t comma = decls.find(',', start);
                std::string part = decls.substr(
                    start, comma == std::string::npos ? std::string::npos
                                                      : comma - start);
                std::vector<std::string> decl_toks = detail::tokens_of(part);
                if (!decl_toks.empty())
                    events.push_back(detail::parse_event_decl(decl_toks));
                else if (comma != std::string::npos || !events.empty())
                    throw ParseError("empty event declaration in alphabet: header");
                if (comma == std::string::npos)
                    break;
                start = comma + 1;
            }
            alphabet = detail::alphabet_from_events(std::move(events));
            continue;
        }
        // A line that is exactly `eps` is the empty string (unless the
        // alphabet really declares an event of that name).
        if (toks.size() == 1 && toks[0] == "eps" && !alphabet->find("eps")) {
            words.push_back({});
            continue;
        }
        Word w;
        for (const std::string& name : toks) {
            auto e = alphabet->find(name);
            if (!e)
                throw ParseError("string uses undeclared event '" + name + "'");
            w.push_back(*e);
        }
        words.push_back(std::move(w));
    }
    if (!alphabet)
        throw ParseError("missing alphabet: header");
    return {*std::move(alphabet), std::move(words)};
}

inline std::string serialize_lang(const Alphabet& alphabet, std::vector<Word> words) {
    std::sort(words.begin(), words.end(),
              [&](const Word& x, const Word& y) { return alphabet.word_less(x, y); });
    words.erase(std::unique(words.begin(), words.end()), words.end());
    std::ostringstream out;
    out << "alphabet:";
    const char* sep = " ";
    for (const Event& e : alphabet.events()) {
        out << sep << detail::format_event_decl(e);
        sep = ", ";
    }
    out << "\n";
    for (const Word& w : words)
        out << format_word(alphabet, w) << "\n";
    return out.str();
}

// --- model loading ---

enum class ModelKind { automaton, words };

struct ModelFile {
    ModelKind kind;
    Lang language;
};

inline ModelKind kind_from_path(const std::string& path) {
    auto ends_with = [&](std::string_view suffix) {
        return path.size() >= suffix.size() &&
               std::string_view(path).substr(path.size() - suffix.size()) == suffix;
    };
    if (ends_with(".fsa"))
        return ModelKind::automaton;
    if (ends_with(".lang"))
        return ModelKind::words;
    throw ParseError("cannot tell the model kind of '" + path +
                     "' (expected a .fsa or .lang extension)");
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot write '" + path + "'");
    out << content;
    if (!out)
        throw ValidationError("write failed for '" + path + "'");
}

inline ModelFile parse_model(const std::string& text, ModelKind kind) {
    if (kind == ModelKind::automaton)
        return {kind, Lang::from_fsa(parse_fsa(text))};
    WordFile wf = parse_lang(text);
    return {kind, Lang::from_words(wf.alphabet, wf.words)};
}

inline ModelFile load_model(const std::string& path) {
    return parse_model(read_file(path), kind_from_path(path));
}

namespace detail {

/// Per-event id translation from one alphabet into another that must contain
/// every event of the first by name, with identical flags.
inline std::vector<EventId> event_map_onto(const Alphabet& from, const Alphabet& target) {
    std::vector<EventId> to_target(from.size());
    for (EventId e = 0; e < from.size(); ++e) {
        const Event& ev = from.event(e);
        auto t = target.find(ev.name);
        if (!t)
            throw ValidationError("event '" + ev.name +
                                  "' is not in the plant alphabet");
        if (target.event(*t) != ev)
            throw ValidationError(
                "event '" + ev.name +
                "' is declared with different o=/c= flags than in the plant");
        to_target[e] = *t;
    }
    return to_target;
}

} // namespace detail

inline std::vector<Word> remap_words(const Alphabet& from, const std::vector<Word>& words,
                                     const Alphabet& target) {
    if (from == target)
        return words;
    std::vector<EventId> to_target = detail::event_map_onto(from, target);
    std::vector<Word> out;
    out.reserve(words.size());
    for (const Word& w : words) {
        Word x;
        x.reserve(w.size());
        for (EventId e : w)
            x.push_back(to_target.at(e));
        out.push_back(std::move(x));
    }
    return out;
}

/// Rebuild a language over another alphabet that must contain every event of
/// the original by name, with identical flags. Strings are unchanged; events
/// of the target alphabet the original never mentions simply do not occur.
inline Lang remap_language(const Lang& l, const Alphabet& target) {
    if (l.alphabet() == target)
        return l;
    std::vector<EventId> to_target = detail::event_map_onto(l.alphabet(), target);
    const Fsa& r = l.recognizer();
    std::vector<Transition> transitions;
    for (const Transition& t : r.transitions())
        transitions.push_back({t.from, to_target[t.event], t.to});
    return Lang::from_fsa(Fsa(target, r.state_count(), r.initial(),
                              r.marked_states(), std::move(transitions)));
}

// --- synthesis traces ---

inline std::string format_trace_line(std::size_t iter, std::string_view phase,
                                     const LangSummary& s) {
    std::ostringstream out;
    out << "iter=" << iter << " phase=" << phase << " states=" << s.state_count;
    if (s.members.has_value()) {
        out << " strings={";
        const char* sep = "";
        for (const Word& w : s.members->words()) {
            out << sep << format_word(s.members->alphabet(), w);
            sep = ",";
        }
        out << "}";
    }
    return out.str();
}

inline std::string format_trace(const SynthesisTrace& t) {
    std::string out;
    for (const ObservabilityStep& s : t.steps) {
        out += format_trace_line(s.index, "F", s.core) + "\n";
        out += format_trace_line(s.index, "omega", s.iterate) + "\n";
    }
    return out;
}

/// Outer steps only; nested per-step observability traces, when recorded,
/// are for library callers.
inline std::string format_trace(const ControlTrace& t) {
    std::string out;
    for (const ControlStep& s : t.steps) {
        out += format_trace_line(s.index, "supC", s.controllable) + "\n";
        out += format_trace_line(s.index, "gamma", s.iterate) + "\n";
    }
    return out;
}

} // namespace relobs::io
