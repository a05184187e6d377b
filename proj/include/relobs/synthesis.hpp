#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "relobs/finite_lang.hpp"
#include "relobs/lang.hpp"
#include "relobs/projection.hpp"
#include "relobs/supremal.hpp"

namespace relobs {

/// A plant/specification pair over a shared alphabet, plus the derived
/// languages every synthesis step needs (closures, the normality ambient,
/// and the per-event one-step extensions of the specification closure).
/// The specification must be a sublanguage of the plant; construction with
/// allow_spec_trim replaces it by its intersection with the plant instead of
/// rejecting.
class Problem {
public:
    Problem(Lang plant, Lang spec, bool allow_spec_trim = false)
        : m_(std::move(plant)),
          c_(std::move(spec)),
          mbar_(Lang::empty(m_.alphabet())),
          cbar_(Lang::empty(m_.alphabet())),
          ambient_(Lang::empty(m_.alphabet())) {
        if (m_.alphabet().empty())
            throw ValidationError("problem: alphabet must be nonempty");
        detail::require_same_alphabet(m_, c_, "problem");
        if (!is_subset(c_, m_)) {
            if (!allow_spec_trim)
                throw ValidationError(
                    "problem: specification is not a sublanguage of the plant");
            c_ = intersect(c_, m_);
        }
        mbar_ = prefix_closure(m_);
        cbar_ = prefix_closure(c_);
        ambient_ = intersect(cbar_, m_);
        const std::size_t k = m_.alphabet().size();
        for (EventId e = 0; e < k; ++e) {
            ext_.push_back(append_event(c_, e));
            ext_comp_.push_back(complement(ext_.back()));
            plant_ext_comp_.push_back(complement(intersect(mbar_, ext_.back())));
        }
    }

    const Alphabet& alphabet() const { return m_.alphabet(); }
    const Lang& plant() const { return m_; }
    const Lang& spec() const { return c_; }
    const Lang& plant_closure() const { return mbar_; }
    const Lang& spec_closure() const { return cbar_; }

    /// The normality ambient: plant words inside the specification closure.
    const Lang& ambient() const { return ambient_; }

    /// One-step extensions of the specification closure by the given event.
    const Lang& spec_extension(EventId e) const { return ext_.at(e); }
    const Lang& spec_extension_complement(EventId e) const { return ext_comp_.at(e); }

    /// Complement of the plant-feasible part of spec_extension(e).
    const Lang& feasible_extension_complement(EventId e) const {
        return plant_ext_comp_.at(e);
    }

private:
    Lang m_;
    Lang c_;
    Lang mbar_;
    Lang cbar_;
    Lang ambient_;
    std::vector<Lang> ext_;
    std::vector<Lang> ext_comp_;
    std::vector<Lang> plant_ext_comp_;
};

/// One-step extensions of the specification closure: {s e | s in spec
/// closure}, for an event given by name-free id.
inline Lang spec_extension(const Problem& p, EventId e) {
    if (e >= p.alphabet().size())
        throw ValidationError("spec extension: event id out of range");
    return p.spec_extension(e);
}

/// Strings that extend the closed operand by one event and are
/// observationally confusable with it: the union over events e of
/// lookalike(kbar ∩ spec_extension(e)) ∩ spec_extension(e). Such strings are
/// the candidates for violating one-step observational consistency.
inline Lang confusable_extensions(const Lang& kbar, const Problem& p) {
    detail::require_same_alphabet(kbar, p.spec(), "confusable extensions");
    if (!is_prefix_closed(kbar))
        throw ValidationError("confusable extensions: operand must be prefix-closed");
    Lang acc = Lang::empty(p.alphabet());
    for (EventId e = 0; e < p.alphabet().size(); ++e) {
        Lang hit = intersect(kbar, p.spec_extension(e));
        acc = union_of(acc, intersect(lookalike(hit), p.spec_extension(e)));
    }
    return acc;
}

/// The consistent core of k: the largest closed subset of k's closure all of
/// whose members keep every confusable plant-feasible one-step extension
/// inside the closure. Computed operator-by-operator:
///   kbar ∩ sup_closed( ⋂_e lookalike_interior(kbar ∪ feasible_extension_complement(e))
///                          ∪ spec_extension_complement(e) )
/// A word survives the e-th conjunct when either no lookalike word of it can
/// feasibly extend by e outside kbar, or it is not an e-extension at all.
inline Lang consistent_core(const Lang& k, const Problem& p) {
    detail::require_same_alphabet(k, p.spec(), "consistent core");
    if (!is_subset(k, p.spec()))
        throw ValidationError(
            "consistent core: operand must be a sublanguage of the specification");
    Lang kbar = prefix_closure(k);
    Lang inner = Lang::universal(p.alphabet());
    for (EventId e = 0; e < p.alphabet().size(); ++e) {
        Lang safe = lookalike_interior(union_of(kbar, p.feasible_extension_complement(e)));
        inner = intersect(inner, union_of(safe, p.spec_extension_complement(e)));
    }
    return intersect(kbar, sup_closed(inner));
}

/// One synthesis step: intersect the iterate with its consistent core, then
/// take the supremal normal sublanguage against the problem ambient. The
/// result is always a sublanguage of the operand.
inline Lang synthesis_step(const Lang& k, const Problem& p) {
    Lang core = consistent_core(k, p);
    return sup_normal(intersect(k, core), p.ambient());
}

/// Relative observability of k (ambient = the full specification closure),
/// via the two-part characterization: (a) every confusable plant-feasible
/// extension of the closure stays in the closure, and (b) k is normal with
/// respect to the problem ambient.
inline bool is_relatively_observable(const Lang& k, const Problem& p) {
    detail::require_same_alphabet(k, p.spec(), "relative observability test");
    if (!is_subset(k, p.spec()))
        throw ValidationError(
            "relative observability test: operand must be a sublanguage of the specification");
    Lang kbar = prefix_closure(k);
    if (!is_subset(intersect(confusable_extensions(kbar, p), p.plant_closure()), kbar))
        return false;
    return intersect(lookalike(k), p.ambient()) == k;
}

/// Size summary of a language recorded in synthesis traces; members are
/// enumerated only for finite languages with at most 1000 strings.
struct LangSummary {
    std::size_t state_count = 0;
    bool finite = false;
    std::optional<FiniteLang> members;
};

inline LangSummary summarize(const Lang& l, bool record_members = true) {
    LangSummary s;
    s.state_count = l.state_count();
    s.finite = is_finite(l);
    if (record_members && s.finite)
        s.members = all_words(l, 1000);
    return s;
}

struct SynthesisOptions {
    std::size_t max_iterations = 10000;
    bool record_members = true;
};

/// One application of synthesis_step: the consistent core computed from the
/// previous iterate, the new iterate, and whether it equaled the previous
/// one (which ends the run).
struct ObservabilityStep {
    std::size_t index = 0;
    LangSummary core;
    LangSummary iterate;
    bool converged = false;
};

struct SynthesisTrace {
    std::vector<ObservabilityStep> steps;
};

struct SynthesisResult {
    Lang language;
    SynthesisTrace trace;
};

/// Largest sublanguage of `start` that is relatively observable against the
/// problem's full-specification ambient: iterate synthesis_step from `start`
/// until the language stops changing. `start` must be a sublanguage of the
/// specification. The descending chain of regular iterates converges in
/// finitely many steps; the cap exists to turn an implementation bug into an
/// error instead of a hang.
inline SynthesisResult supremal_observable_within(const Problem& p, const Lang& start,
                                                  const SynthesisOptions& opts = {}) {
    detail::require_same_alphabet(start, p.spec(), "synthesis");
    if (!is_subset(start, p.spec()))
        throw ValidationError("synthesis: start must be a sublanguage of the specification");
    Lang k = start;
    SynthesisTrace trace;
    for (std::size_t j = 1; j <= opts.max_iterations; ++j) {
        Lang core = consistent_core(k, p);
        Lang next = sup_normal(intersect(k, core), p.ambient());
        bool converged = next == k;
        trace.steps.push_back({j, summarize(core, opts.record_members),
                               summarize(next, opts.record_members), converged});
        if (converged)
            return {std::move(next), std::move(trace)};
        k = std::move(next);
    }
    throw IterationLimitError("synthesis: iteration cap exceeded");
}

/// Supremal relatively observable sublanguage of the specification itself.
inline SynthesisResult supremal_observable(const Problem& p,
                                           const SynthesisOptions& opts = {}) {
    return supremal_observable_within(p, p.spec(), opts);
}

/// Worst-case state count of the supremal result, saturated to 2^64-1 when
/// it does not fit: ||plant|| * ||spec|| * 2^(||plant|| * ||spec||) + 1.
inline std::uint64_t nerode_bound(const Problem& p) {
    const std::uint64_t m = p.plant().state_count();
    const std::uint64_t c = p.spec().state_count();
    if (m != 0 && c > UINT64_MAX / m)
        return UINT64_MAX;
    const std::uint64_t mc = m * c;
    if (mc >= 64)
        return UINT64_MAX;
    unsigned __int128 bound = (unsigned __int128)mc << mc;
    bound += 1;
    if (bound > (unsigned __int128)UINT64_MAX)
        return UINT64_MAX;
    return static_cast<std::uint64_t>(bound);
}

} // namespace relobs
