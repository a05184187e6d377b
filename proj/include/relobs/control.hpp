#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "relobs/supremal.hpp"
#include "relobs/synthesis.hpp"

namespace relobs {

/// One combined-synthesis step: restrict the operand to its supremal
/// controllable sublanguage against the plant, then take the largest
/// sublanguage of that restriction that is relatively observable against the
/// problem's original full-specification ambient (running the inner
/// iteration to convergence). Keeping the ambient fixed across outer steps
/// is what makes every fixpoint of this map a member of the combined family;
/// re-anchoring the ambient to the shrinking iterate would weaken the
/// observability requirement and admit fixpoints the definition rejects.
/// Always a sublanguage of the operand.
inline Lang control_step(const Lang& k, const Problem& p) {
    detail::require_same_alphabet(k, p.spec(), "control step");
    if (!is_subset(k, p.spec()))
        throw ValidationError(
            "control step: operand must be a sublanguage of the specification");
    Lang safe = sup_controllable(k, p.plant());
    return supremal_observable_within(p, safe).language;
}

/// Controllability plus relative observability, both against the original
/// problem (plant for the former, full specification ambient for the
/// latter).
inline bool is_controllable_observable(const Lang& k, const Problem& p) {
    return is_controllable(k, p.plant()) && is_relatively_observable(k, p);
}

struct ControlOptions {
    std::size_t max_iterations = 10000;
    std::size_t inner_max_iterations = 10000;
    bool record_members = true;
    /// Attach each step's full inner observability trace. Off by default;
    /// the nesting can dwarf the outer trace.
    bool record_inner_steps = false;
};

/// One application of control_step: the controllable restriction computed
/// from the previous iterate, the new iterate, and whether it equaled the
/// previous one.
struct ControlStep {
    std::size_t index = 0;
    LangSummary controllable;
    LangSummary iterate;
    bool converged = false;
    std::optional<SynthesisTrace> inner;
};

struct ControlTrace {
    std::vector<ControlStep> steps;
};

struct ControlResult {
    Lang language;
    ControlTrace trace;
};

/// Supremal controllable and relatively observable sublanguage of the
/// specification: iterate control_step from the specification until the
/// language stops changing. The chain descends and converges in finitely
/// many steps; the cap exists to turn an implementation bug into an error
/// instead of a hang.
inline ControlResult supremal_controllable_observable(const Problem& p,
                                                      const ControlOptions& opts = {}) {
    Lang k = p.spec();
    ControlTrace trace;
    SynthesisOptions inner_opts;
    inner_opts.max_iterations = opts.inner_max_iterations;
    inner_opts.record_members = opts.record_members;
    for (std::size_t j = 1; j <= opts.max_iterations; ++j) {
        Lang safe = sup_controllable(k, p.plant());
        SynthesisResult obs = supremal_observable_within(p, safe, inner_opts);
        Lang next = std::move(obs.language);
        bool converged = next == k;
        ControlStep step{j, summarize(safe, opts.record_members),
                         summarize(next, opts.record_members), converged,
                         std::nullopt};
        if (opts.record_inner_steps)
            step.inner = std::move(obs.trace);
        trace.steps.push_back(std::move(step));
        if (converged)
            return {std::move(next), std::move(trace)};
        k = std::move(next);
    }
    throw IterationLimitError("control synthesis: iteration cap exceeded");
}

} // namespace relobs
