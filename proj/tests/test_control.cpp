#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "relobs/control.hpp"
#include "relobs/oracle.hpp"
#include "support/demo_instance.hpp"
#include "support/instances.hpp"
#include "support/words.hpp"

using namespace relobs;
using test_support::parse_word;
using test_support::parse_words;

namespace {

// A three-event instance where the interesting string survives synthesis but
// an observation-equivalent shorter one does not: after c1 the plant may
// silently take u, and only the u-path can be completed by c2.
struct SmallPlant {
    Alphabet alphabet{{
        {"c1", true, true},
        {"c2", true, true},
        {"u", false, false},
    }};
    std::vector<Word> m_words;
    std::vector<Word> c_words;
    Lang m;
    Lang c;
};

SmallPlant make_small() {
    Alphabet a({
        {"c1", true, true},
        {"c2", true, true},
        {"u", false, false},
    });
    std::vector<Word> m_words = parse_words(a, {"eps", "c1", "c1 u", "c1 u c2"});
    std::vector<Word> c_words = parse_words(a, {"eps", "c1", "c1 u c2"});
    Lang m = Lang::from_words(a, m_words);
    Lang c = Lang::from_words(a, c_words);
    return {a, m_words, c_words, m, c};
}

FiniteLang members_of(const LangSummary& s) {
    REQUIRE(s.members.has_value());
    return *s.members;
}

} // namespace

TEST_CASE("combined synthesis on the three-event instance") {
    SmallPlant sp = make_small();
    Problem p(sp.m, sp.c);

    ControlResult r = supremal_controllable_observable(p);
    Lang expected = Lang::from_words(sp.alphabet, parse_words(sp.alphabet, {"eps", "c1 u c2"}));
    CHECK(r.language == expected);

    // Matches the brute-force union of all controllable-and-observable
    // sublanguages (2^3 subsets here).
    FiniteLang brute = oracle::brute_sup_ctrl_relobs(FiniteLang(sp.alphabet, sp.c_words),
                                                     FiniteLang(sp.alphabet, sp.m_words));
    CHECK(oracle::lang_to_finite_exact(r.language, 8) == brute);

    // One shrinking step, one confirming step.
    REQUIRE(r.trace.steps.size() == 2);
    CHECK_FALSE(r.trace.steps[0].converged);
    CHECK(r.trace.steps[1].converged);
    // The specification is already controllable here; the first step's cut
    // comes entirely from the observability pass.
    CHECK(members_of(r.trace.steps[0].controllable) == FiniteLang(sp.alphabet, sp.c_words));
    CHECK(members_of(r.trace.steps[0].iterate) ==
          oracle::lang_to_finite_exact(expected, 8));
    CHECK_FALSE(r.trace.steps[0].inner.has_value());

    SECTION("nested traces are attached on request") {
        ControlOptions opts;
        opts.record_inner_steps = true;
        ControlResult nested = supremal_controllable_observable(p, opts);
        REQUIRE(nested.trace.steps.size() == 2);
        REQUIRE(nested.trace.steps[0].inner.has_value());
        CHECK(!nested.trace.steps[0].inner->steps.empty());
    }

    SECTION("the result is a fixpoint of the step operator") {
        CHECK(control_step(r.language, p) == r.language);
    }

    SECTION("membership test against the original problem") {
        CHECK(is_controllable_observable(r.language, p));
        CHECK(is_controllable_observable(Lang::empty(sp.alphabet), p));
        CHECK_FALSE(is_controllable_observable(sp.c, p));
        // {c1} alone is not controllable: the plant extends it by u.
        Lang c1_only = Lang::from_words(sp.alphabet, parse_words(sp.alphabet, {"c1"}));
        CHECK_FALSE(is_controllable_observable(c1_only, p));
    }

    SECTION("the iteration cap turns non-convergence into an error") {
        ControlOptions opts;
        opts.max_iterations = 1;
        CHECK_THROWS_AS(supremal_controllable_observable(p, opts), IterationLimitError);
    }
}

TEST_CASE("control step basics") {
    test_support::DemoInstance demo = test_support::make_demo();
    Problem p(demo.m, demo.c);

    SECTION("empty operand stays empty") {
        CHECK(is_empty(control_step(Lang::empty(demo.alphabet), p)));
    }

    SECTION("with no uncontrollable events one step equals the observability supremal") {
        // The worked example's alphabet is fully controllable, so the
        // controllable restriction is the identity and a single combined
        // step lands on the observability fixpoint.
        CHECK(control_step(demo.c, p) == demo.k2);
    }

    SECTION("the operand must live inside the specification") {
        CHECK_THROWS_AS(control_step(demo.m, p), ValidationError);
    }
}

TEST_CASE("combined synthesis reduces to observability synthesis without uncontrollable events") {
    test_support::DemoInstance demo = test_support::make_demo();
    Problem p(demo.m, demo.c);
    ControlResult combined = supremal_controllable_observable(p);
    CHECK(combined.language == demo.k2);
    CHECK(combined.language == supremal_observable(p).language);

    // Inner iteration caps propagate: the worked example needs three inner
    // steps, so a cap of two must surface as the iteration error.
    ControlOptions opts;
    opts.inner_max_iterations = 2;
    CHECK_THROWS_AS(supremal_controllable_observable(p, opts), IterationLimitError);
}

TEST_CASE("fully observable and controllable specifications are achievable as-is") {
    std::mt19937 rng(514001);
    for (int trial = 0; trial < 10; ++trial) {
        test_support::Instance inst = test_support::random_instance(rng);
        std::vector<Event> events;
        for (EventId e = 0; e < inst.alphabet.size(); ++e)
            events.push_back({inst.alphabet.event(e).name, true, true});
        Alphabet free(std::move(events));
        Problem p(Lang::from_words(free, inst.m_words), Lang::from_words(free, inst.c_words));
        ControlResult r = supremal_controllable_observable(p);
        CHECK(r.language == p.spec());
        CHECK(r.trace.steps.size() == 1);
    }
}

TEST_CASE("combined synthesis matches the brute-force supremal") {
    std::mt19937 rng(514002);
    int cut_by_control = 0;
    int cut_at_all = 0;
    for (int trial = 0; trial < 60; ++trial) {
        test_support::Instance inst = test_support::random_instance(rng);
        FiniteLang m_fin(inst.alphabet, inst.m_words);
        FiniteLang c_fin(inst.alphabet, inst.c_words);
        Problem p(oracle::finite_to_lang(m_fin), oracle::finite_to_lang(c_fin));

        ControlResult r = supremal_controllable_observable(p);
        FiniteLang brute = oracle::brute_sup_ctrl_relobs(c_fin, m_fin);
        CHECK(oracle::lang_to_finite_exact(r.language, 8) == brute);

        // Postconditions against the original problem.
        CHECK(is_controllable_observable(r.language, p));
        CHECK(control_step(r.language, p) == r.language);

        // The combined result sits inside each single-property supremal.
        Lang obs_only = supremal_observable(p).language;
        Lang ctrl_only = sup_controllable(p.spec(), p.plant());
        CHECK(is_subset(r.language, obs_only));
        CHECK(is_subset(r.language, ctrl_only));

        // Iterates descend.
        for (std::size_t i = 1; i < r.trace.steps.size(); ++i) {
            Lang prev = oracle::finite_to_lang(*r.trace.steps[i - 1].iterate.members);
            Lang cur = oracle::finite_to_lang(*r.trace.steps[i].iterate.members);
            CHECK(is_subset(cur, prev));
        }

        if (r.language != obs_only)
            ++cut_by_control;
        if (r.language != p.spec())
            ++cut_at_all;
    }
    // The corpus must exercise both synthesis dimensions.
    CHECK(cut_by_control > 3);
    CHECK(cut_at_all > 10);
}
