// Command-line front end: model-file parsing, synthesis commands, property
// checks with witnesses, individual language operators, and the brute-force
// reference suite.
//
// Exit codes: 0 success (or property holds), 1 parse/usage error,
// 2 validation error, 3 property check failed (witness on stdout when one
// exists). Diagnostics go to stderr; results go to files.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "relobs/control.hpp"
#include "relobs/io.hpp"
#include "relobs/oracle.hpp"
#include "relobs/synthesis.hpp"

using namespace relobs;

namespace {

Lang load_remapped(const std::string& path, const Alphabet& target) {
    return io::remap_language(io::load_model(path).language, target);
}

void emit_members(const Lang& l, std::size_t max_len) {
    FiniteLang members = enumerate_words(l, max_len);
    for (const Word& w : members.words())
        std::cout << format_word(members.alphabet(), w) << "\n";
}

struct SynthArgs {
    std::string plant;
    std::string spec;
    std::string out;
    std::string trace;
    std::size_t max_iter = 10000;
    bool allow_trim = false;
    int enumerate_len = -1;
};

int run_synth(const SynthArgs& a, bool combined) {
    io::ModelFile plant = io::load_model(a.plant);
    Lang spec = load_remapped(a.spec, plant.language.alphabet());
    Problem p(plant.language, std::move(spec), a.allow_trim);
    Lang result = Lang::empty(p.alphabet());
    std::string trace_text;
    if (combined) {
        ControlOptions opts;
        opts.max_iterations = a.max_iter;
        opts.inner_max_iterations = a.max_iter;
        ControlResult r = supremal_controllable_observable(p, opts);
        result = std::move(r.language);
        trace_text = io::format_trace(r.trace);
    } else {
        SynthesisOptions opts;
        opts.max_iterations = a.max_iter;
        SynthesisResult r = supremal_observable(p, opts);
        result = std::move(r.language);
        trace_text = io::format_trace(r.trace);
    }
    io::write_file(a.out, io::serialize_fsa(result.recognizer()));
    if (!a.trace.empty())
        io::write_file(a.trace, trace_text);
    if (a.enumerate_len >= 0)
        emit_members(result, static_cast<std::size_t>(a.enumerate_len));
    return 0;
}

int report_failure(const Alphabet& a, const char* what, const std::optional<Word>& w) {
    std::cerr << "property does not hold: " << what << "\n";
    if (w)
        std::cout << "witness: " << format_word(a, *w) << "\n";
    return 3;
}

int check_normal(const Lang& k, const Lang& ambient) {
    if (!is_subset(k, ambient))
        return report_failure(k.alphabet(), "normality (operand leaves the ambient)",
                              shortest_word(difference(k, ambient)));
    if (is_normal(k, ambient))
        return 0;
    // Witness: a member whose observation class escapes, i.e. one removed by
    // the supremal-normal restriction.
    return report_failure(k.alphabet(), "normality",
                          shortest_word(difference(k, sup_normal(k, ambient))));
}

int check_relobs(const Lang& k, const Problem& p) {
    Lang kbar = prefix_closure(k);
    Lang escaped = difference(
        intersect(confusable_extensions(kbar, p), p.plant_closure()), kbar);
    if (!is_empty(escaped))
        return report_failure(p.alphabet(), "one-step observational consistency",
                              shortest_word(escaped));
    if (intersect(lookalike(k), p.ambient()) != k)
        return check_normal(k, p.ambient());
    return 0;
}

int check_controllable(const Lang& k, const Problem& p) {
    if (is_controllable(k, p.plant()))
        return 0;
    Lang kbar = prefix_closure(k);
    Lang bad = Lang::empty(p.alphabet());
    for (EventId u : p.alphabet().uncontrollable_ids())
        bad = union_of(bad, difference(intersect(append_event(kbar, u),
                                                 p.plant_closure()),
                                       kbar));
    return report_failure(p.alphabet(), "controllability", shortest_word(bad));
}

struct CheckArgs {
    std::string kind;
    std::string in;
    std::string plant;
    std::string spec;
    bool allow_trim = false;
};

int run_check(const CheckArgs& a) {
    io::ModelFile plant = io::load_model(a.plant);
    Lang spec = load_remapped(a.spec, plant.language.alphabet());
    Problem p(plant.language, std::move(spec), a.allow_trim);
    Lang k = load_remapped(a.in, p.alphabet());

    if (a.kind == "normal")
        return check_normal(k, p.ambient());
    if (a.kind == "controllable")
        return check_controllable(k, p);
    if (a.kind == "relobs" || a.kind == "ctrlobs") {
        if (!is_subset(k, p.spec()))
            throw ValidationError(
                "check: the language must be a sublanguage of the specification");
        if (a.kind == "ctrlobs") {
            int rc = check_controllable(k, p);
            if (rc != 0)
                return rc;
        }
        return check_relobs(k, p);
    }
    throw ParseError("unknown check kind '" + a.kind +
                     "' (expected relobs, normal, controllable, or ctrlobs)");
}

struct OpsArgs {
    std::string op;
    std::vector<std::string> operands;
    std::string out;
    int enumerate_len = -1;
};

int run_ops(const OpsArgs& a) {
    auto arity = [&](std::size_t n) {
        if (a.operands.size() != n)
            throw ParseError("ops " + a.op + ": expected " + std::to_string(n) +
                             " operand(s), got " + std::to_string(a.operands.size()));
    };
    auto load = [&](std::size_t i) { return io::load_model(a.operands[i]).language; };

    std::optional<Lang> result;
    if (a.op == "project") {
        arity(1);
        result = project(load(0));
    } else if (a.op == "inverse-project") {
        arity(2);
        Lang lo = load(0);
        Lang target = load(1);
        result = inverse_project(lo, target.alphabet());
    } else if (a.op == "complement") {
        arity(1);
        result = complement(load(0));
    } else if (a.op == "union" || a.op == "intersect") {
        arity(2);
        Lang x = load(0);
        Lang y = load_remapped(a.operands[1], x.alphabet());
        result = a.op == "union" ? union_of(x, y) : intersect(x, y);
    } else if (a.op == "closure") {
        arity(1);
        result = prefix_closure(load(0));
    } else if (a.op == "append-sigma") {
        arity(2);
        Lang l = load(0);
        result = append_event(l, l.alphabet().require(a.operands[1]));
    } else if (a.op == "supn") {
        arity(2);
        Lang k = load(0);
        Lang h = load_remapped(a.operands[1], k.alphabet());
        result = sup_normal(k, h);
    } else if (a.op == "supf") {
        arity(1);
        result = sup_closed(load(0));
    } else if (a.op == "supc") {
        arity(2);
        Lang k = load(0);
        Lang m = load_remapped(a.operands[1], k.alphabet());
        result = sup_controllable(k, m);
    } else {
        throw ParseError("unknown op '" + a.op +
                         "' (expected project, inverse-project, complement, union, "
                         "intersect, closure, append-sigma, supn, supf, or supc)");
    }

    if (result->alphabet().empty())
        throw ValidationError(
            "the result automaton has an empty alphabet and cannot be serialized");
    io::write_file(a.out, io::serialize_fsa(result->recognizer()));
    if (a.enumerate_len >= 0)
        emit_members(*result, static_cast<std::size_t>(a.enumerate_len));
    return 0;
}

struct OracleArgs {
    std::string op;
    std::vector<std::string> operands;
    std::string out;
};

int run_oracle(const OracleArgs& a) {
    auto arity = [&](std::size_t n) {
        if (a.operands.size() != n)
            throw ParseError("oracle " + a.op + ": expected " + std::to_string(n) +
                             " operand(s), got " + std::to_string(a.operands.size()));
    };
    auto load = [&](std::size_t i,
                    const Alphabet* target) -> FiniteLang {
        const std::string& path = a.operands[i];
        if (io::kind_from_path(path) != io::ModelKind::words)
            throw ParseError("oracle operands must be .lang files, got '" + path + "'");
        io::WordFile wf = io::parse_lang(io::read_file(path));
        if (target == nullptr)
            return FiniteLang(wf.alphabet, wf.words);
        return FiniteLang(*target,
                          io::remap_words(wf.alphabet, wf.words, *target));
    };
    auto write = [&](const FiniteLang& f) {
        if (a.out.empty())
            throw ParseError("oracle " + a.op + ": --out is required");
        io::write_file(a.out, io::serialize_lang(f.alphabet(), f.words()));
        return 0;
    };

    if (a.op == "sup-relobs" || a.op == "sup-ctrl-relobs" ||
        a.op == "sup-controllable" || a.op == "sup-normal") {
        arity(2);
        FiniteLang x = load(0, nullptr);
        FiniteLang y = load(1, &x.alphabet());
        if (a.op == "sup-relobs")
            return write(oracle::brute_sup_relobs(x, y));
        if (a.op == "sup-ctrl-relobs")
            return write(oracle::brute_sup_ctrl_relobs(x, y));
        if (a.op == "sup-controllable")
            return write(oracle::brute_sup_controllable(x, y));
        return write(oracle::brute_sup_normal(x, y));
    }
    if (a.op == "sup-closed") {
        arity(1);
        return write(oracle::brute_sup_closed(load(0, nullptr)));
    }
    if (a.op == "check-relobs") {
        arity(3);
        FiniteLang k = load(0, nullptr);
        FiniteLang c = load(1, &k.alphabet());
        FiniteLang m = load(2, &k.alphabet());
        if (oracle::check_relobs_definition(k, c, m))
            return 0;
        std::cerr << "property does not hold: relative observability (by definition)\n";
        return 3;
    }
    if (a.op == "check-controllable") {
        arity(2);
        FiniteLang k = load(0, nullptr);
        FiniteLang m = load(1, &k.alphabet());
        if (oracle::check_controllable_definition(k, m))
            return 0;
        std::cerr << "property does not hold: controllability (by definition)\n";
        return 3;
    }
    throw ParseError("unknown oracle op '" + a.op +
                     "' (expected sup-relobs, sup-ctrl-relobs, sup-normal, "
                     "sup-closed, sup-controllable, check-relobs, or "
                     "check-controllable)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"regular-language toolkit: synthesis of supremal relatively "
                 "observable (and controllable) sublanguages"};
    app.require_subcommand(1);

    SynthArgs supobs_args;
    CLI::App* supobs = app.add_subcommand(
        "supobs", "compute the supremal relatively observable sublanguage");
    SynthArgs supcobs_args;
    CLI::App* supcobs = app.add_subcommand(
        "supcobs",
        "compute the supremal controllable and relatively observable sublanguage");
    for (auto [cmd, args] : {std::pair{supobs, &supobs_args},
                             std::pair{supcobs, &supcobs_args}}) {
        cmd->add_option("--plant", args->plant, "plant model file (.fsa or .lang)")
            ->required();
        cmd->add_option("--spec", args->spec, "specification model file")->required();
        cmd->add_option("--out", args->out, "output automaton file")->required();
        cmd->add_option("--trace", args->trace, "write the iteration trace here");
        cmd->add_option("--max-iter", args->max_iter, "iteration cap")
            ->default_val(std::size_t{10000});
        cmd->add_flag("--allow-spec-trim", args->allow_trim,
                      "intersect the specification with the plant instead of "
                      "rejecting non-sublanguage specifications");
        cmd->add_option("--enumerate", args->enumerate_len,
                        "print result members up to this length on stdout");
    }

    CheckArgs check_args;
    CLI::App* check = app.add_subcommand("check", "check a property of a language");
    check->add_option("kind", check_args.kind,
                      "relobs | normal | controllable | ctrlobs")
        ->required();
    check->add_option("--in", check_args.in, "language to check")->required();
    check->add_option("--plant", check_args.plant, "plant model file")->required();
    check->add_option("--spec", check_args.spec, "specification model file")
        ->required();
    check->add_flag("--allow-spec-trim", check_args.allow_trim,
                    "intersect the specification with the plant");

    OpsArgs ops_args;
    CLI::App* ops = app.add_subcommand("ops", "apply a single language operator");
    ops->add_option("op", ops_args.op,
                    "project | inverse-project | complement | union | intersect | "
                    "closure | append-sigma | supn | supf | supc")
        ->required();
    ops->add_option("operands", ops_args.operands,
                    "operand files (append-sigma takes a file and an event name)");
    ops->add_option("--out", ops_args.out, "output automaton file")->required();
    ops->add_option("--enumerate", ops_args.enumerate_len,
                    "print result members up to this length on stdout");

    OracleArgs oracle_args;
    CLI::App* oracle_cmd = app.add_subcommand(
        "oracle", "brute-force reference computations on finite languages");
    oracle_cmd
        ->add_option("op", oracle_args.op,
                     "sup-relobs | sup-ctrl-relobs | sup-normal | sup-closed | "
                     "sup-controllable | check-relobs | check-controllable")
        ->required();
    oracle_cmd->add_option("operands", oracle_args.operands, "operand .lang files");
    oracle_cmd->add_option("--out", oracle_args.out, "output .lang file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (supobs->parsed())
            return run_synth(supobs_args, false);
        if (supcobs->parsed())
            return run_synth(supcobs_args, true);
        if (check->parsed())
            return run_check(check_args);
        if (ops->parsed())
            return run_ops(ops_args);
        if (oracle_cmd->parsed())
            return run_oracle(oracle_args);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const IterationLimitError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
