// mwb: construct and check Massey-vanishing witnesses over pro-2 groups
// built from free and Demushkin bricks. See README.md for the grammar.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "mwb/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Massey-vanishing witness workbench"};
    app.require_subcommand(1);

    mwb::CommandRequest request;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", request.format, "json or table");
        sub->add_flag("--deterministic", request.deterministic,
                      "byte-stable output (no timings)");
    };
    auto add_group = [&](CLI::App* sub, bool classes) {
        sub->add_option("--group", request.group_text, "group expression")->required();
        if (classes)
            sub->add_option("--classes", request.classes_text, "class sequence")->required();
    };

    auto* describe = app.add_subcommand("describe", "presentation, roles and H^1/H^2 data");
    add_group(describe, false);
    add_common(describe);

    auto* cup = app.add_subcommand("cup", "cup product of two classes");
    add_group(cup, true);
    add_common(cup);

    auto* admissible = app.add_subcommand("admissible", "consecutive cup products vanish?");
    add_group(admissible, true);
    add_common(admissible);

    auto* witness = app.add_subcommand("witness", "build and verify a witness");
    add_group(witness, true);
    add_common(witness);

    auto* oracle = app.add_subcommand("oracle", "exhaustive witness search");
    add_group(oracle, true);
    oracle->add_option("--n", request.n, "expected sequence length (cross-check)");
    oracle->add_option("--budget", request.budget, "node budget (default MWB_BUDGET or built-in)");
    add_common(oracle);

    auto* audit = app.add_subcommand("audit", "strong Massey vanishing audit");
    add_group(audit, false);
    audit->add_option("--n", request.n, "sequence length")->required();
    audit->add_option("--mode", request.mode, "exhaustive or sampled");
    audit->add_option("--count", request.count, "sampled sequences");
    audit->add_option("--seed", request.seed, "sampling seed");
    add_common(audit);

    auto* corpus = app.add_subcommand("corpus", "generate expression corpus");
    corpus->add_option("--family", request.family, "ee2 or et");
    corpus->add_option("--seed", request.seed, "generator seed");
    corpus->add_option("--count", request.count, "generated expressions");
    corpus->add_option("--max-bricks", request.max_bricks, "bricks per expression");
    corpus->add_option("--max-d", request.max_d, "max generators per brick");
    add_common(corpus);

    auto* selftest = app.add_subcommand("selftest", "invariant suites and corpus audits");
    selftest->add_option("--family", request.family, "ee2 or et");
    selftest->add_option("--seed", request.seed, "corpus seed");
    add_common(selftest);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    request.command = app.get_subcommands().front()->get_name();
    mwb::RunResult result = mwb::run(request);
    std::fputs(result.output.c_str(), stdout);
    return result.exit_code;
}
