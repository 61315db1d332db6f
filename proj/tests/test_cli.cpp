#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "mwb/dsl.hpp"
#include <json.hpp>

#include "mwb/run.hpp"

using namespace mwb;

namespace {

std::string golden_path(const std::string& name) {
    return std::string(MWB_GOLDEN_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

CommandRequest deterministic(const std::string& command) {
    CommandRequest request;
    request.command = command;
    request.deterministic = true;
    return request;
}

} // namespace

TEST_CASE("parse_group accepts the grammar") {
    CHECK(group_text(*parse_group("prod(c2, c2)")) == "prod(c2,c2)");
    CHECK(group_text(*parse_group("demushkin(case=4, d=3, f=inf)")) ==
          "demushkin(case=4,d=3,f=inf)");
    CHECK(group_text(*parse_group("free(2; 1, -1+2^3)")) == "free(2;1,-1+2^3)");
    CHECK(group_text(*parse_group("free(1; res:5/4)")) == "free(1;res:5/4)");
    CHECK(group_text(*parse_group("semi( prod( c2 , semi(c2) ) )")) == "semi(prod(c2,semi(c2)))");
    CHECK(group_text(*parse_group("triv")) == "triv");
    CHECK(group_text(*parse_group(" demushkin( case = 4 , d = 1 , f = inf ) ")) == "c2");
}

TEST_CASE("parse_group rejects bad input with positions") {
    CHECK_THROWS_AS(parse_group("demushkin(case=1, d=3, f=2)"), ParseError);
    try {
        parse_group("prod(c2, ");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.col == 10);
    }
    CHECK_THROWS_AS(parse_group("free(2; 1)"), ParseError);     // arity mismatch
    CHECK_THROWS_AS(parse_group("free(1; res:4/4)"), ParseError); // even residue
    CHECK_THROWS_AS(parse_group("c2 c2"), ParseError);          // trailing input
    CHECK_THROWS_AS(parse_group("demushkin(case=1, d=2, f=1)"), ParseError);
}

TEST_CASE("parse -> serialize -> parse is the identity") {
    for (const char* text :
         {"c2", "triv", "prod(c2,c2)", "semi(c2)", "semi(prod(c2,semi(c2)))",
          "free(3;1,-1,res:7/5)", "demushkin(case=2,d=4,f=3)",
          "prod(demushkin(case=3,d=2,f=2),free(1;1+2^inf))"}) {
        auto expr = parse_group(text);
        std::string canon = group_text(*expr);
        CHECK(group_text(*parse_group(canon)) == canon);
    }
}

TEST_CASE("parse_sequence") {
    auto c2 = parse_group("c2");
    auto reg = h1_basis(*c2);
    auto seq = parse_sequence("[x1*; 0; x1*]", reg);
    CHECK(seq.n() == 3);
    CHECK(seq.classes[0] == CohClass(1, 1));
    CHECK(seq.classes[1].is_zero());
    CHECK(sequence_text(seq, reg) == "[x1*; 0; x1*]");

    auto semi = parse_group("semi(c2)");
    auto sreg = h1_basis(*semi);
    auto sseq = parse_sequence("[x1*+z*; z*; x1*+z*]", sreg);
    CHECK(sseq.classes[0] == CohClass(0b11, 2));
    CHECK(sseq.classes[1] == CohClass(0b10, 2));
    CHECK(sequence_text(sseq, sreg) == "[x1*+z*; z*; x1*+z*]");

    CHECK_THROWS_AS(parse_sequence("[y*]", reg), ParseError);       // unknown and short
    CHECK_THROWS_AS(parse_sequence("[x1*]", reg), ParseError);      // length < 2
    CHECK_THROWS_AS(parse_sequence("[x1*; y*]", reg), ParseError);  // unknown name
}

TEST_CASE("exit codes") {
    auto witness = deterministic("witness");
    witness.group_text = "semi(c2)";
    witness.classes_text = "[x1*+z*; z*; x1*+z*]";
    CHECK(run(witness).exit_code == 0);

    auto oracle = deterministic("oracle");
    oracle.group_text = "c2";
    oracle.classes_text = "[x1*; x1*; 0]";
    oracle.n = 3;
    CHECK(run(oracle).exit_code == 1);

    auto inadmissible = deterministic("witness");
    inadmissible.group_text = "c2";
    inadmissible.classes_text = "[x1*; x1*; x1*]";
    CHECK(run(inadmissible).exit_code == 1);

    auto bad = deterministic("describe");
    bad.group_text = "demushkin(case=1, d=3, f=2)";
    CHECK(run(bad).exit_code == 2);

    auto unparsable = deterministic("describe");
    unparsable.group_text = "prod(c2";
    CHECK(run(unparsable).exit_code == 2);

    auto admissible = deterministic("admissible");
    admissible.group_text = "c2";
    admissible.classes_text = "[x1*; 0; x1*]";
    CHECK(run(admissible).exit_code == 0);
    admissible.classes_text = "[x1*; x1*; 0]";
    CHECK(run(admissible).exit_code == 1);
}

TEST_CASE("deterministic output is byte-identical across runs") {
    auto request = deterministic("witness");
    request.group_text = "semi(c2)";
    request.classes_text = "[x1*+z*; z*; x1*+z*]";
    auto first = run(request);
    auto second = run(request);
    CHECK(first.output == second.output);

    auto audit = deterministic("audit");
    audit.group_text = "prod(c2,c2)";
    audit.n = 3;
    audit.mode = "exhaustive";
    CHECK(run(audit).output == run(audit).output);
}

TEST_CASE("golden reports") {
    struct Golden {
        const char* file;
        CommandRequest request;
        int exit_code;
    };
    std::vector<Golden> goldens;

    {
        auto r = deterministic("describe");
        r.group_text = "semi(c2)";
        goldens.push_back({"describe_semi_c2.json", r, 0});
    }
    {
        auto r = deterministic("witness");
        r.group_text = "semi(c2)";
        r.classes_text = "[x1*+z*; z*; x1*+z*]";
        goldens.push_back({"witness_semi_c2.json", r, 0});
    }
    {
        auto r = deterministic("oracle");
        r.group_text = "c2";
        r.classes_text = "[x1*; x1*; 0]";
        goldens.push_back({"oracle_c2_none.json", r, 1});
    }
    {
        auto r = deterministic("cup");
        r.group_text = "prod(c2,c2)";
        r.classes_text = "[x1*; x2*]";
        goldens.push_back({"cup_dihedral.json", r, 0});
    }
    {
        auto r = deterministic("audit");
        r.group_text = "semi(c2)";
        r.n = 4;
        r.mode = "exhaustive";
        goldens.push_back({"audit_semi_c2_n4.json", r, 0});
    }
    {
        auto r = deterministic("corpus");
        r.family = "ee2";
        r.seed = 1;
        r.count = 4;
        r.max_bricks = 2;
        goldens.push_back({"corpus_ee2_seed1.json", r, 0});
    }

    for (const auto& golden : goldens) {
        CAPTURE(golden.file);
        auto result = run(golden.request);
        CHECK(result.exit_code == golden.exit_code);
        CHECK(result.output == read_file(golden_path(golden.file)));
    }
}

TEST_CASE("reports round-trip losslessly through the serialized form") {
    auto request = deterministic("describe");
    request.group_text = "semi(prod(c2,c2))";
    auto result = run(request);
    auto parsed = nlohmann::json::parse(result.output);
    CHECK(parsed.dump(2) + "\n" == result.output);
}
