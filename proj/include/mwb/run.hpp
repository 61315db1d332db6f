#pragma once

#include <cstdint>
#include <string>

namespace mwb {

/// One CLI invocation. Unset numeric fields keep their defaults; budget 0
/// means "use MWB_BUDGET from the environment, else the built-in default".
struct CommandRequest {
    std::string command; // describe|cup|admissible|witness|oracle|audit|corpus|selftest
    std::string group_text;
    std::string classes_text;
    int n = 0;
    std::string mode = "exhaustive"; // audit: exhaustive|sampled
    int count = 200;                 // audit samples / corpus size
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
    std::string family = "ee2"; // ee2|et
    int max_bricks = 3;
    int max_d = 4;
    std::string format = "json"; // json|table
    bool deterministic = false;
};

struct RunResult {
    int exit_code = 0;     // 0 ok, 1 mathematical negative, 2 usage/parse error
    std::string output;    // report, newline-terminated
};

RunResult run(const CommandRequest& request);

} // namespace mwb
