#pragma once

// Commands as functions from a JSON parameter object to a JSON report.
// The command line, the replay harness, the fixtures file and the Python
// module all go through run_command, so a saved report carries everything
// needed to reproduce it.

#include <cstdint>
#include <string>
#include <vector>

#include "ramsey/coloring.hpp"
#include "ramsey/error.hpp"
#include "ramsey/json_io.hpp"

namespace ramsey {

struct RunOptions {
    std::uint64_t max_nodes = default_max_nodes();
    std::uint64_t max_colorings = 1u << 16;
    int jobs = 1;
    bool normalize = false;  // accept non-canonical trees in params
};

struct Outcome {
    Json report;
    int exit_code = 0;
};

/// 0 holds, 1 fails, 3 cap.
int exit_code_for(Verdict v) noexcept;
/// 1 for NotFoundWithinBound and PrerequisiteFailed, 3 for
/// ResourceCapExceeded, 2 otherwise.
int exit_code_for(Errc e) noexcept;

/// "trees info", "hj search", ...
const std::vector<std::string>& command_names();

/// Throws Error for bad parameters; search outcomes are reported, not thrown.
Outcome run_command(const std::string& command, const Json& params, const RunOptions& opts = {});

/// Re-derives the verdict of a saved report. Counterexamples are replayed
/// against the rebuilt instance and certificates are re-verified; holds
/// verdicts without a certificate go through the unpruned checker, and
/// commands without a search are recomputed.
Outcome replay_report(const Json& report, const RunOptions& opts = {});

struct FixtureSpec {
    std::string id;
    std::string command;
    Json params;
    std::vector<std::string> keep;  // report fields stored in the fixture
};

const std::vector<FixtureSpec>& standard_fixtures();
/// {"id", "command", "params", "result"}.
Json compute_fixture(const FixtureSpec& spec, const RunOptions& opts = {});

}  // namespace ramsey
