#pragma once

// The acceptance suite: one entry per criterion, each printing a pass/fail
// line. Shared by the `verify` CLI subcommand and the acceptance test binary.

#include <iosfwd>
#include <string>
#include <vector>

namespace dpc::accept {

struct Result {
    int id;
    bool pass;
    std::string detail;
};

/// Runs criteria 1..10 (or a single one when `only` > 0) against the data
/// directory holding the fixtures; logs one line per criterion.
std::vector<Result> run(const std::string& data_dir, std::ostream& log, int only = 0);

bool all_pass(const std::vector<Result>& results);

}  // namespace dpc::accept
