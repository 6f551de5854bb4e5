// The acceptance checks P1..P8, shared by the `arctic validate` subcommand
// and the acceptance test binary. Every tolerance is pinned here.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dwsv {

struct CheckResult {
    std::string id;
    std::string description;
    bool passed = false;
    double measured = 0.0;   // worst-case metric across the check's cases
    double tolerance = 0.0;
    std::string detail;
};

// Runs the requested checks ("P1".."P8"; empty = all) at the given working
// precision. Progress notes go to `log` when non-null.
std::vector<CheckResult> run_acceptance_checks(const std::vector<std::string>& only,
                                               long precision_bits, std::ostream* log);

// {"checks":[{"check_id":...,"status":...,"measured":...,"tolerance":...},...]}
void write_report_json(std::ostream& os, const std::vector<CheckResult>& results);

} // namespace dwsv
