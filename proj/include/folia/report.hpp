// Machine- and human-readable run reports.  JSON output is byte-deterministic
// for fixed (model, parameters, seed): keys are sorted, numbers are printed
// through fixed formats, and volatile fields like wall time stay out of the
// JSON and appear only in the human table.

#pragma once

#include <map>
#include <string>
#include <vector>

namespace folia {

struct CheckResult {
    std::string name;
    bool pass = true;
    long long trials = 0;
    std::string max_residual; // "0" in exact mode, formatted float otherwise
    std::string detail;
};

struct Report {
    int schema = 1;
    std::string model;
    std::string command;
    std::map<std::string, std::string> params;
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;
    long long wall_ms = 0;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::string to_json() const;
    std::string to_text() const;
};

std::string format_double(double v);

} // namespace folia
