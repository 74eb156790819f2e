#pragma once

// Residual checks recomputed from factor matrices alone.  The CLI `run`
// command writes its factors to disk and then validates them through this
// same path, so a verification never trusts in-memory state.

#include "dqmat/io.hpp"
#include "dqmat/scalar.hpp"

namespace dqmat {

struct VerificationOutcome {
    std::vector<std::pair<std::string, double>> residuals;
    bool pass = true;

    void record(const std::string& name, double value, double tol) {
        residuals.emplace_back(name, value);
        if (!(value <= tol)) pass = false;
    }
};

// Loads inputs and factors named by the report (paths relative to dir) and
// recomputes every invariant of the recorded decomposition.
VerificationOutcome verify_report(const Report& rep, const std::string& dir);

}  // namespace dqmat
