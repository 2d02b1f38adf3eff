#pragma once

#include <string>
#include <vector>

#include "vacbrown/dispersion.hpp"

namespace vacbrown::cli {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// The fast suite takes well under a second; full adds grids and the
// regulator ladder.
std::vector<CheckResult> run_validation(bool full, const DispersionOptions& options);

}  // namespace vacbrown::cli
