#pragma once
// Command-line front end. Exit codes:
//   0 success
//   1 usage error or other failure
//   2 too few usable demonstrations
//   3 malformed trajectory CSV
//   4 hazards stacked side by side
//   5 model does not match the road's traffic
//   6 infeasible driver profile
//   7 comparison across traffic conditions
//   8 malformed plot input

#include <ostream>
#include <string>
#include <vector>

namespace hazard_lfd::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kInsufficientDemos = 2,
    kMalformedCsv = 3,
    kUnsupportedOverlap = 4,
    kModelRoadMismatch = 5,
    kInfeasibleProfile = 6,
    kCrossTraffic = 7,
    kMalformedPlotInput = 8,
};

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace hazard_lfd::cli
