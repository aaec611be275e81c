#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace hazard_lfd {

/// Monotone alignment from (0, 0) to (n-1, m-1) using unit steps
/// (1,0), (0,1) and (1,1).
using WarpPath = std::vector<std::pair<std::size_t, std::size_t>>;

struct DtwResult {
    WarpPath path;
    double distance{0.0};
};

/// Classic dynamic time warping with local cost |a_i - b_j| and no band.
/// Throws EmptySequence if either input is empty.
[[nodiscard]] DtwResult dtw_align(std::span<const double> a, std::span<const double> b);

}  // namespace hazard_lfd
