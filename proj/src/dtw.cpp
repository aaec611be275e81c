#include "hazard_lfd/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hazard_lfd/error.hpp"

namespace hazard_lfd {

DtwResult dtw_align(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySequence, "DTW needs non-empty inputs");

    const std::size_t n = a.size();
    const std::size_t m = b.size();
    constexpr double inf = std::numeric_limits<double>::infinity();

    // (n+1) x (m+1) cumulative cost with an infinite border row/column.
    std::vector<double> acc((n + 1) * (m + 1), inf);
    const auto at = [m](std::size_t i, std::size_t j) { return i * (m + 1) + j; };
    acc[at(0, 0)] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            const double best = std::min({acc[at(i - 1, j - 1)], acc[at(i - 1, j)], acc[at(i, j - 1)]});
            acc[at(i, j)] = best + std::abs(a[i - 1] - b[j - 1]);
        }
    }

    DtwResult result;
    result.distance = acc[at(n, m)];

    // Backtrack; ties prefer the diagonal, then advancing in a, then in b.
    std::size_t i = n;
    std::size_t j = m;
    result.path.emplace_back(i - 1, j - 1);
    while (i > 1 || j > 1) {
        if (i == 1) {
            --j;
        } else if (j == 1) {
            --i;
        } else {
            const double diag = acc[at(i - 1, j - 1)];
            const double up = acc[at(i - 1, j)];
            const double left = acc[at(i, j - 1)];
            if (diag <= up && diag <= left) {
                --i;
                --j;
            } else if (up <= left) {
                --i;
            } else {
                --j;
            }
        }
        result.path.emplace_back(i - 1, j - 1);
    }
    std::reverse(result.path.begin(), result.path.end());
    return result;
}

}  // namespace hazard_lfd
