#pragma once
// Paired two-sample tests.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace hazard_lfd {

enum class TestMethod { PairedT, WilcoxonSignedRank, WilcoxonExact };

[[nodiscard]] std::string_view to_string(TestMethod method) noexcept;

struct TestResult {
    double statistic{0.0};
    /// Two-sided.
    double p_value{1.0};
    std::size_t n{0};
    TestMethod method{TestMethod::PairedT};
};

/// P(T <= t) for Student's t with `dof` degrees of freedom.
[[nodiscard]] double student_t_cdf(double t, double dof);

/// Standard normal CDF.
[[nodiscard]] double normal_cdf(double z);

/// 1-based ranks with ties sharing their mean rank.
[[nodiscard]] std::vector<double> mid_ranks(std::span<const double> values);

/// t = mean(d) / (sd(d) / sqrt(n)) for d = a - b, n - 1 degrees of freedom.
/// Throws LengthMismatch, InvalidArgument (n < 2), DegenerateSample (sd = 0).
[[nodiscard]] TestResult paired_t_test(std::span<const double> a, std::span<const double> b);

/// Signed-rank test on d = a - b with zero differences dropped. Statistic
/// is W = min(W+, W-). Exact null distribution for up to `exact_max_n`
/// nonzero pairs, normal approximation with continuity and tie correction
/// above. Throws LengthMismatch, AllZeroDifferences.
[[nodiscard]] TestResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                              std::size_t exact_max_n = 25);

}  // namespace hazard_lfd
