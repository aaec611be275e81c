#include "hazard_lfd/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/erf.hpp>

#include "hazard_lfd/error.hpp"

namespace hazard_lfd {

namespace {

void check_lengths(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw Error(ErrorCode::LengthMismatch, "paired samples have " + std::to_string(a.size()) +
                                                   " and " + std::to_string(b.size()) + " values");
    }
}

}  // namespace

std::string_view to_string(TestMethod method) noexcept {
    switch (method) {
        case TestMethod::PairedT: return "paired_t";
        case TestMethod::WilcoxonSignedRank: return "wilcoxon";
        case TestMethod::WilcoxonExact: return "wilcoxon_exact";
    }
    return "unknown";
}

double student_t_cdf(double t, double dof) {
    if (!(dof > 0.0)) throw Error(ErrorCode::InvalidArgument, "degrees of freedom must be positive");
    if (std::isinf(t)) return t > 0.0 ? 1.0 : 0.0;
    const double x = dof / (dof + t * t);
    const double tail = 0.5 * boost::math::ibeta(dof / 2.0, 0.5, x);
    return t > 0.0 ? 1.0 - tail : tail;
}

double normal_cdf(double z) { return 0.5 * boost::math::erfc(-z / std::sqrt(2.0)); }

std::vector<double> mid_ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

TestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
    check_lengths(a, b);
    const std::size_t n = a.size();
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "paired t-test needs at least 2 pairs");
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : d) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd == 0.0 || std::all_of(d.begin(), d.end(), [&](double v) { return v == d.front(); })) {
        throw Error(ErrorCode::DegenerateSample, "all paired differences are identical");
    }
    const double t = mean / (sd / std::sqrt(static_cast<double>(n)));
    const double dof = static_cast<double>(n - 1);
    const double p = 2.0 * student_t_cdf(-std::abs(t), dof);
    return {t, std::min(p, 1.0), n, TestMethod::PairedT};
}

TestResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                std::size_t exact_max_n) {
    check_lengths(a, b);
    std::vector<double> d;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) d.push_back(a[i] - b[i]);
    }
    if (d.empty()) throw Error(ErrorCode::AllZeroDifferences, "all paired differences are zero");
    const std::size_t n = d.size();

    std::vector<double> magnitude(n);
    std::transform(d.begin(), d.end(), magnitude.begin(), [](double v) { return std::abs(v); });
    const std::vector<double> ranks = mid_ranks(magnitude);
    double w_plus = 0.0;
    double w_minus = 0.0;
    for (std::size_t i = 0; i < n; ++i) (d[i] > 0.0 ? w_plus : w_minus) += ranks[i];
    const double w = std::min(w_plus, w_minus);

    if (n <= exact_max_n) {
        // Mid-ranks are multiples of 1/2, so doubled ranks are integers and
        // the null distribution of 2*W+ is a subset-sum count.
        std::vector<int> doubled(n);
        for (std::size_t i = 0; i < n; ++i) doubled[i] = static_cast<int>(std::lround(2.0 * ranks[i]));
        const int total = std::accumulate(doubled.begin(), doubled.end(), 0);
        std::vector<double> count(static_cast<std::size_t>(total) + 1, 0.0);
        count[0] = 1.0;
        int reach = 0;
        for (int r : doubled) {
            for (int s = reach; s >= 0; --s) count[static_cast<std::size_t>(s + r)] += count[static_cast<std::size_t>(s)];
            reach += r;
        }
        const long observed = std::lround(2.0 * w);
        double extreme = 0.0;
        for (int s = 0; s <= total; ++s) {
            if (std::min(s, total - s) <= observed) extreme += count[static_cast<std::size_t>(s)];
        }
        const double p = extreme / std::ldexp(1.0, static_cast<int>(n));
        return {w, std::min(p, 1.0), n, TestMethod::WilcoxonExact};
    }

    const double nn = static_cast<double>(n);
    const double mean = nn * (nn + 1.0) / 4.0;
    double tie_term = 0.0;
    std::vector<double> sorted = magnitude;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && sorted[j] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }
    const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
    const double z = std::min(w - mean + 0.5, 0.0) / std::sqrt(var);
    const double p = 2.0 * normal_cdf(z);
    return {w, std::min(p, 1.0), n, TestMethod::WilcoxonSignedRank};
}

}  // namespace hazard_lfd
