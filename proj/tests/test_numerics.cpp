#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "test_support.hpp"

#include "hazard_lfd/dtw.hpp"
#include "hazard_lfd/rng.hpp"
#include "hazard_lfd/spline.hpp"

using namespace hazard_lfd;
using test_support::Gen;

namespace {

std::vector<Knot> random_knots(Gen& g, std::size_t n) {
    std::vector<Knot> k;
    double y = g.uniform(-50, 0);
    for (std::size_t i = 0; i < n; ++i) {
        y += g.uniform(0.2, 6.0);
        k.push_back({y, g.uniform(-3, 3)});
    }
    return k;
}

// Exhaustive minimum over every monotone warp path.
double enumerate_dtw(const std::vector<double>& a, const std::vector<double>& b, std::size_t i,
                     std::size_t j) {
    const double here = std::abs(a[i] - b[j]);
    if (i + 1 == a.size() && j + 1 == b.size()) return here;
    double best = std::numeric_limits<double>::infinity();
    if (i + 1 < a.size()) best = std::min(best, enumerate_dtw(a, b, i + 1, j));
    if (j + 1 < b.size()) best = std::min(best, enumerate_dtw(a, b, i, j + 1));
    if (i + 1 < a.size() && j + 1 < b.size()) best = std::min(best, enumerate_dtw(a, b, i + 1, j + 1));
    return here + best;
}

void check_path_shape(const WarpPath& p, std::size_t n, std::size_t m) {
    REQUIRE(!p.empty());
    CHECK(p.front() == std::pair<std::size_t, std::size_t>{0, 0});
    CHECK(p.back() == std::pair<std::size_t, std::size_t>{n - 1, m - 1});
    for (std::size_t k = 1; k < p.size(); ++k) {
        const auto di = p[k].first - p[k - 1].first;
        const auto dj = p[k].second - p[k - 1].second;
        CHECK(di <= 1);
        CHECK(dj <= 1);
        CHECK(di + dj >= 1);
    }
}

}  // namespace

TEST_CASE("spline: hand-solved three-knot example") {
    const std::vector<Knot> knots{{0, 0}, {1, 1}, {2, 0}};
    const CubicSpline s = fit_natural_cubic(knots);
    // M1 = -3, so S(y) = -0.5 y^3 + 1.5 y on [0, 1].
    CHECK(std::abs(s(0.5) - 0.6875) < 1e-9);
    CHECK(std::abs(s(1.0) - 1.0) < 1e-12);
    const auto seg = s.segments()[0];
    CHECK(std::abs(seg.a) < 1e-12);
    CHECK(std::abs(seg.b - 1.5) < 1e-12);
    CHECK(std::abs(seg.c) < 1e-12);
    CHECK(std::abs(seg.d + 0.5) < 1e-12);
    CHECK(std::abs(s.derivative(1.0, 2) + 3.0) < 1e-12);
    CHECK(std::abs(s(1.5) - 0.6875) < 1e-9);
}

TEST_CASE("spline: linear cases") {
    const CubicSpline line = fit_natural_cubic(std::vector<Knot>{{0, 0}, {1, 1}, {2, 2}});
    CHECK(std::abs(line(0.5) - 0.5) < 1e-12);
    CHECK(std::abs(line(1.7) - 1.7) < 1e-12);
    const CubicSpline two = fit_natural_cubic(std::vector<Knot>{{0, 0}, {1, 1}});
    CHECK(std::abs(two(0.25) - 0.25) < 1e-12);
    CHECK(two.segments().size() == 1);
    CHECK(two.segments()[0].c == 0.0);
    CHECK(two.segments()[0].d == 0.0);
}

TEST_CASE("spline: errors and domain") {
    CHECK_THROWS_CODE(fit_natural_cubic(std::vector<Knot>{{0, 0}}), ErrorCode::TooFewKnots);
    CHECK_THROWS_CODE(fit_natural_cubic(std::vector<Knot>{{0, 0}, {0, 1}}),
                      ErrorCode::DuplicateAbscissa);
    CHECK_THROWS_CODE(fit_natural_cubic(std::vector<Knot>{{1, 0}, {0, 1}}),
                      ErrorCode::DuplicateAbscissa);
    const CubicSpline s = fit_natural_cubic(std::vector<Knot>{{0, 0}, {1, 1}, {2, 0}});
    CHECK_THROWS_CODE(s(2.0 + 1e-9), ErrorCode::OutOfDomain);
    CHECK_THROWS_CODE(s(-1e-9), ErrorCode::OutOfDomain);
    CHECK(s.clamped(5.0) == 0.0);
    CHECK(s.clamped(-5.0) == 0.0);
    CHECK(eval(s, 1.0) == 1.0);
}

TEST_CASE("property: spline interpolates, is natural and C2") {
    Gen g(101);
    for (int trial = 0; trial < 300; ++trial) {
        const auto knots = random_knots(g, static_cast<std::size_t>(g.integer(2, 25)));
        const CubicSpline s = fit_natural_cubic(knots);
        for (const auto& k : knots) CHECK(std::abs(s(k.y) - k.value) < 1e-9);
        CHECK(std::abs(s.derivative(s.min_y(), 2)) < 1e-9);
        CHECK(std::abs(s.derivative(s.max_y(), 2, true)) < 1e-9);
        for (std::size_t i = 1; i + 1 < knots.size(); ++i) {
            const double y = knots[i].y;
            for (int order : {1, 2}) {
                const double left = s.derivative(y, order, true);
                const double right = s.derivative(y, order, false);
                CHECK(std::abs(left - right) <= 1e-6 * std::max({1.0, std::abs(left), std::abs(right)}));
            }
            // Sampled stencils confined to the neighbouring segments.
            const double h = std::min(knots[i].y - knots[i - 1].y, knots[i + 1].y - knots[i].y) / 4.0;
            const auto fn = [&](double v) { return s(v); };
            const auto left = test_support::one_sided_derivatives(fn, y, h, true);
            const auto right = test_support::one_sided_derivatives(fn, y, h, false);
            CHECK(std::abs(left.first - right.first) <=
                  1e-6 * std::max({1.0, std::abs(left.first), std::abs(right.first)}));
            CHECK(std::abs(left.second - right.second) <=
                  1e-6 * std::max({1.0, std::abs(left.second), std::abs(right.second)}));
        }
    }
}

TEST_CASE("max_error_point") {
    const CubicSpline line = fit_natural_cubic(std::vector<Knot>{{0, 0}, {2, 2}});
    const std::vector<Knot> channel{{0, 0}, {0.5, 0.5}, {1, 2}, {1.5, 1.5}, {2, 2}};
    const MaxError e = max_error_point(line, channel);
    CHECK(e.index == 2);
    CHECK(e.error == doctest::Approx(1.0));

    const std::vector<Knot> exact{{0, 0}, {0.7, 0.7}, {2, 2}};
    const MaxError z = max_error_point(line, exact);
    CHECK(z.index == 0);
    CHECK(z.error < 1e-12);

    CHECK_THROWS_CODE(max_error_point(line, std::vector<Knot>{}), ErrorCode::EmptyChannel);
    CHECK_THROWS_CODE(max_error_point(line, std::vector<Knot>{{3, 0}}), ErrorCode::OutOfDomain);
}

TEST_CASE("max_error_point agrees with a brute-force scan") {
    std::vector<Knot> channel;
    for (int i = 0; i <= 400; ++i) {
        const double y = i * 0.05;
        channel.push_back({y, std::sin(y)});
    }
    const CubicSpline chord = fit_natural_cubic(std::vector<Knot>{channel.front(), channel.back()});
    std::size_t best = 0;
    double worst = -1.0;
    for (std::size_t i = 0; i < channel.size(); ++i) {
        const double err = std::abs(channel[i].value - chord(channel[i].y));
        if (err > worst) {
            worst = err;
            best = i;
        }
    }
    const MaxError e = max_error_point(chord, channel);
    CHECK(e.index == best);
    CHECK(e.error == worst);
}

TEST_CASE("dtw: examples") {
    const std::vector<double> a{1, 2, 3};
    const DtwResult same = dtw_align(a, a);
    CHECK(same.distance == 0.0);
    CHECK(same.path == WarpPath{{0, 0}, {1, 1}, {2, 2}});

    const DtwResult single = dtw_align(std::vector<double>{0}, std::vector<double>{5});
    CHECK(single.distance == 5.0);
    CHECK(single.path == WarpPath{{0, 0}});

    const DtwResult stretched = dtw_align(a, std::vector<double>{1, 2, 2, 3});
    CHECK(stretched.distance == 0.0);
    check_path_shape(stretched.path, 3, 4);

    CHECK_THROWS_CODE(dtw_align(std::vector<double>{}, a), ErrorCode::EmptySequence);
    CHECK_THROWS_CODE(dtw_align(a, std::vector<double>{}), ErrorCode::EmptySequence);
}

TEST_CASE("property: dtw equals the exhaustive path minimum") {
    Gen g(202);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = g.values(static_cast<std::size_t>(g.integer(1, 8)), -2, 2);
        const auto b = g.values(static_cast<std::size_t>(g.integer(1, 8)), -2, 2);
        const DtwResult r = dtw_align(a, b);
        const double oracle = enumerate_dtw(a, b, 0, 0);
        CHECK(std::abs(r.distance - oracle) < 1e-12);
        check_path_shape(r.path, a.size(), b.size());
        double along = 0.0;
        for (const auto& [i, j] : r.path) along += std::abs(a[i] - b[j]);
        CHECK(std::abs(along - r.distance) < 1e-12);
        CHECK(std::abs(dtw_align(b, a).distance - r.distance) < 1e-12);
    }
}

TEST_CASE("property: dtw distance is zero exactly for order-preserving matches") {
    Gen g(303);
    for (int trial = 0; trial < 100; ++trial) {
        const auto base = g.values(static_cast<std::size_t>(g.integer(1, 6)), -1, 1);
        std::vector<double> repeated;
        for (double v : base) {
            const int copies = g.integer(1, 3);
            for (int c = 0; c < copies; ++c) repeated.push_back(v);
        }
        CHECK(dtw_align(base, repeated).distance == 0.0);
        std::vector<double> moved = repeated;
        moved[static_cast<std::size_t>(g.integer(0, static_cast<int>(moved.size()) - 1))] += 0.5;
        CHECK(dtw_align(base, moved).distance > 0.0);
    }
}

TEST_CASE("piecewise_combine") {
    const std::vector<Knot> a{{-10, 0}, {-5, 1}};
    const std::vector<Knot> b{{5, 1}, {10, 0}};
    const CubicSpline merged = piecewise_combine(a, b, 0.0);
    CHECK(merged == fit_natural_cubic(std::vector<Knot>{{-10, 0}, {-5, 1}, {5, 1}, {10, 0}}));

    const std::vector<Knot> k{{0, 0}, {1, 2}, {3, 1}, {4, 4}};
    CHECK(piecewise_combine(k, k, 2.0) == fit_natural_cubic(k));

    CHECK_THROWS_CODE(piecewise_combine(a, b, -20.0), ErrorCode::EmptySide);
    CHECK_THROWS_CODE(piecewise_combine(a, b, 20.0), ErrorCode::EmptySide);
}

TEST_CASE("piecewise_combine keeps the b knot on shared abscissae") {
    const std::vector<Knot> a{{-4, 0}, {0, 9}, {2, 9}};
    const std::vector<Knot> b{{-1, 5}, {0, 1}, {3, 0}};
    const CubicSpline s = piecewise_combine(a, b, 0.0);
    CHECK(s == fit_natural_cubic(std::vector<Knot>{{-4, 0}, {0, 1}, {3, 0}}));
}

TEST_CASE("property: piecewise_combine is the direct fit on the merged set") {
    Gen g(404);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_knots(g, static_cast<std::size_t>(g.integer(1, 10)));
        const auto b = random_knots(g, static_cast<std::size_t>(g.integer(1, 10)));
        const double junction = g.uniform(-20, 20);
        std::vector<Knot> merged;
        for (const auto& k : a) {
            if (k.y < junction) merged.push_back(k);
        }
        for (const auto& k : b) {
            if (k.y >= junction) merged.push_back(k);
        }
        const bool a_side = std::any_of(a.begin(), a.end(), [&](const Knot& k) { return k.y < junction; });
        const bool b_side = std::any_of(b.begin(), b.end(), [&](const Knot& k) { return k.y >= junction; });
        if (!a_side || !b_side) {
            CHECK_THROWS_CODE(piecewise_combine(a, b, junction), ErrorCode::EmptySide);
            continue;
        }
        std::sort(merged.begin(), merged.end(), [](const Knot& l, const Knot& r) { return l.y < r.y; });
        if (merged.size() < 2) {
            CHECK_THROWS_CODE(piecewise_combine(a, b, junction), ErrorCode::TooFewKnots);
            continue;
        }
        const CubicSpline direct = fit_natural_cubic(merged);
        const CubicSpline combined = piecewise_combine(a, b, junction);
        REQUIRE(combined.segments().size() == direct.segments().size());
        for (std::size_t i = 0; i < direct.segments().size(); ++i) {
            CHECK(combined.segments()[i] == direct.segments()[i]);
        }
    }
}

TEST_CASE("SplitMix64 reference outputs") {
    SplitMix64 rng(1234567);
    CHECK(rng.next() == 6457827717110365317ULL);
    CHECK(rng.next() == 3203168211198807973ULL);
    CHECK(rng.next() == 9817491932198370423ULL);
    CHECK(rng.next() == 4593380528125082431ULL);
    CHECK(rng.next() == 16408922859458223821ULL);
}

TEST_CASE("SplitMix64 uniform and normal draws") {
    SplitMix64 rng(99);
    double sum = 0.0;
    double sum_sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        CHECK_FALSE((u < 0.0 || u >= 1.0));
        const double z = rng.normal();
        sum += z;
        sum_sq += z * z;
    }
    CHECK(std::abs(sum / n) < 0.02);
    CHECK(std::abs(sum_sq / n - 1.0) < 0.02);
}
