#include "hazard_lfd/spline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hazard_lfd/error.hpp"

namespace hazard_lfd {

CubicSpline fit_natural_cubic(std::span<const Knot> knots) {
    const std::size_t n = knots.size();
    if (n < 2) throw Error(ErrorCode::TooFewKnots, "spline needs at least 2 knots");
    for (std::size_t i = 1; i < n; ++i) {
        if (!(knots[i].y > knots[i - 1].y)) {
            throw Error(ErrorCode::DuplicateAbscissa,
                        "knot abscissae must strictly increase (index " + std::to_string(i) + ")");
        }
    }

    // Second derivatives M_i; M_0 = M_{n-1} = 0. Thomas algorithm on the
    // interior system h_{i-1} M_{i-1} + 2(h_{i-1}+h_i) M_i + h_i M_{i+1} = rhs_i.
    std::vector<double> h(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = knots[i + 1].y - knots[i].y;

    std::vector<double> m(n, 0.0);
    if (n > 2) {
        const std::size_t interior = n - 2;
        std::vector<double> diag(interior);
        std::vector<double> rhs(interior);
        for (std::size_t k = 0; k < interior; ++k) {
            const std::size_t i = k + 1;
            diag[k] = 2.0 * (h[i - 1] + h[i]);
            rhs[k] = 6.0 * ((knots[i + 1].value - knots[i].value) / h[i] -
                            (knots[i].value - knots[i - 1].value) / h[i - 1]);
        }
        for (std::size_t k = 1; k < interior; ++k) {
            const double w = h[k] / diag[k - 1];
            diag[k] -= w * h[k];
            rhs[k] -= w * rhs[k - 1];
        }
        m[interior] = rhs[interior - 1] / diag[interior - 1];
        for (std::size_t k = interior - 1; k-- > 0;) {
            m[k + 1] = (rhs[k] - h[k + 1] * m[k + 2]) / diag[k];
        }
    }

    CubicSpline spline;
    spline.knots_.assign(knots.begin(), knots.end());
    spline.segments_.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        auto& s = spline.segments_[i];
        s.a = knots[i].value;
        s.b = (knots[i + 1].value - knots[i].value) / h[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
        s.c = m[i] / 2.0;
        s.d = (m[i + 1] - m[i]) / (6.0 * h[i]);
    }
    return spline;
}

std::size_t CubicSpline::segment_index(double y, bool from_left) const noexcept {
    // First knot strictly greater than y (or >= y when approaching from the left).
    const auto it = from_left
                        ? std::lower_bound(knots_.begin(), knots_.end(), y,
                                           [](const Knot& k, double v) { return k.y < v; })
                        : std::upper_bound(knots_.begin(), knots_.end(), y,
                                           [](double v, const Knot& k) { return v < k.y; });
    const auto idx = static_cast<std::size_t>(std::distance(knots_.begin(), it));
    if (idx == 0) return 0;
    return std::min(idx - 1, segments_.size() - 1);
}

double CubicSpline::evaluate(std::size_t seg, double y) const noexcept {
    const Segment& s = segments_[seg];
    const double t = y - knots_[seg].y;
    return s.a + t * (s.b + t * (s.c + t * s.d));
}

double CubicSpline::operator()(double y) const {
    if (!(y >= min_y() && y <= max_y())) {
        throw Error(ErrorCode::OutOfDomain, "y = " + std::to_string(y) + " outside [" +
                                                std::to_string(min_y()) + ", " +
                                                std::to_string(max_y()) + "]");
    }
    return clamped(y);
}

double CubicSpline::clamped(double y) const noexcept {
    if (y <= min_y()) return knots_.front().value;
    if (y >= max_y()) return knots_.back().value;
    return evaluate(segment_index(y, false), y);
}

double CubicSpline::derivative(double y, int order, bool from_left) const {
    if (!(y >= min_y() && y <= max_y())) {
        throw Error(ErrorCode::OutOfDomain, "derivative requested outside the spline domain");
    }
    const std::size_t seg = segment_index(y, from_left);
    const Segment& s = segments_[seg];
    const double t = y - knots_[seg].y;
    switch (order) {
        case 1: return s.b + t * (2.0 * s.c + 3.0 * t * s.d);
        case 2: return 2.0 * s.c + 6.0 * t * s.d;
        case 3: return 6.0 * s.d;
        default:
            throw Error(ErrorCode::InvalidArgument, "derivative order must be 1, 2 or 3");
    }
}

MaxError max_error_point(const CubicSpline& spline, std::span<const Knot> channel) {
    if (channel.empty()) throw Error(ErrorCode::EmptyChannel, "no samples to compare");
    MaxError best{0, -1.0};
    for (std::size_t i = 0; i < channel.size(); ++i) {
        const double err = std::abs(channel[i].value - spline(channel[i].y));
        if (err > best.error) best = {i, err};
    }
    return best;
}

CubicSpline piecewise_combine(std::span<const Knot> knots_a, std::span<const Knot> knots_b,
                              double junction_y) {
    std::vector<Knot> merged;
    for (const Knot& k : knots_a) {
        if (k.y < junction_y) merged.push_back(k);
    }
    const std::size_t from_a = merged.size();
    for (const Knot& k : knots_b) {
        if (k.y >= junction_y) merged.push_back(k);
    }
    if (from_a == 0 || merged.size() == from_a) {
        throw Error(ErrorCode::EmptySide, "both knot sets must contribute around the junction");
    }
    // a-knots lie strictly below the junction and b-knots at or above it, so
    // a stable sort keeps each side's order and duplicate abscissae can only
    // arise within one side.
    std::stable_sort(merged.begin(), merged.end(),
                     [](const Knot& l, const Knot& r) { return l.y < r.y; });
    return fit_natural_cubic(merged);
}

}  // namespace hazard_lfd
