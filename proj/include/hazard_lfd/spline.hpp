#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hazard_lfd {

struct Knot {
    double y{0.0};
    double value{0.0};

    friend bool operator==(const Knot&, const Knot&) = default;
};

/// Natural cubic spline through an ordered knot set.
///
/// On [y_i, y_{i+1}] the value is a + b t + c t^2 + d t^3 with t = y - y_i.
/// The second derivative vanishes at both end knots; with two knots the
/// spline is the straight segment between them.
class CubicSpline {
public:
    struct Segment {
        double a{0.0};
        double b{0.0};
        double c{0.0};
        double d{0.0};

        friend bool operator==(const Segment&, const Segment&) = default;
    };

    [[nodiscard]] std::span<const Knot> knots() const noexcept { return knots_; }
    [[nodiscard]] std::span<const Segment> segments() const noexcept { return segments_; }
    [[nodiscard]] double min_y() const noexcept { return knots_.front().y; }
    [[nodiscard]] double max_y() const noexcept { return knots_.back().y; }

    /// Throws OutOfDomain outside [min_y, max_y].
    [[nodiscard]] double operator()(double y) const;

    /// Value with y clamped into the domain: endpoint values are held outside.
    [[nodiscard]] double clamped(double y) const noexcept;

    /// Analytic derivative of order 1..3. At an interior knot the segment
    /// starting there is used unless `from_left` is set.
    [[nodiscard]] double derivative(double y, int order, bool from_left = false) const;

    friend bool operator==(const CubicSpline&, const CubicSpline&) = default;

private:
    friend CubicSpline fit_natural_cubic(std::span<const Knot> knots);

    [[nodiscard]] std::size_t segment_index(double y, bool from_left) const noexcept;
    [[nodiscard]] double evaluate(std::size_t seg, double y) const noexcept;

    std::vector<Knot> knots_;
    std::vector<Segment> segments_;
};

/// Throws TooFewKnots (< 2) or DuplicateAbscissa (y not strictly increasing).
[[nodiscard]] CubicSpline fit_natural_cubic(std::span<const Knot> knots);

[[nodiscard]] inline double eval(const CubicSpline& spline, double y) { return spline(y); }

struct MaxError {
    std::size_t index{0};
    double error{0.0};
};

/// Sample maximizing |value - S(y)|, smallest index on ties.
/// Throws EmptyChannel for an empty channel, OutOfDomain if a sample lies
/// outside the spline domain.
[[nodiscard]] MaxError max_error_point(const CubicSpline& spline, std::span<const Knot> channel);

/// One natural spline through {a-knots with y < junction} and
/// {b-knots with y >= junction}. On equal abscissae the b-knot wins.
/// Throws EmptySide if either side contributes nothing.
[[nodiscard]] CubicSpline piecewise_combine(std::span<const Knot> knots_a,
                                            std::span<const Knot> knots_b, double junction_y);

}  // namespace hazard_lfd
