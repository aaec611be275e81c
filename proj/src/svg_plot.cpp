#include "hazard_lfd/svg_plot.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace hazard_lfd {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 320.0;
constexpr double kMargin = 40.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

class Canvas {
public:
    Canvas(double y_lo, double y_hi, double x_lo, double x_hi)
        : y_lo_(y_lo), y_hi_(y_hi > y_lo ? y_hi : y_lo + 1.0), x_lo_(x_lo),
          x_hi_(x_hi > x_lo ? x_hi : x_lo + 1.0) {
        out_ = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
               num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + ' ' + num(kHeight) + "\">\n";
        out_ += "<style>.road-limit{stroke:#444;stroke-width:2}"
                ".lane-divider{stroke:#999;stroke-dasharray:8 6}"
                ".hazard{fill:#c44;fill-opacity:0.6;stroke:#822}"
                ".bound-upper,.bound-lower{fill:none;stroke:#26c;stroke-width:2}"
                ".mean{fill:none;stroke:#2a2;stroke-dasharray:4 3}"
                ".keyframe{fill:#222}.trigger{stroke:#e80;stroke-dasharray:2 2}"
                "text{font:12px sans-serif}</style>\n";
        out_ += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }

    [[nodiscard]] double px(double y) const {
        return kMargin + (y - y_lo_) / (y_hi_ - y_lo_) * (kWidth - 2.0 * kMargin);
    }
    [[nodiscard]] double py(double x) const {
        return kHeight - kMargin - (x - x_lo_) / (x_hi_ - x_lo_) * (kHeight - 2.0 * kMargin);
    }

    void line(const char* cls, double y0, double x0, double y1, double x1) {
        out_ += "<line class=\"" + std::string(cls) + "\" x1=\"" + num(px(y0)) + "\" y1=\"" +
                num(py(x0)) + "\" x2=\"" + num(px(y1)) + "\" y2=\"" + num(py(x1)) + "\"/>\n";
    }

    void rect(const char* cls, double y0, double x0, double y1, double x1) {
        const double left = px(std::min(y0, y1));
        const double top = py(std::max(x0, x1));
        out_ += "<rect class=\"" + std::string(cls) + "\" x=\"" + num(left) + "\" y=\"" + num(top) +
                "\" width=\"" + num(px(std::max(y0, y1)) - left) + "\" height=\"" +
                num(py(std::min(x0, x1)) - top) + "\"/>\n";
    }

    void polyline(const char* cls, const std::vector<std::pair<double, double>>& pts) {
        out_ += "<polyline class=\"" + std::string(cls) + "\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i > 0) out_ += ' ';
            out_ += num(px(pts[i].first)) + ',' + num(py(pts[i].second));
        }
        out_ += "\"/>\n";
    }

    void circle(const char* cls, double y, double x, double r) {
        out_ += "<circle class=\"" + std::string(cls) + "\" cx=\"" + num(px(y)) + "\" cy=\"" +
                num(py(x)) + "\" r=\"" + num(r) + "\"/>\n";
    }

    void text(double px_x, double px_y, const std::string& s) {
        out_ += "<text x=\"" + num(px_x) + "\" y=\"" + num(px_y) + "\">" + s + "</text>\n";
    }

    std::string finish() { return out_ + "</svg>\n"; }

private:
    double y_lo_, y_hi_, x_lo_, x_hi_;
    std::string out_;
};

}  // namespace

std::string envelope_to_svg(const ConstraintEnvelope& env) {
    double y_lo = env.ego.y;
    double y_hi = env.ego.y + env.horizon_m;
    for (const auto& p : env.points) {
        y_lo = std::min(y_lo, p.y);
        y_hi = std::max(y_hi, p.y);
    }
    for (const auto& h : env.hazards) {
        y_lo = std::min(y_lo, h.box_start_y());
        y_hi = std::max(y_hi, h.box_end_y());
    }
    double x_lo = env.road.right_limit;
    double x_hi = env.road.left_limit;
    for (const auto& h : env.hazards) {
        x_lo = std::min(x_lo, h.box_right_x());
        x_hi = std::max(x_hi, h.box_left_x());
    }
    Canvas c(y_lo, y_hi, x_lo - 0.5, x_hi + 0.5);

    c.line("road-limit", y_lo, env.road.right_limit, y_hi, env.road.right_limit);
    c.line("road-limit", y_lo, env.road.left_limit, y_hi, env.road.left_limit);
    c.line("lane-divider", y_lo, env.road.own_lane_left(), y_hi, env.road.own_lane_left());
    for (const auto& h : env.hazards) {
        c.rect("hazard", h.box_start_y(), h.box_right_x(), h.box_end_y(), h.box_left_x());
    }
    std::vector<std::pair<double, double>> upper, lower, mean;
    for (const auto& p : env.points) {
        upper.emplace_back(p.y, p.lateral_max);
        lower.emplace_back(p.y, p.lateral_min);
        mean.emplace_back(p.y, p.lateral_mean);
    }
    c.polyline("bound-upper", upper);
    c.polyline("bound-lower", lower);
    c.polyline("mean", mean);
    c.text(kMargin, 20.0,
           "envelope: " + std::to_string(env.points.size()) + " points, horizon " +
               num(env.horizon_m) + " m, " + std::to_string(env.hazards.size()) + " hazard(s)");
    return c.finish();
}

std::string model_to_svg(const ScenarioModel& model) {
    const BandCurves band = fit_band(band_knots(model));
    double y_lo = -model.d_thresh;
    double y_hi = 0.0;
    double x_lo = 0.0;
    double x_hi = 0.0;
    for (const auto& k : model.keyframes) {
        y_lo = std::min(y_lo, k.y_mu);
        y_hi = std::max(y_hi, k.y_mu);
        x_lo = std::min(x_lo, k.lateral_mu - k.lateral_sigma);
        x_hi = std::max(x_hi, k.lateral_mu + k.lateral_sigma);
    }
    Canvas c(y_lo - 2.0, y_hi + 2.0, x_lo - 0.5, x_hi + 0.5);
    c.line("trigger", -model.d_thresh, x_lo - 0.5, -model.d_thresh, x_hi + 0.5);

    std::vector<std::pair<double, double>> upper, lower, mean;
    const double lo = band.lateral_mean.min_y();
    const double hi = band.lateral_mean.max_y();
    const int steps = 200;
    for (int i = 0; i <= steps; ++i) {
        const double y = lo + (hi - lo) * static_cast<double>(i) / steps;
        const BandSample s = sample_band(band, y);
        upper.emplace_back(y, s.lateral_max);
        lower.emplace_back(y, s.lateral_min);
        mean.emplace_back(y, s.lateral_mean);
    }
    c.polyline("bound-upper", upper);
    c.polyline("bound-lower", lower);
    c.polyline("mean", mean);
    for (const auto& k : model.keyframes) c.circle("keyframe", k.y_mu, k.lateral_mu, 3.0);
    c.text(kMargin, 20.0,
           "model " + model.label.to_string() + ": d_thresh " + num(model.d_thresh) + " m, " +
               std::to_string(model.keyframes.size()) + " key-frames");
    return c.finish();
}

}  // namespace hazard_lfd
