#include "fixtime/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace fixtime {

namespace {

constexpr double kWidth = 760.0;
constexpr double kPanelHeight = 220.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kGap = 40.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!std::isfinite(lo)) lo = hi = 0.0;
        if (hi - lo < 1e-300) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
};

}  // namespace

void write_svg(std::ostream& os, const std::string& title, std::span<const SvgPanel> panels) {
    const double plot_w = kWidth - kLeft - kRight;
    const double height = kTop + static_cast<double>(panels.size()) * (kPanelHeight + kGap);

    Range tr;
    for (const auto& p : panels)
        for (const auto& s : p.series)
            for (double t : s.t) tr.add(t);
    tr.pad();

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(height)
       << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
       << "</text>\n";

    for (std::size_t pi = 0; pi < panels.size(); ++pi) {
        const SvgPanel& panel = panels[pi];
        const double top = kTop + static_cast<double>(pi) * (kPanelHeight + kGap);
        auto yval = [&panel](double y) { return panel.log_y ? std::log10(std::max(std::fabs(y), panel.log_floor)) : y; };

        Range yr;
        for (const auto& s : panel.series)
            for (double y : s.y) yr.add(yval(y));
        yr.pad();

        auto px = [&](double t) { return kLeft + (t - tr.lo) / (tr.hi - tr.lo) * plot_w; };
        auto py = [&](double y) { return top + kPanelHeight - (yval(y) - yr.lo) / (yr.hi - yr.lo) * kPanelHeight; };
        auto py_raw = [&](double v) { return top + kPanelHeight - (v - yr.lo) / (yr.hi - yr.lo) * kPanelHeight; };

        os << "<g>\n<rect x=\"" << num(kLeft) << "\" y=\"" << num(top) << "\" width=\"" << num(plot_w)
           << "\" height=\"" << num(kPanelHeight) << "\" fill=\"none\" stroke=\"black\"/>\n";
        for (int k = 0; k <= 4; ++k) {
            const double tv = tr.lo + (tr.hi - tr.lo) * k / 4.0;
            const double yv = yr.lo + (yr.hi - yr.lo) * k / 4.0;
            os << "<text x=\"" << num(px(tv)) << "\" y=\"" << num(top + kPanelHeight + 14)
               << "\" text-anchor=\"middle\">" << tick(tv) << "</text>\n";
            const std::string label = panel.log_y ? "1e" + tick(yv) : tick(yv);
            os << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py_raw(yv) + 4) << "\" text-anchor=\"end\">"
               << label << "</text>\n";
        }
        os << "<text x=\"16\" y=\"" << num(top + kPanelHeight / 2) << "\" transform=\"rotate(-90 16 "
           << num(top + kPanelHeight / 2) << ")\" text-anchor=\"middle\">" << escape(panel.ylabel) << "</text>\n";

        for (std::size_t si = 0; si < panel.series.size(); ++si) {
            const SvgSeries& s = panel.series[si];
            const char* color = kPalette[si % std::size(kPalette)];
            os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
            const std::size_t n = std::min(s.t.size(), s.y.size());
            for (std::size_t i = 0; i < n; ++i) {
                if (!std::isfinite(s.y[i])) continue;
                os << num(px(s.t[i])) << ',' << num(py(s.y[i])) << (i + 1 < n ? " " : "");
            }
            os << "\"/>\n";
            const double ly = top + 14.0 + 14.0 * static_cast<double>(si);
            os << "<line x1=\"" << num(kLeft + plot_w + 10) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
               << num(kLeft + plot_w + 28) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << color << "\"/>\n";
            os << "<text x=\"" << num(kLeft + plot_w + 32) << "\" y=\"" << num(ly) << "\">" << escape(s.label)
               << "</text>\n";
        }
        os << "</g>\n";
    }
    os << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(height - 8) << "\" text-anchor=\"middle\">t</text>\n";
    os << "</svg>\n";
}

std::vector<SvgPanel> trajectory_panels(std::span<const LabeledTrajectory> runs, bool log_state,
                                        std::size_t max_points) {
    SvgPanel xs{log_state ? "|x|" : "x", {}, log_state};
    SvgPanel vs{"V", {}, false};
    SvgPanel us{"u", {}, false};
    for (const auto& run : runs) {
        const Trajectory& tr = *run.traj;
        const std::size_t stride = std::max<std::size_t>(1, (tr.size() + max_points - 1) / std::max<std::size_t>(1, max_points));
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < tr.size(); i += stride) idx.push_back(i);
        if (!tr.times.empty() && idx.back() != tr.size() - 1) idx.push_back(tr.size() - 1);

        std::vector<double> t;
        for (auto i : idx) t.push_back(tr.times[i]);
        for (std::size_t j = 0; j < tr.dim; ++j) {
            SvgSeries s{tr.dim == 1 ? run.label : run.label + " x" + std::to_string(j + 1), t, {}};
            for (auto i : idx) s.y.push_back(tr.states[i * tr.dim + j]);
            xs.series.push_back(std::move(s));
        }
        SvgSeries v{run.label, t, {}};
        SvgSeries u{run.label, t, {}};
        for (auto i : idx) {
            v.y.push_back(tr.V[i]);
            u.y.push_back(tr.controls[i]);
        }
        vs.series.push_back(std::move(v));
        us.series.push_back(std::move(u));
    }
    return {std::move(xs), std::move(vs), std::move(us)};
}

}  // namespace fixtime
