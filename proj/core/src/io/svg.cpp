#include "forcycle/io/svg.hpp"

#include "forcycle/errors.hpp"
#include "forcycle/scalar_family.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>
#include <sstream>
#include <string>

namespace forcycle::io {

namespace {

constexpr double kWidth = 800.0, kHeight = 600.0;
constexpr double kLeft = 70.0, kRight = 780.0, kTop = 30.0, kBottom = 550.0;

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

/// Affine chart from data coordinates to pixels; the vertical axis is
/// flipped so the data minimum sits at the bottom.
struct Chart {
    double x_lo, x_hi, y_lo, y_hi;
    double x(double v) const {
        return kLeft + (v - x_lo) / (x_hi - x_lo) * (kRight - kLeft);
    }
    double y(double v) const {
        return kBottom - (v - y_lo) / (y_hi - y_lo) * (kBottom - kTop);
    }
};

void open_svg(std::ostringstream& os) {
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
       << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
       << "\">\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" fill=\"white\"/>\n";
}

void frame(std::ostringstream& os) {
    os << "<rect x=\"" << px(kLeft) << "\" y=\"" << px(kTop) << "\" width=\""
       << px(kRight - kLeft) << "\" height=\"" << px(kBottom - kTop)
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
}

void text_at(std::ostringstream& os, double x, double y, const std::string& t,
             const std::string& anchor = "middle", const std::string& fill = "black") {
    os << "<text x=\"" << px(x) << "\" y=\"" << px(y) << "\" font-family=\"monospace\""
       << " font-size=\"14\" text-anchor=\"" << anchor << "\" fill=\"" << fill
       << "\">" << t << "</text>\n";
}

void tick_x(std::ostringstream& os, const Chart& ch, double v, const std::string& lbl) {
    const double x = ch.x(v);
    os << "<line x1=\"" << px(x) << "\" y1=\"" << px(kBottom) << "\" x2=\"" << px(x)
       << "\" y2=\"" << px(kBottom + 6) << "\" stroke=\"black\"/>\n";
    text_at(os, x, kBottom + 22, lbl);
}

void tick_y(std::ostringstream& os, const Chart& ch, double v, const std::string& lbl) {
    const double y = ch.y(v);
    os << "<line x1=\"" << px(kLeft - 6) << "\" y1=\"" << px(y) << "\" x2=\""
       << px(kLeft) << "\" y2=\"" << px(y) << "\" stroke=\"black\"/>\n";
    text_at(os, kLeft - 10, y + 5, lbl, "end");
}

/// Emit a polyline split into runs wherever the phase wraps around.
void cylinder_polyline(std::ostringstream& os, const Chart& ch,
                       const std::vector<CurvePoint>& pts, const std::string& color) {
    auto flush = [&](std::ostringstream& run, std::size_t count) {
        if (count >= 2)
            os << "<polyline fill=\"none\" stroke=\"" << color
               << "\" stroke-width=\"1.5\" points=\"" << run.str() << "\"/>\n";
        run.str("");
        run.clear();
    };
    std::ostringstream run;
    std::size_t count = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i > 0 && std::abs(pts[i].s - pts[i - 1].s) > M_PI) {
            flush(run, count);
            count = 0;
        }
        run << px(ch.x(pts[i].s)) << ',' << px(ch.y(pts[i].tau)) << ' ';
        ++count;
    }
    flush(run, count);
}

void close_svg(std::ostringstream& os) { os << "</svg>\n"; }

void write_file(const std::ostringstream& os, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << os.str();
    out.flush();
    if (!out)
        throw IoError("write failed for '" + path + "'");
}

Chart cylinder_chart() { return Chart{0.0, 2.0 * M_PI, 0.0, 1.0}; }

void cylinder_axes(std::ostringstream& os, const Chart& ch) {
    frame(os);
    tick_x(os, ch, 0.0, "0");
    tick_x(os, ch, M_PI / 2.0, "pi/2");
    tick_x(os, ch, M_PI, "pi");
    tick_x(os, ch, 3.0 * M_PI / 2.0, "3pi/2");
    tick_x(os, ch, 2.0 * M_PI, "2pi");
    for (double v : {0.0, 0.25, 0.5, 0.75, 1.0})
        tick_y(os, ch, v, px(v));
    text_at(os, (kLeft + kRight) / 2.0, kHeight - 8, "s");
    text_at(os, 18.0, (kTop + kBottom) / 2.0, "tau", "middle");
}

const char* curve_color(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#2ca02c", "#9467bd", "#8c564b"};
    return palette[i % 4];
}

std::string region_fill(RegionTag tag) {
    switch (tag) {
        case RegionTag::A: return "#ffd92f";
        case RegionTag::B: return "#a6d854";
        case RegionTag::C: return "#fc8d62";
        case RegionTag::W: return "#e5e5e5";
        case RegionTag::X: return "#8da0cb";
        case RegionTag::Y: return "#66c2a5";
        case RegionTag::Z: return "#e78ac3";
        case RegionTag::K1_a: return "#ffe9a8";
        case RegionTag::K1_b: return "#c7e9b4";
        case RegionTag::K1_c: return "#fdc9b0";
        case RegionTag::K0_NoZeros: return "#f0f0f0";
        case RegionTag::K0_TwoCircles: return "#bdbdbd";
        case RegionTag::K0_OneCircle: return "#969696";
        case RegionTag::Gamma0_Circle: return "#ffffff";
        default: return "#333333"; // boundary tags
    }
}

} // namespace

void render_diagram_svg(const Diagram& dia, const std::string& path) {
    std::ostringstream os;
    open_svg(os);
    const Chart ch = cylinder_chart();
    cylinder_axes(os, ch);

    std::ostringstream title;
    title << "region " << to_string(dia.region.tag) << "  delta=" << dia.region.delta
          << " gamma=" << dia.region.gamma << " k=" << dia.region.k;
    text_at(os, kLeft + 8, kTop - 10, title.str(), "start");

    for (std::size_t c = 0; c < dia.curves.size(); ++c) {
        std::vector<CurvePoint> pts = dia.curves[c].points;
        if (dia.curves[c].closed && !pts.empty())
            pts.push_back(pts.front()); // draw the closing segment
        cylinder_polyline(os, ch, pts, curve_color(c));
    }
    for (const FoldPoint& f : dia.folds) {
        os << "<circle cx=\"" << px(ch.x(f.s_star)) << "\" cy=\"" << px(ch.y(f.tau))
           << "\" r=\"5\" fill=\"white\" stroke=\"black\" stroke-width=\"1.5\"";
        if (f.criticality == Criticality::subcritical)
            os << " stroke-dasharray=\"3 2\"";
        os << "/>\n";
    }
    close_svg(os);
    write_file(os, path);
}

void render_manifolds_svg(const std::vector<ManifoldTrace>& traces,
                          const std::string& path) {
    if (traces.empty())
        throw DomainError("render_manifolds_svg: no traces supplied");
    std::ostringstream os;
    open_svg(os);
    const Chart ch = cylinder_chart();
    cylinder_axes(os, ch);

    for (const ManifoldTrace& tr : traces) {
        const bool unstable = tr.branch == ManifoldBranch::unstable_plus ||
                              tr.branch == ManifoldBranch::unstable_minus;
        std::vector<CurvePoint> pts;
        pts.reserve(tr.points.size());
        for (const CylinderPoint& q : tr.points)
            pts.push_back(CurvePoint{q.y, q.s});
        cylinder_polyline(os, ch, pts, unstable ? "#d62728" : "#1f77b4");
    }
    const FixedPointInfo& sp = traces.front().saddle;
    os << "<circle cx=\"" << px(ch.x(sp.s)) << "\" cy=\"" << px(ch.y(sp.tau))
       << "\" r=\"4\" fill=\"black\"/>\n";
    text_at(os, kLeft + 8, kTop - 10,
            "invariant manifolds (red unstable, blue stable)", "start");
    close_svg(os);
    write_file(os, path);
}

void render_atlas_svg(const std::vector<AtlasCell>& cells, double k,
                      const std::string& path) {
    if (cells.empty())
        throw DomainError("render_atlas_svg: no cells supplied");

    std::set<double> ds, gs;
    for (const AtlasCell& c : cells) {
        ds.insert(c.delta);
        gs.insert(c.gamma);
    }
    auto step_of = [](const std::set<double>& vals) {
        if (vals.size() < 2)
            return 1.0;
        double step = std::numeric_limits<double>::infinity();
        double prev = *vals.begin();
        for (auto it = std::next(vals.begin()); it != vals.end(); ++it) {
            step = std::min(step, *it - prev);
            prev = *it;
        }
        return step;
    };
    const double dd = step_of(ds), dg = step_of(gs);
    const Chart ch{*ds.begin() - dd / 2, *ds.rbegin() + dd / 2, *gs.begin() - dg / 2,
                   *gs.rbegin() + dg / 2};

    std::ostringstream os;
    open_svg(os);
    for (const AtlasCell& c : cells) {
        const double x0 = ch.x(c.delta - dd / 2), x1 = ch.x(c.delta + dd / 2);
        const double y0 = ch.y(c.gamma + dg / 2), y1 = ch.y(c.gamma - dg / 2);
        os << "<rect x=\"" << px(x0) << "\" y=\"" << px(y0) << "\" width=\""
           << px(x1 - x0) << "\" height=\"" << px(y1 - y0) << "\" fill=\""
           << region_fill(c.tag) << "\"/>\n";
    }
    frame(os);

    // Threshold curves gamma_plus / gamma_minus over the delta range
    // below the golden ratio, and the golden-ratio wall.
    const double phi = golden_phi();
    auto threshold_polyline = [&](double denom, const char* color) {
        std::ostringstream run;
        std::size_t count = 0;
        const int n = 256;
        for (int i = 0; i <= n; ++i) {
            const double d = ch.x_lo + (ch.x_hi - ch.x_lo) * i / n;
            if (d <= 1.0 + 1e-9 || d >= phi - 1e-9)
                continue;
            const double g = M_F(d) / denom;
            if (g < ch.y_lo || g > ch.y_hi)
                continue;
            run << px(ch.x(d)) << ',' << px(ch.y(g)) << ' ';
            ++count;
        }
        if (count >= 2)
            os << "<polyline fill=\"none\" stroke=\"" << color
               << "\" stroke-width=\"2\" points=\"" << run.str() << "\"/>\n";
    };
    threshold_polyline(1.0 + k, "#000000");
    if (k < 1.0)
        threshold_polyline(1.0 - k, "#555555");
    if (phi > ch.x_lo && phi < ch.x_hi)
        os << "<line x1=\"" << px(ch.x(phi)) << "\" y1=\"" << px(kTop) << "\" x2=\""
           << px(ch.x(phi)) << "\" y2=\"" << px(kBottom)
           << "\" stroke=\"black\" stroke-dasharray=\"6 4\" stroke-width=\"1.5\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double d = ch.x_lo + (ch.x_hi - ch.x_lo) * i / 4;
        const double g = ch.y_lo + (ch.y_hi - ch.y_lo) * i / 4;
        char lbl[32];
        std::snprintf(lbl, sizeof lbl, "%.3g", d);
        tick_x(os, ch, d, lbl);
        std::snprintf(lbl, sizeof lbl, "%.3g", g);
        tick_y(os, ch, g, lbl);
    }
    text_at(os, (kLeft + kRight) / 2.0, kHeight - 8, "delta");
    text_at(os, 18.0, (kTop + kBottom) / 2.0, "gamma");
    std::ostringstream title;
    title << "region atlas at k=" << k;
    text_at(os, kLeft + 8, kTop - 10, title.str(), "start");
    close_svg(os);
    write_file(os, path);
}

} // namespace forcycle::io
