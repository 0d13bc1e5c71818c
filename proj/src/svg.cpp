#include "vds/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace vds {

namespace {

constexpr double kW = 720.0, kH = 480.0;
constexpr double kMarginL = 70.0, kMarginR = 20.0, kMarginT = 40.0, kMarginB = 50.0;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v, const char* spec = "%.2f") {
    char buf[48];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

// Linear value-to-pixel mapping over [lo, hi] with a degenerate-range guard.
struct Axis {
    double lo = 0.0, hi = 1.0;
    double px0 = 0.0, px1 = 1.0;  // pixel range (px1 < px0 allowed for y)

    void fit(double mn, double mx) {
        if (!(mx > mn)) {
            const double pad = std::max(1e-12, std::abs(mn) * 0.1 + 0.5);
            mn -= pad;
            mx += pad;
        } else {
            const double pad = 0.05 * (mx - mn);
            mn -= pad;
            mx += pad;
        }
        lo = mn;
        hi = mx;
    }
    double at(double v) const { return px0 + (v - lo) / (hi - lo) * (px1 - px0); }
};

void open_svg(std::ofstream& f, const std::string& title) {
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kW, "%.0f")
      << "\" height=\"" << fmt(kH, "%.0f") << "\" viewBox=\"0 0 " << fmt(kW, "%.0f") << ' '
      << fmt(kH, "%.0f") << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    f << "<text x=\"" << fmt(kW / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << esc(title) << "</text>\n";
}

void axis_frame(std::ofstream& f, double x0, double y0, double x1, double y1) {
    f << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y1) << "\" width=\"" << fmt(x1 - x0)
      << "\" height=\"" << fmt(y0 - y1) << "\" fill=\"none\" stroke=\"black\"/>\n";
}

void y_ticks(std::ofstream& f, const Axis& ay, double x0, bool log_scale) {
    constexpr int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        const double v = ay.lo + (ay.hi - ay.lo) * i / kTicks;
        const double py = ay.at(v);
        f << "<line x1=\"" << fmt(x0 - 4) << "\" y1=\"" << fmt(py) << "\" x2=\"" << fmt(x0)
          << "\" y2=\"" << fmt(py) << "\" stroke=\"black\"/>\n";
        const std::string label = log_scale ? ("1e" + fmt(v, "%.1f")) : fmt(v, "%.3g");
        f << "<text x=\"" << fmt(x0 - 7) << "\" y=\"" << fmt(py + 4)
          << "\" text-anchor=\"end\">" << esc(label) << "</text>\n";
    }
}

void x_ticks(std::ofstream& f, const Axis& ax, double y0) {
    constexpr int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        const double v = ax.lo + (ax.hi - ax.lo) * i / kTicks;
        const double px = ax.at(v);
        f << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(px)
          << "\" y2=\"" << fmt(y0 + 4) << "\" stroke=\"black\"/>\n";
        f << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(y0 + 17)
          << "\" text-anchor=\"middle\">" << esc(fmt(v, "%.3g")) << "</text>\n";
    }
}

void polyline(std::ofstream& f, const Axis& ax, const Axis& ay, const Series& s,
              const char* color) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("svg: series x/y size mismatch");
    f << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (i) f << ' ';
        f << fmt(ax.at(s.x[i])) << ',' << fmt(ay.at(s.y[i]));
    }
    f << "\"/>\n";
}

void legend(std::ofstream& f, const std::vector<Series>& series, double x, double y) {
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double py = y + 16.0 * static_cast<double>(i);
        f << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(py) << "\" x2=\"" << fmt(x + 18)
          << "\" y2=\"" << fmt(py) << "\" stroke=\"" << kPalette[i % 8]
          << "\" stroke-width=\"1.5\"/>\n";
        f << "<text x=\"" << fmt(x + 23) << "\" y=\"" << fmt(py + 4) << "\">"
          << esc(series[i].label) << "</text>\n";
    }
}

void panel_series(std::ofstream& f, const std::vector<Series>& series, const std::string& y_label,
                  const Axis& ax, double y_top, double y_bottom, bool with_legend) {
    double mn = std::numeric_limits<double>::infinity(), mx = -mn;
    for (const auto& s : series)
        for (double v : s.y) {
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
    if (!std::isfinite(mn)) {
        mn = 0.0;
        mx = 1.0;
    }
    Axis ay;
    ay.fit(mn, mx);
    ay.px0 = y_bottom;
    ay.px1 = y_top;

    axis_frame(f, ax.px0, y_bottom, ax.px1, y_top);
    y_ticks(f, ay, ax.px0, false);
    f << "<text x=\"14\" y=\"" << fmt((y_top + y_bottom) / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << fmt((y_top + y_bottom) / 2) << ")\">" << esc(y_label) << "</text>\n";
    for (std::size_t i = 0; i < series.size(); ++i)
        polyline(f, ax, ay, series[i], kPalette[i % 8]);
    if (with_legend) legend(f, series, ax.px0 + 10, y_top + 14);
}

std::ofstream open_file(const std::filesystem::path& file) {
    std::ofstream f(file, std::ios::binary);
    if (!f) throw std::runtime_error("svg: cannot open " + file.string());
    return f;
}

}  // namespace

void write_boxplot_svg(const std::filesystem::path& file, const std::vector<NamedStats>& boxes,
                       const std::string& title, const std::string& y_label) {
    if (boxes.empty()) throw std::invalid_argument("write_boxplot_svg: no boxes");
    auto f = open_file(file);

    // Log10 axis when the positive plotted magnitudes span >= 3 decades.
    double pos_min = std::numeric_limits<double>::infinity(), pos_max = 0.0;
    auto scan = [&](double v) {
        const double m = std::abs(v);
        if (m > 0.0) {
            pos_min = std::min(pos_min, m);
            pos_max = std::max(pos_max, m);
        }
    };
    for (const auto& b : boxes) {
        scan(b.stats.whisker_low);
        scan(b.stats.whisker_high);
        scan(b.stats.median);
        scan(b.stats.mean);
        for (double o : b.stats.outliers) scan(o);
    }
    const bool log_scale = pos_max > 0.0 && pos_max / std::max(pos_min, 1e-300) >= 1e3;
    const double floor_v = log_scale ? pos_min / 10.0 : 0.0;
    auto tr = [&](double v) {
        return log_scale ? std::log10(std::max(std::abs(v), floor_v)) : v;
    };

    double mn = std::numeric_limits<double>::infinity(), mx = -mn;
    auto scan2 = [&](double v) {
        mn = std::min(mn, tr(v));
        mx = std::max(mx, tr(v));
    };
    for (const auto& b : boxes) {
        scan2(b.stats.whisker_low);
        scan2(b.stats.whisker_high);
        scan2(b.stats.mean);
        for (double o : b.stats.outliers) scan2(o);
    }

    Axis ay;
    ay.fit(mn, mx);
    ay.px0 = kH - kMarginB;
    ay.px1 = kMarginT + 10;

    const double x0 = kMarginL, x1 = kW - kMarginR;
    open_svg(f, title);
    axis_frame(f, x0, ay.px0, x1, ay.px1);
    y_ticks(f, ay, x0, log_scale);
    f << "<text x=\"14\" y=\"" << fmt((ay.px0 + ay.px1) / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " << fmt((ay.px0 + ay.px1) / 2)
      << ")\">" << esc(y_label + (log_scale ? " (log10)" : "")) << "</text>\n";

    const double slot = (x1 - x0) / static_cast<double>(boxes.size());
    const double bw = std::min(40.0, slot * 0.5);
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        const auto& st = boxes[i].stats;
        const double cx = x0 + slot * (static_cast<double>(i) + 0.5);
        const double yq1 = ay.at(tr(st.q1)), yq3 = ay.at(tr(st.q3));
        const double ymed = ay.at(tr(st.median)), ymean = ay.at(tr(st.mean));
        const double ywl = ay.at(tr(st.whisker_low)), ywh = ay.at(tr(st.whisker_high));

        f << "<g class=\"box\">\n";
        f << "<rect class=\"iqr\" x=\"" << fmt(cx - bw / 2) << "\" y=\"" << fmt(yq3)
          << "\" width=\"" << fmt(bw) << "\" height=\"" << fmt(yq1 - yq3)
          << "\" fill=\"#cfe3f5\" stroke=\"#1f77b4\"/>\n";
        // whiskers with caps
        for (auto [yw, yq] : {std::pair{ywl, yq1}, std::pair{ywh, yq3}}) {
            f << "<line class=\"whisker\" x1=\"" << fmt(cx) << "\" y1=\"" << fmt(yq)
              << "\" x2=\"" << fmt(cx) << "\" y2=\"" << fmt(yw)
              << "\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n";
            f << "<line class=\"whisker-cap\" x1=\"" << fmt(cx - bw / 4) << "\" y1=\""
              << fmt(yw) << "\" x2=\"" << fmt(cx + bw / 4) << "\" y2=\"" << fmt(yw)
              << "\" stroke=\"black\"/>\n";
        }
        f << "<line class=\"median\" x1=\"" << fmt(cx - bw / 2) << "\" y1=\"" << fmt(ymed)
          << "\" x2=\"" << fmt(cx + bw / 2) << "\" y2=\"" << fmt(ymed)
          << "\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
        // mean cross
        f << "<path class=\"mean\" d=\"M " << fmt(cx - 5) << ' ' << fmt(ymean - 5) << " L "
          << fmt(cx + 5) << ' ' << fmt(ymean + 5) << " M " << fmt(cx - 5) << ' '
          << fmt(ymean + 5) << " L " << fmt(cx + 5) << ' ' << fmt(ymean - 5)
          << "\" stroke=\"#2ca02c\" stroke-width=\"1.5\"/>\n";
        for (double o : st.outliers)
            f << "<circle class=\"outlier\" cx=\"" << fmt(cx) << "\" cy=\"" << fmt(ay.at(tr(o)))
              << "\" r=\"2.5\" fill=\"none\" stroke=\"black\"/>\n";
        f << "</g>\n";
        f << "<text x=\"" << fmt(cx) << "\" y=\"" << fmt(ay.px0 + 17)
          << "\" text-anchor=\"middle\">" << esc(boxes[i].label) << "</text>\n";
    }
    f << "</svg>\n";
    if (!f) throw std::runtime_error("svg: write failed for " + file.string());
}

void write_timeseries_svg(const std::filesystem::path& file, const std::vector<Series>& series,
                          const std::string& title, const std::string& x_label,
                          const std::string& y_label) {
    if (series.empty()) throw std::invalid_argument("write_timeseries_svg: no series");
    auto f = open_file(file);

    double xmn = std::numeric_limits<double>::infinity(), xmx = -xmn;
    for (const auto& s : series)
        for (double v : s.x) {
            xmn = std::min(xmn, v);
            xmx = std::max(xmx, v);
        }
    Axis ax;
    ax.fit(xmn, xmx);
    ax.px0 = kMarginL;
    ax.px1 = kW - kMarginR;

    open_svg(f, title);
    panel_series(f, series, y_label, ax, kMarginT + 10, kH - kMarginB, series.size() > 1);
    x_ticks(f, ax, kH - kMarginB);
    f << "<text x=\"" << fmt((ax.px0 + ax.px1) / 2) << "\" y=\"" << fmt(kH - 12)
      << "\" text-anchor=\"middle\">" << esc(x_label) << "</text>\n";
    f << "</svg>\n";
    if (!f) throw std::runtime_error("svg: write failed for " + file.string());
}

void write_two_panel_svg(const std::filesystem::path& file,
                         const std::vector<Series>& top, const std::string& top_label,
                         const std::vector<Series>& bottom, const std::string& bottom_label,
                         const std::string& title, const std::string& x_label) {
    if (top.empty() || bottom.empty())
        throw std::invalid_argument("write_two_panel_svg: empty panel");
    auto f = open_file(file);

    double xmn = std::numeric_limits<double>::infinity(), xmx = -xmn;
    for (const auto* panel : {&top, &bottom})
        for (const auto& s : *panel)
            for (double v : s.x) {
                xmn = std::min(xmn, v);
                xmx = std::max(xmx, v);
            }
    Axis ax;
    ax.fit(xmn, xmx);
    ax.px0 = kMarginL;
    ax.px1 = kW - kMarginR;

    const double split = kMarginT + (kH - kMarginT - kMarginB) / 2.0;
    open_svg(f, title);
    panel_series(f, top, top_label, ax, kMarginT + 10, split - 12, top.size() > 1);
    panel_series(f, bottom, bottom_label, ax, split + 12, kH - kMarginB, false);
    x_ticks(f, ax, kH - kMarginB);
    f << "<text x=\"" << fmt((ax.px0 + ax.px1) / 2) << "\" y=\"" << fmt(kH - 12)
      << "\" text-anchor=\"middle\">" << esc(x_label) << "</text>\n";
    f << "</svg>\n";
    if (!f) throw std::runtime_error("svg: write failed for " + file.string());
}

}  // namespace vds
