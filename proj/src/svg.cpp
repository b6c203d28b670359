#include "shrinkpath/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace shrinkpath {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 640.0;
constexpr double kLeft = 70.0;
constexpr double kRight = kWidth - 190.0;  // room for the legend
constexpr double kTop = 50.0;
constexpr double kBottom = kHeight - 55.0;

const char* kColors[] = {"#000000", "#cc0000", "#007700", "#0000cc",
                         "#7b2d8b", "#cc6600", "#7a4419", "#c0008c"};
const char* kDashes[] = {"", "8 5", "2 4 9 4", "15 7"};  // solid, short, dot-dash, long

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    if (std::abs(v) < 1e-12) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// largest "nice" step (1/2/5 x 10^k) giving about `target` intervals
double nice_step(double range, int target) {
    const double raw = range / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    double step = 10.0;
    if (norm <= 1.0) step = 1.0;
    else if (norm <= 2.0) step = 2.0;
    else if (norm <= 5.0) step = 5.0;
    return step * mag;
}

struct Scale {
    double lo = 0.0, hi = 1.0, p0 = 0.0, p1 = 1.0;
    double operator()(double v) const { return p0 + (v - lo) / (hi - lo) * (p1 - p0); }
};

class ChartWriter {
public:
    ChartWriter(const std::string& title, double xlo, double xhi, double ylo, double yhi,
                const std::string& x_label, const std::string& y_label) {
        if (yhi - ylo < 1e-12) {  // flat or empty data still gets a frame
            ylo -= 1.0;
            yhi += 1.0;
        }
        const double pad = 0.04 * (yhi - ylo);
        x_ = {xlo, xhi, kLeft, kRight};
        y_ = {ylo - pad, yhi + pad, kBottom, kTop};

        out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
             << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
             << "viewBox=\"0 0 960 640\" font-family=\"sans-serif\">\n"
             << "<rect x=\"0\" y=\"0\" width=\"960\" height=\"640\" fill=\"#ffffff\"/>\n";
        if (!title.empty())
            out_ << "<text x=\"480\" y=\"28\" text-anchor=\"middle\" font-size=\"17\">"
                 << title << "</text>\n";
        axes(x_label, y_label);
    }

    const Scale& x() const { return x_; }
    const Scale& y() const { return y_; }

    void zero_line() {
        if (y_.lo < 0.0 && y_.hi > 0.0)
            line(x_.p0, y_(0.0), x_.p1, y_(0.0), "#999999", 1.0, "");
    }

    void vertical_marker(double xv, const std::string& color, const std::string& dash,
                         const std::string& label) {
        if (xv < x_.lo || xv > x_.hi) return;
        line(x_(xv), kTop, x_(xv), kBottom, color, 1.2, dash);
        if (!label.empty())
            out_ << "<text x=\"" << px(x_(xv) + 4) << "\" y=\"" << px(kTop + 14)
                 << "\" font-size=\"12\" fill=\"" << color << "\">" << label << "</text>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& color,
              double width, const std::string& dash) {
        out_ << "<line x1=\"" << px(x1) << "\" y1=\"" << px(y1) << "\" x2=\"" << px(x2)
             << "\" y2=\"" << px(y2) << "\" stroke=\"" << color << "\" stroke-width=\""
             << px(width) << "\"";
        if (!dash.empty()) out_ << " stroke-dasharray=\"" << dash << "\"";
        out_ << "/>\n";
    }

    // polyline through data points; splits at non-finite values
    void series(const std::vector<Point2>& pts, const std::string& color,
                const std::string& dash, double width = 1.8) {
        std::vector<Point2> run;
        auto flush = [&]() {
            if (run.size() == 1) {
                circle(run[0].x, run[0].y, 2.2, color);
            } else if (run.size() > 1) {
                out_ << "<polyline class=\"series\" fill=\"none\" stroke=\"" << color
                     << "\" stroke-width=\"" << px(width) << "\"";
                if (!dash.empty()) out_ << " stroke-dasharray=\"" << dash << "\"";
                out_ << " points=\"";
                for (std::size_t i = 0; i < run.size(); ++i) {
                    if (i) out_ << ' ';
                    out_ << px(x_(run[i].x)) << ',' << px(y_(run[i].y));
                }
                out_ << "\"/>\n";
            }
            run.clear();
        };
        for (const Point2& p : pts) {
            if (std::isfinite(p.x) && std::isfinite(p.y))
                run.push_back(p);
            else
                flush();
        }
        flush();
    }

    void circle(double xv, double yv, double r, const std::string& color) {
        out_ << "<circle cx=\"" << px(x_(xv)) << "\" cy=\"" << px(y_(yv)) << "\" r=\""
             << px(r) << "\" fill=\"" << color << "\"/>\n";
    }

    void legend(const std::vector<std::pair<std::string, std::size_t>>& entries) {
        double ly = kTop + 8.0;
        const double lx = kRight + 14.0;
        for (const auto& [name, style] : entries) {
            const char* color = kColors[style % (sizeof kColors / sizeof *kColors)];
            const char* dash = kDashes[style % (sizeof kDashes / sizeof *kDashes)];
            out_ << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly) << "\" x2=\""
                 << px(lx + 34) << "\" y2=\"" << px(ly) << "\" stroke=\"" << color
                 << "\" stroke-width=\"2\"";
            if (*dash) out_ << " stroke-dasharray=\"" << dash << "\"";
            out_ << "/>\n<text x=\"" << px(lx + 40) << "\" y=\"" << px(ly + 4)
                 << "\" font-size=\"13\">" << name << "</text>\n";
            ly += 20.0;
        }
    }

    void legend_colors(const std::vector<std::pair<std::string, std::string>>& entries) {
        double ly = kTop + 8.0;
        const double lx = kRight + 14.0;
        for (const auto& [name, color] : entries) {
            out_ << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly) << "\" x2=\""
                 << px(lx + 34) << "\" y2=\"" << px(ly) << "\" stroke=\"" << color
                 << "\" stroke-width=\"2\"/>\n"
                 << "<text x=\"" << px(lx + 40) << "\" y=\"" << px(ly + 4)
                 << "\" font-size=\"13\">" << name << "</text>\n";
            ly += 20.0;
        }
    }

    std::string finish() {
        out_ << "</svg>\n";
        return out_.str();
    }

private:
    void axes(const std::string& x_label, const std::string& y_label) {
        out_ << "<rect x=\"" << px(kLeft) << "\" y=\"" << px(kTop) << "\" width=\""
             << px(kRight - kLeft) << "\" height=\"" << px(kBottom - kTop)
             << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

        const double xstep = nice_step(x_.hi - x_.lo, 8);
        for (double t = std::ceil(x_.lo / xstep) * xstep; t <= x_.hi + 1e-9; t += xstep) {
            out_ << "<line x1=\"" << px(x_(t)) << "\" y1=\"" << px(kBottom) << "\" x2=\""
                 << px(x_(t)) << "\" y2=\"" << px(kBottom + 5)
                 << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n"
                 << "<text x=\"" << px(x_(t)) << "\" y=\"" << px(kBottom + 20)
                 << "\" text-anchor=\"middle\" font-size=\"12\">" << tick_label(t)
                 << "</text>\n";
        }
        const double ystep = nice_step(y_.hi - y_.lo, 6);
        for (double t = std::ceil(y_.lo / ystep) * ystep; t <= y_.hi + 1e-9; t += ystep) {
            out_ << "<line x1=\"" << px(kLeft - 5) << "\" y1=\"" << px(y_(t)) << "\" x2=\""
                 << px(kLeft) << "\" y2=\"" << px(y_(t))
                 << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n"
                 << "<text x=\"" << px(kLeft - 8) << "\" y=\"" << px(y_(t) + 4)
                 << "\" text-anchor=\"end\" font-size=\"12\">" << tick_label(t)
                 << "</text>\n";
        }
        out_ << "<text x=\"" << px(0.5 * (kLeft + kRight)) << "\" y=\"" << px(kHeight - 14)
             << "\" text-anchor=\"middle\" font-size=\"14\">" << x_label << "</text>\n";
        out_ << "<text x=\"20\" y=\"" << px(0.5 * (kTop + kBottom))
             << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 20 "
             << px(0.5 * (kTop + kBottom)) << ")\">" << y_label << "</text>\n";
    }

    Scale x_, y_;
    std::ostringstream out_;
};

struct SeriesData {
    std::vector<std::vector<Point2>> lines;  // one per series
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
};

SeriesData collect(const TraceBundle& bundle, const std::string& type) {
    SeriesData data;
    const std::size_t p = bundle.path.p;
    const Vector& lattice = bundle.path.lattice;

    auto add_matrix = [&](const std::vector<Vector>& rows) {
        data.lines.assign(p, {});
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < p; ++j) {
                const double v = rows[i][j];
                data.lines[j].push_back({lattice[i], v});
                if (std::isfinite(v)) {
                    data.lo = std::min(data.lo, v);
                    data.hi = std::max(data.hi, v);
                }
            }
    };

    if (type == "coef") add_matrix(bundle.coef);
    else if (type == "spat") add_matrix(bundle.spat);
    else if (type == "rmse") add_matrix(bundle.rmse);
    else if (type == "exev") add_matrix(bundle.exev);
    else if (type == "infd") {
        data.lines.assign(p, {});
        const double nan = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t i = 0; i < bundle.infd.size(); ++i)
            for (std::size_t j = 0; j < p; ++j) {
                const double v = bundle.infd[i] ? (*bundle.infd[i])[j] : nan;
                data.lines[j].push_back({lattice[i], v});
                if (std::isfinite(v)) {
                    data.lo = std::min(data.lo, v);
                    data.hi = std::max(data.hi, v);
                }
            }
    } else if (type == "lr") {
        data.lines.assign(1, {});
        for (std::size_t i = 0; i < bundle.lr.size(); ++i) {
            const double v = bundle.lr[i];
            data.lines[0].push_back({lattice[i], v});
            if (std::isfinite(v)) {
                data.lo = std::min(data.lo, v);
                data.hi = std::max(data.hi, v);
            }
        }
    } else {
        throw std::invalid_argument("unknown trace type: '" + type + "'");
    }

    if (!std::isfinite(data.lo)) {  // nothing finite to plot
        data.lo = 0.0;
        data.hi = 1.0;
    }
    return data;
}

std::string default_title(const TraceBundle& bundle, const std::string& type) {
    std::string head;
    if (type == "coef") head = "Coefficient TRACE";
    else if (type == "spat") head = "Shrinkage-pattern TRACE";
    else if (type == "rmse") head = "Relative-MSE TRACE";
    else if (type == "exev") head = "Excess-eigenvalue TRACE";
    else if (type == "infd") head = "Inferior-direction TRACE";
    else head = "Likelihood-ratio TRACE";
    return head + " (" + to_string(bundle.path.kind) + " path)";
}

}  // namespace

std::string render_trace(const TraceBundle& bundle, const std::string& trace_type,
                         const TraceRenderOptions& options) {
    const SeriesData data = collect(bundle, trace_type);
    SeriesData cmp;
    double lo = data.lo, hi = data.hi;
    const bool comparing = options.compare && trace_type == "lr";
    if (comparing) {
        cmp = collect(*options.compare, trace_type);
        lo = std::min(lo, cmp.lo);
        hi = std::max(hi, cmp.hi);
    }

    const double xhi = static_cast<double>(bundle.path.p);
    const std::string title =
        options.title.empty() ? default_title(bundle, trace_type) : options.title;
    ChartWriter chart(title, 0.0, xhi, std::min(lo, 0.0), std::max(hi, 0.0),
                      "m-extent of shrinkage", trace_type);
    chart.zero_line();
    chart.vertical_marker(bundle.path.m_star, "#888888", "6 6", "m*");

    std::vector<std::pair<std::string, std::size_t>> legend;
    for (std::size_t j = 0; j < data.lines.size(); ++j) {
        const std::string name = j < options.series_names.size()
                                     ? options.series_names[j]
                                     : "s" + std::to_string(j + 1);
        chart.series(data.lines[j], kColors[j % 8], kDashes[j % 4]);
        legend.emplace_back(name, j);
    }

    if (comparing) {
        // second path drawn solid blue with its own minimum marked (dot-dash red)
        chart.series(cmp.lines[0], "#0000cc", "");
        chart.vertical_marker(options.compare->path.m_star, "#cc0000", "2 4 9 4", "");
        chart.legend_colors({{to_string(bundle.path.kind) + " path", "#000000"},
                             {options.compare_label, "#0000cc"}});
    } else {
        chart.legend(legend);
    }
    return chart.finish();
}

std::string render_yonx(const StandardizedModel& model, const ShrinkagePath& path) {
    if (model.p != 1 || path.kind != PathKind::yonx)
        throw std::invalid_argument("render_yonx requires a p = 1 yonx path");

    // original-unit scatter
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
    double ylo = xlo, yhi = -xlo;
    std::vector<Point2> pts(model.n);
    for (std::size_t i = 0; i < model.n; ++i) {
        pts[i] = {model.x(i, 0) * model.x_scales[0] + model.x_means[0],
                  model.y[i] * model.y_scale + model.y_mean};
        xlo = std::min(xlo, pts[i].x);
        xhi = std::max(xhi, pts[i].x);
        ylo = std::min(ylo, pts[i].y);
        yhi = std::max(yhi, pts[i].y);
    }
    const double xpad = 0.05 * (xhi - xlo);
    xlo -= xpad;
    xhi += xpad;

    ChartWriter chart(model.y_name + " ~ " + model.x_names[0] + ": three fitted slopes",
                      xlo, xhi, ylo, yhi, model.x_names[0], model.y_name);

    const char* colors[3] = {"#0000cc", "#7b2d8b", "#cc0000"};  // blue, purple, red
    const char* labels[3] = {"OLS", "minimum-MSE", "double-shrunk"};
    std::vector<std::pair<std::string, std::string>> legend;
    for (std::size_t k = 0; k < path.display_lines.size() && k < 3; ++k) {
        const FittedLine& ln = path.display_lines[k];
        chart.series({{xlo, ln.intercept + ln.slope * xlo},
                       {xhi, ln.intercept + ln.slope * xhi}},
                     colors[k], "", 2.0);
        legend.emplace_back(labels[k], colors[k]);
    }
    for (const Point2& p : pts) chart.circle(p.x, p.y, 4.0, "#333333");
    chart.circle(model.x_means[0], model.y_mean, 3.0, "#000000");
    chart.legend_colors(legend);
    return chart.finish();
}

std::string render_ellipse(const EllipseSpec& spec) {
    double lo_x = spec.center.x, hi_x = spec.center.x;
    double lo_y = spec.center.y, hi_y = spec.center.y;
    auto grow = [&](const Point2& p) {
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
    };
    for (const auto& ring : spec.boundaries)
        for (const Point2& p : ring) grow(p);
    for (const Point2& p : spec.overlay) grow(p);
    grow({0.0, 0.0});

    ChartWriter chart("Confidence ellipses: " + spec.names[0] + " vs " + spec.names[1],
                      lo_x, hi_x, lo_y, hi_y, spec.names[0], spec.names[1]);
    chart.zero_line();

    std::vector<std::pair<std::string, std::string>> legend;
    for (std::size_t k = 0; k < spec.boundaries.size(); ++k) {
        std::vector<Point2> ring = spec.boundaries[k];
        ring.push_back(ring.front());  // close the loop
        const std::string color = kColors[(k + 1) % 8];
        chart.series(ring, color, "", 1.6);
        char label[48];
        std::snprintf(label, sizeof label, "%g%% confidence", 100.0 * spec.levels[k]);
        legend.emplace_back(label, color);
    }
    chart.series(spec.overlay, "#000000", "", 1.6);
    legend.emplace_back("shrinkage path", "#000000");
    chart.circle(spec.center.x, spec.center.y, 4.0, "#000000");
    chart.circle(spec.knot_point.x, spec.knot_point.y, 4.0, "#cc0000");
    legend.emplace_back("knot", "#cc0000");
    chart.legend_colors(legend);
    return chart.finish();
}

}  // namespace shrinkpath
