#include "isolab/plot.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace isolab {

PlotSeries series_from(const std::string& label, const ProfileCurve& p) {
    PlotSeries s{label, {}};
    for (const auto& [t, v] : p.points) s.points.emplace_back(t, Rational::whole(v));
    return s;
}

PlotSeries series_from(const std::string& label, const GrowthCurve& g) {
    PlotSeries s{label, {}};
    for (const auto& [r, v] : g.points) s.points.emplace_back(r, Rational::whole(v));
    return s;
}

PlotSeries series_from(const std::string& label, const Curve& c) {
    return PlotSeries{label, c.points};
}

namespace {

const char* kPalette[] = {"#1f6fb2", "#c0392b", "#1e8449", "#7d3c98", "#b7950b", "#34495e"};

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

}  // namespace

std::string emit_plot(std::span<const PlotSeries> series, const PlotOptions& options) {
    if (series.empty()) throw EmptyCurve("plot needs at least one curve");
    for (const auto& s : series)
        if (s.points.empty()) throw EmptyCurve("plot series '" + s.label + "' is empty");

    auto xcoord = [&](std::int64_t t) {
        const double v = static_cast<double>(t);
        return options.log_log ? std::log2(std::max(v, 1e-9)) : v;
    };
    auto ycoord = [&](const Rational& r) {
        const double v = r.to_double();
        return options.log_log ? std::log2(std::max(v, 1e-9)) : v;
    };

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series) {
        for (const auto& [t, v] : s.points) {
            xmin = std::min(xmin, xcoord(t));
            xmax = std::max(xmax, xcoord(t));
            ymin = std::min(ymin, ycoord(v));
            ymax = std::max(ymax, ycoord(v));
        }
    }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;

    const double ml = 60, mr = 20, mt = options.title.empty() ? 20 : 40, mb = 40;
    const double pw = options.width - ml - mr, ph = options.height - mt - mb;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
        << options.height << "\" viewBox=\"0 0 " << options.width << " " << options.height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!options.title.empty())
        svg << "<text x=\"" << options.width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"16\">" << options.title << "</text>\n";
    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#888\"/>\n";

    // axis labels at the corners of the data range
    const char* axis_note = options.log_log ? " (log2)" : "";
    svg << "<text x=\"" << ml << "\" y=\"" << options.height - 12
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(xmin) << axis_note << "</text>\n";
    svg << "<text x=\"" << ml + pw << "\" y=\"" << options.height - 12
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(xmax)
        << axis_note << "</text>\n";
    svg << "<text x=\"8\" y=\"" << py(ymin) << "\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(ymin) << "</text>\n";
    svg << "<text x=\"8\" y=\"" << py(ymax) + 10
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(ymax) << axis_note
        << "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const char* color = kPalette[i % (sizeof kPalette / sizeof *kPalette)];
        std::ostringstream path;
        bool first = true;
        for (const auto& [t, v] : s.points) {
            const double x = px(xcoord(t)), y = py(ycoord(v));
            if (first) {
                path << "M " << fmt(x) << " " << fmt(y);
                first = false;
            } else {
                path << " H " << fmt(x) << " V " << fmt(y);  // step rendering
            }
        }
        svg << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.6\"/>\n";
        svg << "<text x=\"" << ml + 10 << "\" y=\"" << mt + 18 + 16 * static_cast<double>(i)
            << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">" << s.label;
        if (options.annotate_slope && options.log_log && s.points.size() >= 2) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            const double n = static_cast<double>(s.points.size());
            for (const auto& [t, v] : s.points) {
                const double x = xcoord(t), y = ycoord(v);
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
            }
            const double denom = n * sxx - sx * sx;
            if (std::abs(denom) > 1e-12) {
                const double slope = (n * sxy - sx * sy) / denom;
                char buf[64];
                std::snprintf(buf, sizeof buf, " (slope %.3f)", slope);
                svg << buf;
            }
        }
        svg << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace isolab
