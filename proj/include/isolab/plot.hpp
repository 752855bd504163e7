#pragma once

#include <string>

#include "isolab/profile.hpp"

namespace isolab {

struct PlotSeries {
    std::string label;
    std::vector<std::pair<std::int64_t, Rational>> points;  // t ascending, values > 0 for log axes
};

struct PlotOptions {
    bool log_log = false;
    bool annotate_slope = false;  // least-squares slope of log2 points, informative only
    int width = 800;
    int height = 520;
    std::string title;
};

/// Step-plot SVG of the labeled curves; pure text, no external renderer.
std::string emit_plot(std::span<const PlotSeries> series, const PlotOptions& options = {});

PlotSeries series_from(const std::string& label, const ProfileCurve& p);
PlotSeries series_from(const std::string& label, const GrowthCurve& g);
PlotSeries series_from(const std::string& label, const Curve& c);

}  // namespace isolab
