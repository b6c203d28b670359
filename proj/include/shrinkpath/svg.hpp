#pragma once

#include <string>
#include <vector>

#include "shrinkpath/inference.hpp"
#include "shrinkpath/traces.hpp"

namespace shrinkpath {

struct TraceRenderOptions {
    std::vector<std::string> series_names;  // legend labels; defaults to s1..sp
    std::string title;
    const TraceBundle* compare = nullptr;   // second bundle, lr charts only
    std::string compare_label = "comparison path";
};

// Deterministic SVG 1.1 line chart of one trace type (coef, spat, rmse,
// exev, infd, lr) against the m-extent, with the knot marked by a vertical
// dashed line and a horizontal zero line. Dash patterns cycle solid,
// short-dash, dot-dash, long-dash in series order. Fixed 960x640 viewBox,
// no timestamps: identical inputs give identical bytes.
std::string render_trace(const TraceBundle& bundle, const std::string& trace_type,
                         const TraceRenderOptions& options = {});

/// Original-unit scatter with the OLS, minimum-MSE and double-shrunk fitted
/// lines through the data centroid; p = 1 paths only.
std::string render_yonx(const StandardizedModel& model, const ShrinkagePath& path);

/// Confidence-ellipse rings for a coefficient pair with the shrinkage
/// trajectory overlaid and the knot marked.
std::string render_ellipse(const EllipseSpec& spec);

}  // namespace shrinkpath
