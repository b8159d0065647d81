// Copyright 2026 The dressed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

namespace dressed::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 180.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr int kTicks = 5;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

struct Curve {
    double omega_b;
    double phase;
    std::vector<std::pair<double, double>> points;
};

}  // namespace

std::string render_sweep_svg(std::span<const SweepRow> rows) {
    std::vector<Curve> curves;
    bool several_phases = false;
    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo;
    double y_lo = x_lo;
    double y_hi = 1.0;
    for (const SweepRow& r : rows) {
        auto it = std::find_if(curves.begin(), curves.end(),
                               [&](const Curve& c) { return c.omega_b == r.omega_b && c.phase == r.alpha_phase; });
        if (it == curves.end()) {
            several_phases = several_phases || std::any_of(curves.begin(), curves.end(), [&](const Curve& c) {
                                 return c.phase != r.alpha_phase;
                             });
            curves.push_back({r.omega_b, r.alpha_phase, {}});
            it = std::prev(curves.end());
        }
        x_lo = std::min(x_lo, r.alpha_abs);
        x_hi = std::max(x_hi, r.alpha_abs);
        if (std::isfinite(r.fidelity)) {
            it->points.emplace_back(r.alpha_abs, r.fidelity);
            y_lo = std::min(y_lo, r.fidelity);
            y_hi = std::max(y_hi, r.fidelity);
        }
    }
    if (!std::isfinite(x_lo)) {
        x_lo = 0.0;
        x_hi = 1.0;
    }
    if (x_hi - x_lo <= 0.0) {
        x_hi = x_lo + 1.0;
    }
    if (!std::isfinite(y_lo)) {
        y_lo = 0.0;
    }
    y_lo = std::floor(y_lo * 100.0) / 100.0;
    if (y_hi - y_lo < 0.01) {
        y_lo = y_hi - 0.01;
    }

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * pw; };
    auto sy = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kLeft + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">Fidelity vs |α|</text>\n";
    svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= kTicks; ++i) {
        const double xv = x_lo + (x_hi - x_lo) * i / kTicks;
        const double yv = y_lo + (y_hi - y_lo) * i / kTicks;
        const std::string px = fmt("%.2f", sx(xv));
        const std::string py = fmt("%.2f", sy(yv));
        svg << "<line x1=\"" << px << "\" y1=\"" << kTop + ph << "\" x2=\"" << px << "\" y2=\"" << kTop + ph + 5
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << px << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">" << fmt("%.4g", xv)
            << "</text>\n";
        svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kLeft << "\" y2=\"" << py
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << py << "\" text-anchor=\"end\" dominant-baseline=\"middle\">"
            << fmt("%.4g", yv) << "</text>\n";
    }
    svg << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 16 << "\" text-anchor=\"middle\">|α|</text>\n";
    svg << "<text x=\"22\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 22 "
        << kTop + ph / 2 << ")\">F</text>\n";

    for (std::size_t c = 0; c < curves.size(); ++c) {
        const char* color = kPalette[c % std::size(kPalette)];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < curves[c].points.size(); ++k) {
            svg << (k ? " " : "") << fmt("%.2f", sx(curves[c].points[k].first)) << ','
                << fmt("%.2f", sy(curves[c].points[k].second));
        }
        svg << "\"/>\n";
        const double ly = kTop + 14.0 + 20.0 * static_cast<double>(c);
        const double lx = kLeft + pw + 16.0;
        svg << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24 << "\" y2=\"" << ly << "\" stroke=\""
            << color << "\" stroke-width=\"1.5\"/>\n";
        svg << "<text x=\"" << lx + 30 << "\" y=\"" << ly << "\" dominant-baseline=\"middle\">ω_b = "
            << fmt("%.4g", curves[c].omega_b);
        if (several_phases) {
            svg << ", φ = " << fmt("%.4g", curves[c].phase);
        }
        svg << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace dressed::cli
