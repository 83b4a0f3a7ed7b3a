// Copyright 2026 The oqsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "oqs/harness.hpp"

namespace oqs {

namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 600;
constexpr double kLeft = 80;
constexpr double kRight = 160;
constexpr double kTop = 50;
constexpr double kBottom = 70;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

struct Frame {
    double x0, x1, y0, y1;

    double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
    double py(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

}  // namespace

std::string render_svg_plot(const ExperimentRecord &record) {
    if (record.points.empty()) {
        throw std::invalid_argument("cannot plot an empty sweep");
    }
    Frame f{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(),
            std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
    for (const auto &p : record.points) {
        f.x0 = std::min(f.x0, p.sweep_value);
        f.x1 = std::max(f.x1, p.sweep_value);
        for (double y : {p.analytic, p.unmitigated, p.mitigated}) {
            f.y0 = std::min(f.y0, y);
            f.y1 = std::max(f.y1, y);
        }
    }
    if (f.x1 - f.x0 < 1e-12) {
        f.x0 -= 0.5;
        f.x1 += 0.5;
    }
    const double pad = std::max((f.y1 - f.y0) * 0.08, 1e-3);
    f.y0 -= pad;
    f.y1 += pad;

    const bool mitigated = record.spec.zne.has_value() || (record.spec.rem && record.spec.rem->mitigate);
    const std::string title = record.spec.name.empty() ? record.spec.output_stem : record.spec.name;

    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
    s << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    s << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"18\">" << xml_escape(title) << "</text>\n";

    // Axes and ticks.
    const double ax = kLeft;
    const double ay = kHeight - kBottom;
    s << "<g stroke=\"black\" stroke-width=\"1\">\n";
    s << "<line x1=\"" << fmt(ax) << "\" y1=\"" << fmt(ay) << "\" x2=\"" << fmt(kWidth - kRight) << "\" y2=\""
      << fmt(ay) << "\"/>\n";
    s << "<line x1=\"" << fmt(ax) << "\" y1=\"" << fmt(kTop) << "\" x2=\"" << fmt(ax) << "\" y2=\"" << fmt(ay)
      << "\"/>\n";
    s << "</g>\n";
    s << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (int t = 0; t <= 5; t++) {
        const double xv = f.x0 + (f.x1 - f.x0) * t / 5;
        const double yv = f.y0 + (f.y1 - f.y0) * t / 5;
        s << "<text x=\"" << fmt(f.px(xv)) << "\" y=\"" << fmt(ay + 20) << "\" text-anchor=\"middle\">"
          << fmt(xv) << "</text>\n";
        s << "<text x=\"" << fmt(ax - 8) << "\" y=\"" << fmt(f.py(yv) + 4) << "\" text-anchor=\"end\">"
          << fmt(yv) << "</text>\n";
    }
    s << "<text x=\"" << fmt((kLeft + kWidth - kRight) / 2) << "\" y=\"" << fmt(kHeight - 25)
      << "\" text-anchor=\"middle\">" << xml_escape(record.spec.sweep.parameter) << "</text>\n";
    s << "<text x=\"20\" y=\"" << fmt((kTop + ay) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << fmt((kTop + ay) / 2) << ")\">" << xml_escape(record.spec.observable) << "</text>\n";
    s << "</g>\n";

    // Theory curve.
    s << "<path class=\"analytic\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\" d=\"";
    for (std::size_t i = 0; i < record.points.size(); i++) {
        const auto &p = record.points[i];
        s << (i == 0 ? "M" : " L") << fmt(f.px(p.sweep_value)) << "," << fmt(f.py(p.analytic));
    }
    s << "\"/>\n";

    s << "<g class=\"unmitigated\" fill=\"#d62728\">\n";
    for (const auto &p : record.points) {
        s << "<circle cx=\"" << fmt(f.px(p.sweep_value)) << "\" cy=\"" << fmt(f.py(p.unmitigated))
          << "\" r=\"4\"/>\n";
    }
    s << "</g>\n";
    if (mitigated) {
        s << "<g class=\"mitigated\" fill=\"#1f77b4\">\n";
        for (const auto &p : record.points) {
            s << "<rect x=\"" << fmt(f.px(p.sweep_value) - 4) << "\" y=\"" << fmt(f.py(p.mitigated) - 4)
              << "\" width=\"8\" height=\"8\"/>\n";
        }
        s << "</g>\n";
    }

    const double lx = kWidth - kRight + 15;
    s << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "<line x1=\"" << fmt(lx) << "\" y1=\"70\" x2=\"" << fmt(lx + 25)
      << "\" y2=\"70\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    s << "<text x=\"" << fmt(lx + 32) << "\" y=\"74\">theory</text>\n";
    s << "<circle cx=\"" << fmt(lx + 12) << "\" cy=\"92\" r=\"4\" fill=\"#d62728\"/>\n";
    s << "<text x=\"" << fmt(lx + 32) << "\" y=\"96\">unmitigated</text>\n";
    if (mitigated) {
        s << "<rect x=\"" << fmt(lx + 8) << "\" y=\"110\" width=\"8\" height=\"8\" fill=\"#1f77b4\"/>\n";
        s << "<text x=\"" << fmt(lx + 32) << "\" y=\"118\">mitigated</text>\n";
    }
    s << "</g>\n";
    s << "</svg>\n";
    return s.str();
}

}  // namespace oqs
