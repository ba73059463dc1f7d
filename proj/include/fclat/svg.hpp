#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "fclat/rises.hpp"

namespace fclat {

namespace detail {

inline std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace detail

struct ScatterPoint {
    std::string name;
    std::size_t cover_count;
    double rel_join;
    double rel_meet;
};

/// Static scatter plot: x = |cov| on a log scale, red = relative non-unit
/// join-rises, blue = relative non-unit meet-rises.
inline std::string scatter_svg(const std::vector<ScatterPoint>& points) {
    const double w = 640, h = 420, ml = 60, mr = 20, mt = 20, mb = 50;
    double xmin = 1e300, xmax = 0;
    for (const auto& p : points) {
        double v = std::max<double>(1, p.cover_count);
        xmin = std::min(xmin, v);
        xmax = std::max(xmax, v);
    }
    if (points.empty()) xmin = 1, xmax = 10;
    if (xmin == xmax) xmax = xmin * 10;
    double lx0 = std::log10(xmin), lx1 = std::log10(xmax);

    auto xmap = [&](double covers) {
        double t = (std::log10(std::max(1.0, covers)) - lx0) / (lx1 - lx0);
        return ml + t * (w - ml - mr);
    };
    auto ymap = [&](double rel) { return h - mb - rel * (h - mt - mb); };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    s << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    // axes
    s << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\""
      << h - mb << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
      << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double rel = i / 4.0;
        s << "<text x=\"" << ml - 8 << "\" y=\"" << detail::fmt2(ymap(rel) + 4)
          << "\" font-size=\"11\" text-anchor=\"end\">" << detail::fmt2(rel) << "</text>\n";
    }
    for (int e = static_cast<int>(std::floor(lx0)); e <= static_cast<int>(std::ceil(lx1)); ++e) {
        double x = xmap(std::pow(10.0, e));
        if (x < ml - 1 || x > w - mr + 1) continue;
        s << "<text x=\"" << detail::fmt2(x) << "\" y=\"" << h - mb + 18
          << "\" font-size=\"11\" text-anchor=\"middle\">1e" << e << "</text>\n";
    }
    s << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 12
      << "\" font-size=\"12\" text-anchor=\"middle\">covering pairs</text>\n";
    for (const auto& p : points) {
        double x = xmap(static_cast<double>(p.cover_count));
        s << "<circle cx=\"" << detail::fmt2(x) << "\" cy=\"" << detail::fmt2(ymap(p.rel_join))
          << "\" r=\"4\" fill=\"red\"><title>" << p.name << "</title></circle>\n";
        s << "<circle cx=\"" << detail::fmt2(x) << "\" cy=\"" << detail::fmt2(ymap(p.rel_meet))
          << "\" r=\"4\" fill=\"blue\"><title>" << p.name << "</title></circle>\n";
    }
    s << "</svg>\n";
    return s.str();
}

/// Distribution of non-unit meet-rises over the height of the lower element
/// of each covering pair, as one polyline from the atoms bucket upward.
inline std::string height_distribution_svg(const std::string& name, const RiseReport& rep) {
    const double w = 480, h = 320, ml = 55, mr = 15, mt = 30, mb = 45;
    std::size_t hmax = 0;
    for (auto& [hh, b] : rep.by_height_meet) hmax = std::max(hmax, hh);

    auto xmap = [&](double hh) {
        double t = hmax == 0 ? 0.0 : hh / static_cast<double>(hmax);
        return ml + t * (w - ml - mr);
    };
    auto ymap = [&](double frac) { return h - mb - frac * (h - mt - mb); };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    s << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    s << "<text x=\"" << w / 2 << "\" y=\"18\" font-size=\"13\" text-anchor=\"middle\">" << name
      << "</text>\n";
    s << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\""
      << h - mb << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
      << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 10
      << "\" font-size=\"12\" text-anchor=\"middle\">height of lower element</text>\n";
    for (int i = 0; i <= 4; ++i) {
        double f = i / 4.0;
        s << "<text x=\"" << ml - 8 << "\" y=\"" << detail::fmt2(ymap(f) + 4)
          << "\" font-size=\"11\" text-anchor=\"end\">" << detail::fmt2(f) << "</text>\n";
    }
    if (!rep.by_height_meet.empty()) {
        s << "<polyline fill=\"none\" stroke=\"blue\" stroke-width=\"1.5\" points=\"";
        for (auto& [hh, b] : rep.by_height_meet) {
            double frac = b.total ? static_cast<double>(b.nonunit) / b.total : 0.0;
            s << detail::fmt2(xmap(static_cast<double>(hh))) << "," << detail::fmt2(ymap(frac))
              << " ";
        }
        s << "\"/>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace fclat
