#include "ukit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "ukit/format.hpp"

namespace ukit {

namespace {

std::vector<double> distinct(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Cell edges: midpoints between neighbours, clamped to [0, 1].
std::map<double, std::pair<double, double>> cell_edges(const std::vector<double>& c) {
    std::map<double, std::pair<double, double>> e;
    for (std::size_t i = 0; i < c.size(); ++i) {
        double lo = i == 0 ? std::max(0.0, c[0] - (c.size() > 1 ? 0.5 * (c[1] - c[0]) : 0.05)) : 0.5 * (c[i - 1] + c[i]);
        double hi = i + 1 == c.size() ? std::min(1.0, c[i] + (c.size() > 1 ? 0.5 * (c[i] - c[i - 1]) : 0.05))
                                      : 0.5 * (c[i] + c[i + 1]);
        e[c[i]] = {lo, hi};
    }
    return e;
}

std::string colour(double t) {
    t = std::clamp(t, 0.0, 1.0);
    int r = static_cast<int>(std::lround(255.0 * t));
    int b = static_cast<int>(std::lround(255.0 * (1.0 - t)));
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, 64, b);
    return buf;
}

std::string escape(const std::string& s) {
    std::string o;
    for (char ch : s) {
        switch (ch) {
            case '<': o += "&lt;"; break;
            case '>': o += "&gt;"; break;
            case '&': o += "&amp;"; break;
            default: o += ch;
        }
    }
    return o;
}

}  // namespace

std::string sweep_heatmap_svg(const std::vector<SweepNode>& nodes, const std::function<double(const SweepNode&)>& value,
                              const HeatmapOptions& opts) {
    const double left = 70, top = 40, right = 110, bottom = 60;
    const double pw = opts.width - left - right, ph = opts.height - top - bottom;
    std::vector<double> xs, ys, vals;
    for (const auto& n : nodes) {
        xs.push_back(n.alpha_scaled);
        ys.push_back(n.beta_scaled);
        double v = n.error.empty() ? value(n) : NAN;
        vals.push_back(v);
    }
    auto ex = cell_edges(distinct(xs)), ey = cell_edges(distinct(ys));
    double vmin = INFINITY, vmax = -INFINITY;
    for (double v : vals)
        if (std::isfinite(v)) {
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
    const double span = vmax > vmin ? vmax - vmin : 1.0;

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\"" << opts.height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!opts.title.empty())
        s << "<text x=\"" << left + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << escape(opts.title)
          << "</text>\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto [x0, x1] = ex[xs[i]];
        auto [y0, y1] = ey[ys[i]];
        std::string fill = std::isfinite(vals[i]) ? colour((vals[i] - vmin) / span) : "#bbbbbb";
        s << "<rect x=\"" << left + x0 * pw << "\" y=\"" << top + (1.0 - y1) * ph << "\" width=\"" << (x1 - x0) * pw
          << "\" height=\"" << (y1 - y0) * ph << "\" fill=\"" << fill << "\"><title>alpha="
          << nodes[i].bundle.alpha.to_string() << " beta=" << nodes[i].bundle.beta.to_string()
          << " value=" << format_double(vals[i]) << "</title></rect>\n";
    }
    s << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    // Ticks at the exponents 1, 2, 3, 5, 10 and inf on the scaled axes.
    const std::pair<double, const char*> ticks[] = {{1, "1"}, {2, "2"}, {3, "3"}, {5, "5"}, {10, "10"}, {INFINITY, "inf"}};
    for (auto [a, label] : ticks) {
        double t = scaled_axis(a);
        s << "<line x1=\"" << left + t * pw << "\" y1=\"" << top + ph << "\" x2=\"" << left + t * pw << "\" y2=\""
          << top + ph + 5 << "\" stroke=\"black\"/>";
        s << "<text x=\"" << left + t * pw << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << label
          << "</text>\n";
        s << "<line x1=\"" << left - 5 << "\" y1=\"" << top + (1 - t) * ph << "\" x2=\"" << left << "\" y2=\""
          << top + (1 - t) * ph << "\" stroke=\"black\"/>";
        s << "<text x=\"" << left - 8 << "\" y=\"" << top + (1 - t) * ph + 4 << "\" text-anchor=\"end\">" << label
          << "</text>\n";
    }
    s << "<text x=\"" << left + pw / 2 << "\" y=\"" << opts.height - 15 << "\" text-anchor=\"middle\">alpha</text>\n";
    s << "<text x=\"18\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << top + ph / 2
      << ")\">beta</text>\n";
    // Colour bar.
    const double bx = left + pw + 30, bw = 18;
    for (int k = 0; k < 50; ++k) {
        double t0 = k / 50.0;
        s << "<rect x=\"" << bx << "\" y=\"" << top + (1 - t0 - 0.02) * ph << "\" width=\"" << bw << "\" height=\""
          << ph / 50 + 0.5 << "\" fill=\"" << colour(t0 + 0.01) << "\"/>\n";
    }
    s << "<text x=\"" << bx + bw + 4 << "\" y=\"" << top + 10 << "\">" << format_double(vmax) << "</text>\n";
    s << "<text x=\"" << bx + bw + 4 << "\" y=\"" << top + ph << "\">" << format_double(vmin) << "</text>\n";
    s << "</svg>\n";
    return s.str();
}

}  // namespace ukit
