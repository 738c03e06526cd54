#include "accelppa/svg.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

namespace accelppa {

namespace {

constexpr double kWidth = 720, kHeight = 540;
constexpr double kLeft = 80, kRight = 170, kTop = 50, kBottom = 70;

std::string fixed(double v, int precision = 2) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, precision);
    return ec == std::errc{} ? std::string(buf.data(), end) : std::string("0");
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

const char* color(PEType t) {
    switch (t) {
        case PEType::FP32: return "#d62728";
        case PEType::INT16: return "#1f77b4";
        case PEType::LightPE1: return "#2ca02c";
        case PEType::LightPE2: return "#ff7f0e";
    }
    return "#7f7f7f";
}

// 1, 2 or 5 times a power of ten, giving roughly `target` intervals.
double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0})
        if (raw <= m * mag) return m * mag;
    return 10.0 * mag;
}

}  // namespace

std::string scatter_svg(std::span<const DesignPoint> points, const std::string& title) {
    std::vector<const DesignPoint*> shown;
    for (const auto& p : points)
        if (p.feasible && p.norm_ppa && p.norm_energy) shown.push_back(&p);

    double x_max = 1.0, y_max = 1.0;
    for (const auto* p : shown) {
        x_max = std::max(x_max, *p->norm_energy);
        y_max = std::max(y_max, *p->norm_ppa);
    }
    const double x_step = nice_step(x_max, 6), y_step = nice_step(y_max, 6);
    x_max = std::ceil(x_max * 1.02 / x_step) * x_step;
    y_max = std::ceil(y_max * 1.02 / y_step) * y_step;

    const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
    const auto sx = [&](double x) { return kLeft + x / x_max * plot_w; };
    const auto sy = [&](double y) { return kTop + plot_h - y / y_max * plot_h; };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" << escape(title)
      << "</text>\n";

    s << "<g class=\"axes\" stroke=\"#444\" font-size=\"11\">\n";
    for (double x = 0; x <= x_max + 1e-9 * x_max; x += x_step) {
        s << "<line x1=\"" << fixed(sx(x)) << "\" y1=\"" << fixed(sy(0)) << "\" x2=\"" << fixed(sx(x)) << "\" y2=\""
          << fixed(sy(0) + 5) << "\"/><text stroke=\"none\" x=\"" << fixed(sx(x)) << "\" y=\"" << fixed(sy(0) + 18)
          << "\" text-anchor=\"middle\">" << fixed(x, x_step < 1 ? 1 : 0) << "</text>\n";
    }
    for (double y = 0; y <= y_max + 1e-9 * y_max; y += y_step) {
        s << "<line x1=\"" << fixed(sx(0) - 5) << "\" y1=\"" << fixed(sy(y)) << "\" x2=\"" << fixed(sx(0)) << "\" y2=\""
          << fixed(sy(y)) << "\"/><text stroke=\"none\" x=\"" << fixed(sx(0) - 8) << "\" y=\"" << fixed(sy(y) + 4)
          << "\" text-anchor=\"end\">" << fixed(y, y_step < 1 ? 1 : 0) << "</text>\n";
    }
    s << "<line x1=\"" << fixed(sx(0)) << "\" y1=\"" << fixed(sy(0)) << "\" x2=\"" << fixed(sx(x_max)) << "\" y2=\""
      << fixed(sy(0)) << "\"/>\n";
    s << "<line x1=\"" << fixed(sx(0)) << "\" y1=\"" << fixed(sy(0)) << "\" x2=\"" << fixed(sx(0)) << "\" y2=\""
      << fixed(sy(y_max)) << "\"/>\n";
    s << "</g>\n";
    s << "<text x=\"" << fixed(kLeft + plot_w / 2) << "\" y=\"" << fixed(kHeight - 25)
      << "\" text-anchor=\"middle\" font-size=\"13\">normalized energy</text>\n";
    s << "<text transform=\"translate(22 " << fixed(kTop + plot_h / 2)
      << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"13\">normalized performance per area</text>\n";

    std::vector<const DesignPoint*> frontier;
    for (const auto* p : shown)
        if (p->on_frontier) frontier.push_back(p);
    std::sort(frontier.begin(), frontier.end(),
              [](const DesignPoint* a, const DesignPoint* b) { return *a->norm_energy < *b->norm_energy; });
    if (frontier.size() > 1) {
        s << "<polyline class=\"frontier\" fill=\"none\" stroke=\"#222\" stroke-dasharray=\"4 3\" points=\"";
        for (std::size_t i = 0; i < frontier.size(); ++i)
            s << (i ? " " : "") << fixed(sx(*frontier[i]->norm_energy)) << ',' << fixed(sy(*frontier[i]->norm_ppa));
        s << "\"/>\n";
    }

    s << "<g class=\"points\">\n";
    for (const auto* p : shown) {
        s << "<circle class=\"pt " << to_string(p->cfg.pe_type) << (p->on_frontier ? " frontier" : "") << "\" cx=\""
          << fixed(sx(*p->norm_energy)) << "\" cy=\"" << fixed(sy(*p->norm_ppa)) << "\" r=\"3.5\" fill=\""
          << color(p->cfg.pe_type) << "\" fill-opacity=\"0.7\""
          << (p->on_frontier ? " stroke=\"#000\" stroke-width=\"1.5\"" : "") << "/>\n";
    }
    s << "</g>\n";

    s << "<g class=\"legend\" font-size=\"12\">\n";
    double ly = kTop + 10;
    for (auto t : kPETypesByCost) {
        s << "<rect x=\"" << fixed(kWidth - kRight + 20) << "\" y=\"" << fixed(ly - 9) << "\" width=\"10\" height=\"10\" fill=\""
          << color(t) << "\"/><text x=\"" << fixed(kWidth - kRight + 36) << "\" y=\"" << fixed(ly) << "\">"
          << display_name(t) << "</text>\n";
        ly += 18;
    }
    s << "<path d=\"M" << fixed(kWidth - kRight + 18) << ' ' << fixed(ly - 4) << " h14\" stroke=\"#222\" stroke-dasharray=\"4 3\"/>"
      << "<text x=\"" << fixed(kWidth - kRight + 36) << "\" y=\"" << fixed(ly) << "\">Pareto frontier</text>\n";
    s << "</g>\n</svg>\n";
    return s.str();
}

}  // namespace accelppa
