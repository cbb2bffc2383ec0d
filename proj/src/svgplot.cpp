#include "fg/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fg {

namespace {

constexpr double kW = 640, kH = 440;
constexpr double kL = 70, kR = 20, kT = 20, kB = 50;  // margins

}  // namespace

std::string curve_to_svg(const std::vector<CurvePoint>& points) {
    double ymin = 1.0, ymax = 1e-12;
    double xmax = 0.0;
    for (const auto& p : points) {
        double lo = std::max(p.ci_low > 0 ? per_round_ler(p.ci_low, 1) : 0.0, 0.0);
        double y = p.ler_per_round;
        if (y > 0) ymin = std::min(ymin, y);
        if (p.ci_low > 0) ymin = std::min(ymin, p.ci_low);
        ymax = std::max({ymax, y, p.ci_high});
        xmax = std::max(xmax, p.ps_rate);
        (void)lo;
    }
    if (ymin >= ymax) { ymin = 1e-6; ymax = 1.0; }
    double ly0 = std::floor(std::log10(ymin));
    double ly1 = std::ceil(std::log10(ymax));
    if (ly1 <= ly0) ly1 = ly0 + 1;
    xmax = std::max(xmax, 1e-3) * 1.05;

    auto px = [&](double x) { return kL + (kW - kL - kR) * (x / xmax); };
    auto py = [&](double y) {
        double ly = std::log10(std::max(y, std::pow(10.0, ly0)));
        return kT + (kH - kT - kB) * (1.0 - (ly - ly0) / (ly1 - ly0));
    };

    std::ostringstream s;
    s << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW << "' height='" << kH << "'>\n";
    s << "<rect width='100%' height='100%' fill='white'/>\n";

    // axes
    s << "<line x1='" << kL << "' y1='" << kH - kB << "' x2='" << kW - kR << "' y2='" << kH - kB
      << "' stroke='black'/>\n";
    s << "<line x1='" << kL << "' y1='" << kT << "' x2='" << kL << "' y2='" << kH - kB
      << "' stroke='black'/>\n";
    for (int d = static_cast<int>(ly0); d <= static_cast<int>(ly1); ++d) {
        double y = py(std::pow(10.0, d));
        s << "<line x1='" << kL - 4 << "' y1='" << y << "' x2='" << kW - kR << "' y2='" << y
          << "' stroke='#ddd'/>\n";
        s << "<text x='" << kL - 8 << "' y='" << y + 4
          << "' text-anchor='end' font-size='11'>1e" << d << "</text>\n";
    }
    for (int i = 0; i <= 5; ++i) {
        double x = xmax * i / 5.0;
        s << "<text x='" << px(x) << "' y='" << kH - kB + 16
          << "' text-anchor='middle' font-size='11'>" << x << "</text>\n";
    }
    s << "<text x='" << (kL + kW - kR) / 2 << "' y='" << kH - 12
      << "' text-anchor='middle' font-size='13'>post-selection rate</text>\n";
    s << "<text x='16' y='" << (kT + kH - kB) / 2
      << "' text-anchor='middle' font-size='13' transform='rotate(-90 16 "
      << (kT + kH - kB) / 2 << ")'>logical error rate per round</text>\n";

    // CI band
    std::vector<const CurvePoint*> finite;
    for (const auto& p : points)
        if (p.n_accepted > 0) finite.push_back(&p);
    if (finite.size() >= 2) {
        s << "<polygon fill='#aaccee' fill-opacity='0.5' stroke='none' points='";
        for (const auto* p : finite) s << px(p->ps_rate) << ',' << py(p->ci_high) << ' ';
        for (auto it = finite.rbegin(); it != finite.rend(); ++it)
            s << px((*it)->ps_rate) << ',' << py((*it)->ci_low) << ' ';
        s << "'/>\n";
    }

    // curve and markers
    if (!finite.empty()) {
        s << "<polyline fill='none' stroke='#1f5fa8' stroke-width='2' points='";
        for (const auto* p : finite) s << px(p->ps_rate) << ',' << py(p->ler_per_round) << ' ';
        s << "'/>\n";
        for (const auto* p : finite)
            s << "<circle cx='" << px(p->ps_rate) << "' cy='" << py(p->ler_per_round)
              << "' r='3' fill='#1f5fa8'/>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace fg
