#include "ksrg_cli/plot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ksrg/error.hpp"
#include "ksrg_cli/report.hpp"

namespace ksrg::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 24.0;
constexpr double kTop = 48.0;
constexpr double kBottom = 64.0;

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fixed(double v, int digits = 2) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

struct Range {
    double lo;
    double hi;
    void pad() {
        if (hi - lo < 1e-9) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double margin = 0.05 * (hi - lo);
        lo -= margin;
        hi += margin;
    }
};

}  // namespace

PlotResult render_plot(const std::vector<ResultRow>& rows, const std::optional<std::string>& statistic,
                       const ExponentReport& exponents) {
    PlotResult result;
    if (rows.empty()) throw Error(ErrorCode::Parse, "results.csv has no rows");
    result.statistic = statistic.value_or(rows.front().statistic);

    struct Point {
        double x, y, lo, hi;
    };
    std::vector<Point> pts;
    std::vector<std::pair<double, double>> xy;
    for (const auto& r : rows) {
        if (r.statistic != result.statistic || !(r.n > 0.0) || !(r.value > 0.0)) continue;
        xy.emplace_back(std::log(r.n), std::log(r.value));
        const double y = std::log10(r.value);
        pts.push_back({std::log10(r.n), y, r.ci_low > 0.0 ? std::log10(r.ci_low) : y,
                       r.ci_high > 0.0 ? std::log10(r.ci_high) : y});
    }
    const bool present = std::any_of(rows.begin(), rows.end(), [&](const ResultRow& r) { return r.statistic == result.statistic; });
    if (!present) throw Error(ErrorCode::Parse, "statistic '" + result.statistic + "' not found in results.csv");

    if (xy.size() >= 3) {
        try {
            result.fit = fit_line(std::move(xy));
        } catch (const std::invalid_argument&) {
        }
    }

    Range xr{0.0, 1.0}, yr{0.0, 1.0};
    if (!pts.empty()) {
        xr = {pts.front().x, pts.front().x};
        yr = {pts.front().y, pts.front().y};
        for (const auto& p : pts) {
            xr.lo = std::min(xr.lo, p.x);
            xr.hi = std::max(xr.hi, p.x);
            yr.lo = std::min({yr.lo, p.y, p.lo});
            yr.hi = std::max({yr.hi, p.y, p.hi});
        }
    }
    xr.pad();
    yr.pad();
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto sy = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" style=\"fill:#ffffff\"/>\n";
    svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" style=\"fill:none;stroke:#333333;stroke-width:1\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = xr.lo + (xr.hi - xr.lo) * i / 4.0;
        const double yv = yr.lo + (yr.hi - yr.lo) * i / 4.0;
        svg << "<line x1=\"" << fixed(sx(xv)) << "\" y1=\"" << kTop + ph << "\" x2=\"" << fixed(sx(xv)) << "\" y2=\""
            << kTop + ph + 5 << "\" style=\"stroke:#333333\"/>\n";
        svg << "<text x=\"" << fixed(sx(xv)) << "\" y=\"" << kTop + ph + 18
            << "\" style=\"font:11px sans-serif;text-anchor:middle\">" << fixed(xv) << "</text>\n";
        svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fixed(sy(yv)) << "\" x2=\"" << kLeft << "\" y2=\""
            << fixed(sy(yv)) << "\" style=\"stroke:#333333\"/>\n";
        svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << fixed(sy(yv) + 4)
            << "\" style=\"font:11px sans-serif;text-anchor:end\">" << fixed(yv) << "</text>\n";
    }
    svg << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 20
        << "\" style=\"font:13px sans-serif;text-anchor:middle\">log10 n</text>\n";
    svg << "<text x=\"18\" y=\"" << kTop + ph / 2 << "\" transform=\"rotate(-90 18 " << kTop + ph / 2
        << ")\" style=\"font:13px sans-serif;text-anchor:middle\">log10 " << escape(result.statistic)
        << " (predicted zeta_star = " << format_double(exponents.zeta_star) << ")</text>\n";

    for (const auto& p : pts) {
        if (p.hi > p.lo) {
            svg << "<line x1=\"" << fixed(sx(p.x)) << "\" y1=\"" << fixed(sy(p.lo)) << "\" x2=\"" << fixed(sx(p.x))
                << "\" y2=\"" << fixed(sy(p.hi)) << "\" style=\"stroke:#1f77b4;stroke-width:1\"/>\n";
        }
        svg << "<circle cx=\"" << fixed(sx(p.x)) << "\" cy=\"" << fixed(sy(p.y))
            << "\" r=\"4\" style=\"fill:#1f77b4\"/>\n";
    }
    std::string title = escape(result.statistic);
    if (result.fit) {
        // The fit is in natural logs; the slope is base independent.
        const double a = result.fit->intercept / std::log(10.0);
        const double b = result.fit->slope;
        svg << "<line class=\"fit\" x1=\"" << fixed(sx(xr.lo)) << "\" y1=\"" << fixed(sy(a + b * xr.lo)) << "\" x2=\""
            << fixed(sx(xr.hi)) << "\" y2=\"" << fixed(sy(a + b * xr.hi))
            << "\" style=\"stroke:#d62728;stroke-width:2\"/>\n";
        title += ": slope = " + format_double(b) + ", r2 = " + fixed(result.fit->r2, 4);
    } else {
        title += ": fewer than 3 positive points, no fit";
    }
    svg << "<text x=\"" << kLeft << "\" y=\"28\" style=\"font:14px sans-serif\">" << title << "</text>\n";
    svg << "</svg>\n";
    result.svg = svg.str();
    return result;
}

}  // namespace ksrg::cli
