#include "router/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "router/errors.hpp"

namespace router
{

namespace
{

constexpr int kWidth = 860;
constexpr int kHeight = 520;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 160;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

const char *kPalette[] = {"#c0392b", "#2471a3", "#229954", "#b7950b",
                          "#884ea0", "#17a589", "#7b241c", "#2e4053"};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

void write_svg_chart(const std::string &path, const std::string &title,
                     const std::string &x_label, const std::vector<SvgSeries> &series)
{
    double x_min = std::numeric_limits<double>::infinity();
    double x_max = -x_min;
    double y_min = std::numeric_limits<double>::infinity();
    double y_max = -y_min;
    for (const auto &s : series)
    {
        for (std::size_t i = 0; i < s.x.size(); ++i)
        {
            x_min = std::min(x_min, s.x[i]);
            x_max = std::max(x_max, s.x[i]);
            y_min = std::min(y_min, s.y[i]);
            y_max = std::max(y_max, s.y[i]);
        }
    }
    if (!(x_max > x_min))
    {
        x_max = x_min + 1.0;
    }
    if (!(y_max > y_min))
    {
        y_max = y_min + 1.0;
    }
    const double pad = 0.05 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const auto px = [&](double x) { return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    const auto py = [&](double y) { return kMarginTop + (y_max - y) / (y_max - y_min) * plot_h; };

    std::ofstream out(path);
    if (!out)
    {
        throw Error("cannot open SVG output: " + path);
    }
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='"
        << kHeight << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << kWidth / 2 << "' y='22' text-anchor='middle' font-size='15'>"
        << title << "</text>\n";

    // axes and ticks
    out << "<rect x='" << kMarginLeft << "' y='" << kMarginTop << "' width='" << plot_w
        << "' height='" << plot_h << "' fill='none' stroke='#444'/>\n";
    for (int i = 0; i <= 5; ++i)
    {
        const double fx = x_min + (x_max - x_min) * i / 5.0;
        const double fy = y_min + (y_max - y_min) * i / 5.0;
        out << "<line x1='" << px(fx) << "' y1='" << kMarginTop + plot_h << "' x2='" << px(fx)
            << "' y2='" << kMarginTop + plot_h + 5 << "' stroke='#444'/>\n";
        out << "<text x='" << px(fx) << "' y='" << kMarginTop + plot_h + 20
            << "' text-anchor='middle' font-size='11'>" << num(fx) << "</text>\n";
        out << "<line x1='" << kMarginLeft - 5 << "' y1='" << py(fy) << "' x2='" << kMarginLeft
            << "' y2='" << py(fy) << "' stroke='#444'/>\n";
        out << "<text x='" << kMarginLeft - 9 << "' y='" << py(fy) + 4
            << "' text-anchor='end' font-size='11'>" << num(fy) << "</text>\n";
    }
    out << "<text x='" << kMarginLeft + plot_w / 2 << "' y='" << kHeight - 12
        << "' text-anchor='middle' font-size='12'>" << x_label << "</text>\n";

    int color = 0;
    for (const auto &s : series)
    {
        const char *stroke = kPalette[color % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<polyline fill='none' stroke='" << stroke << "' stroke-width='1.4' points='";
        for (std::size_t i = 0; i < s.x.size(); ++i)
        {
            out << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
        }
        out << "'/>\n";
        out << "<text x='" << kMarginLeft + plot_w + 12 << "' y='" << kMarginTop + 16 + 18 * color
            << "' font-size='12' fill='" << stroke << "'>" << s.name << "</text>\n";
        ++color;
    }
    out << "</svg>\n";
}

} // namespace router
