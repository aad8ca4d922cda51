#ifndef ROUTER_SVG_HPP
#define ROUTER_SVG_HPP

#include <string>
#include <vector>

namespace router
{

struct SvgSeries
{
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

// Minimal line chart; best-effort companion to the CSV output.
void write_svg_chart(const std::string &path, const std::string &title,
                     const std::string &x_label, const std::vector<SvgSeries> &series);

} // namespace router

#endif // ROUTER_SVG_HPP
