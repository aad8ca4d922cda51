#include "router/params.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "router/errors.hpp"

namespace router
{

double hopping(const SystemParams &p, Channel c)
{
    return c == Channel::A ? p.xi_a : p.xi_b;
}

double detuning(const SystemParams &p, Channel c)
{
    return c == Channel::A ? p.delta_a : p.delta_b;
}

double coupling(const SystemParams &p, Channel c)
{
    return c == Channel::A ? p.g_a : p.g_b;
}

void check_params(const SystemParams &p)
{
    const double fields[] = {p.xi_a, p.xi_b, p.delta_a, p.delta_b, p.g_a, p.g_b, p.omega};
    for (const double v : fields)
    {
        if (!std::isfinite(v))
        {
            throw InvalidParams("system parameters must be finite");
        }
    }
    if (!(p.xi_a > 0.0) || !(p.xi_b > 0.0))
    {
        throw InvalidParams("hopping rates xi_a, xi_b must be positive");
    }
    if (p.g_a < 0.0 || p.g_b < 0.0 || p.omega < 0.0)
    {
        throw InvalidParams("couplings g_a, g_b and omega must be non-negative");
    }
}

namespace
{

std::string trim(const std::string &s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
    {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string &text, const std::string &context)
{
    try
    {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size())
        {
            throw UsageError("trailing characters after number in " + context + ": '" + text + "'");
        }
        return v;
    }
    catch (const std::invalid_argument &)
    {
        throw UsageError("not a number in " + context + ": '" + text + "'");
    }
    catch (const std::out_of_range &)
    {
        throw UsageError("number out of range in " + context + ": '" + text + "'");
    }
}

std::string format_full(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

SystemParams parse_params_text(std::istream &in)
{
    SystemParams p;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
        {
            line = line.substr(0, hash);
        }
        const std::string stripped = trim(line);
        if (stripped.empty())
        {
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
        {
            throw UsageError("config line " + std::to_string(line_no) + " has no '='");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        const double v = parse_double(value, "config key " + key);
        if (key == "xi_a")
        {
            p.xi_a = v;
        }
        else if (key == "xi_b")
        {
            p.xi_b = v;
        }
        else if (key == "delta_a")
        {
            p.delta_a = v;
        }
        else if (key == "delta_b")
        {
            p.delta_b = v;
        }
        else if (key == "g_a")
        {
            p.g_a = v;
        }
        else if (key == "g_b")
        {
            p.g_b = v;
        }
        else if (key == "omega")
        {
            p.omega = v;
        }
        else
        {
            throw UsageError("unknown config key '" + key + "'");
        }
    }
    return p;
}

SystemParams load_params_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw UsageError("cannot open config file: " + path);
    }
    return parse_params_text(in);
}

std::string format_params(const SystemParams &p)
{
    std::ostringstream out;
    out << "xi_a = " << format_full(p.xi_a) << "\n";
    out << "xi_b = " << format_full(p.xi_b) << "\n";
    out << "delta_a = " << format_full(p.delta_a) << "\n";
    out << "delta_b = " << format_full(p.delta_b) << "\n";
    out << "g_a = " << format_full(p.g_a) << "\n";
    out << "g_b = " << format_full(p.g_b) << "\n";
    out << "omega = " << format_full(p.omega) << "\n";
    return out.str();
}

} // namespace router
