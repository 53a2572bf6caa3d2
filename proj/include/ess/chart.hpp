#pragma once

#include "ess/instances.hpp"

#include <cstdio>
#include <sstream>

namespace ess {

enum class Display { Default, Adams };

struct ChartSpec {
    std::string title;
    Display display = Display::Default;
    bool a_lines = true;
    bool vbar_lines = true;
};

namespace chart_detail {

constexpr int cell = 40;
constexpr int margin = 50;
constexpr const char* blue = "#1f4fbf";
constexpr const char* purple = "#8e3fae";

inline std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", x);
    return buf;
}

inline std::string escape(const std::string& s)
{
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

struct Glyph {
    SpotKey spot;
    std::size_t index = 0;
    Integer order;   // 0 for ℤ
    bool known = true;
    double x = 0, y = 0;
};

}  // namespace chart_detail

/// SVG chart of one page. Default display: x = a (trivial part), y = b (sign part), filtration
/// suppressed. Adams display: x = a + b (underlying degree), y = filtration.
/// ℤ: black square, ℤ/2: blue dot, ℤ/k: blue ring labelled k, undetermined spot: grey "?".
/// a_σ-multiplication: blue line; v̄₁-multiplication: purple line.
inline std::string render_chart(const Page& p, const ChartSpec& spec)
{
    using namespace chart_detail;
    const DegreeWindow& w = p.region().window;
    const bool adams = spec.display == Display::Adams;
    const std::int64_t x_min = adams ? w.a_min + w.b_min : w.a_min;
    const std::int64_t x_max = adams ? w.a_max + w.b_max : w.a_max;
    const std::int64_t y_min = adams ? p.region().fil_min : w.b_min;
    const std::int64_t y_max = adams ? p.region().fil_max : w.b_max;
    const int width = static_cast<int>(x_max - x_min + 1) * cell + 2 * margin;
    const int grid_h = static_cast<int>(y_max - y_min + 1) * cell;
    const int height = grid_h + 2 * margin + 60;

    auto px = [&](std::int64_t x) { return margin + (x - x_min) * cell + cell / 2.0; };
    auto py = [&](std::int64_t y) { return margin + (y_max - y) * cell + cell / 2.0; };
    auto position = [&](const SpotKey& k) {
        return adams ? std::pair{k.degree.a + k.degree.b, k.filtration} : std::pair{k.degree.a, k.degree.b};
    };

    // Collect glyphs per chart position in key order.
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<Glyph>> at;
    for (const auto& [k, e] : p.entries()) {
        if (e.known && e.is_zero())
            continue;
        auto pos = position(k);
        if (!e.known) {
            at[pos].push_back({k, 0, 0, false});
            continue;
        }
        for (std::size_t i = 0; i < e.normal_form().size(); ++i)
            at[pos].push_back({k, i, e.group.normal_order(i), true});
    }
    std::map<std::pair<SpotKey, std::size_t>, std::pair<double, double>> where;
    for (auto& [pos, gs] : at) {
        const double n = static_cast<double>(gs.size());
        const double step = std::min(9.0, 32.0 / std::max(1.0, n));
        for (std::size_t i = 0; i < gs.size(); ++i) {
            gs[i].x = px(pos.first) + (static_cast<double>(i) - (n - 1) / 2) * step;
            gs[i].y = py(pos.second) + (static_cast<double>(i) - (n - 1) / 2) * step * 0.35;
            if (gs[i].known)
                where[{gs[i].spot, gs[i].index}] = {gs[i].x, gs[i].y};
        }
    }

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 "
       << width << " " << height << "\" font-family=\"monospace\" font-size=\"10\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << margin << "\" y=\"" << margin / 2 << "\" font-size=\"14\">" << escape(spec.title) << "</text>\n";

    // Grid and axis labels.
    os << "<g stroke=\"#e4e4e4\" stroke-width=\"1\">\n";
    for (std::int64_t x = x_min; x <= x_max + 1; ++x) {
        const double gx = margin + (x - x_min) * cell;
        os << "<line x1=\"" << num(gx) << "\" y1=\"" << margin << "\" x2=\"" << num(gx) << "\" y2=\"" << margin + grid_h
           << "\"/>\n";
    }
    for (std::int64_t y = y_min; y <= y_max + 1; ++y) {
        const double gy = margin + (y - y_min) * cell;
        os << "<line x1=\"" << margin << "\" y1=\"" << num(gy) << "\" x2=\"" << width - margin << "\" y2=\"" << num(gy)
           << "\"/>\n";
    }
    os << "</g>\n<g fill=\"#555555\" text-anchor=\"middle\">\n";
    for (std::int64_t x = x_min; x <= x_max; ++x)
        os << "<text x=\"" << num(px(x)) << "\" y=\"" << margin + grid_h + 14 << "\">" << x << "</text>\n";
    for (std::int64_t y = y_min; y <= y_max; ++y)
        os << "<text x=\"" << margin - 14 << "\" y=\"" << num(py(y) + 3) << "\">" << y << "</text>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"" << margin + grid_h + 30 << "\">" << (adams ? "a+b" : "a") << "</text>\n";
    os << "<text x=\"" << margin / 3 << "\" y=\"" << margin + grid_h / 2 << "\">" << (adams ? "f" : "b") << "</text>\n";
    os << "</g>\n";

    // Structure lines.
    const ChainModel& model = p.model();
    auto lines = [&](const ChainOperator& f, const SpotKey& step, const char* colour) {
        os << "<g stroke=\"" << colour << "\" stroke-width=\"1.2\">\n";
        for (const auto& [k, e] : p.entries()) {
            if (!e.known || e.is_zero())
                continue;
            const SpotKey t{k.filtration + step.filtration, k.degree + step.degree};
            const Entry* te = p.find(t);
            if (!te || !te->known || te->is_zero())
                continue;
            auto m = induced_operator(f, p, k, p, t);
            if (!m)
                continue;
            for (std::size_t j = 0; j < m->cols(); ++j)
                for (std::size_t i = 0; i < m->rows(); ++i) {
                    if ((*m)(i, j) == 0 || te->group.normal_order(i) == 1)
                        continue;
                    auto s = where.at({k, j});
                    auto d = where.at({t, i});
                    os << "<line x1=\"" << num(s.first) << "\" y1=\"" << num(s.second) << "\" x2=\"" << num(d.first)
                       << "\" y2=\"" << num(d.second) << "\"/>\n";
                }
        }
        os << "</g>\n";
    };
    if (spec.a_lines)
        lines(multiply_by(model, positive(0, 1)), SpotKey{0, RODegree(0, -1)}, blue);
    if (spec.vbar_lines && model.mode() == FiltrationMode::Slice)
        lines(multiply_by(model, positive(0, 0), 1), SpotKey{2, RODegree::rho()}, purple);

    // Glyphs.
    os << "<g>\n";
    for (const auto& [pos, gs] : at)
        for (const auto& g : gs) {
            if (!g.known)
                os << "<text x=\"" << num(g.x) << "\" y=\"" << num(g.y + 4) << "\" fill=\"#999999\" text-anchor=\"middle\">?</text>\n";
            else if (g.order == 0)
                os << "<rect x=\"" << num(g.x - 3.5) << "\" y=\"" << num(g.y - 3.5)
                   << "\" width=\"7\" height=\"7\" fill=\"black\"/>\n";
            else if (g.order == 2)
                os << "<circle cx=\"" << num(g.x) << "\" cy=\"" << num(g.y) << "\" r=\"3.5\" fill=\"" << blue << "\"/>\n";
            else
                os << "<circle cx=\"" << num(g.x) << "\" cy=\"" << num(g.y) << "\" r=\"5\" fill=\"white\" stroke=\"" << blue
                   << "\"/><text x=\"" << num(g.x) << "\" y=\"" << num(g.y + 3) << "\" font-size=\"7\" text-anchor=\"middle\">"
                   << g.order << "</text>\n";
        }
    os << "</g>\n";

    // Legend.
    const int ly = margin + grid_h + 48;
    os << "<g font-size=\"10\">\n";
    os << "<rect x=\"" << margin << "\" y=\"" << ly - 7 << "\" width=\"7\" height=\"7\" fill=\"black\"/><text x=\"" << margin + 12
       << "\" y=\"" << ly << "\">Z</text>\n";
    os << "<circle cx=\"" << margin + 44 << "\" cy=\"" << ly - 3 << "\" r=\"3.5\" fill=\"" << blue << "\"/><text x=\""
       << margin + 52 << "\" y=\"" << ly << "\">Z/2</text>\n";
    os << "<line x1=\"" << margin + 96 << "\" y1=\"" << ly - 9 << "\" x2=\"" << margin + 96 << "\" y2=\"" << ly + 1
       << "\" stroke=\"" << blue << "\"/><text x=\"" << margin + 102 << "\" y=\"" << ly << "\">a_sigma</text>\n";
    if (model.mode() == FiltrationMode::Slice)
        os << "<line x1=\"" << margin + 164 << "\" y1=\"" << ly + 1 << "\" x2=\"" << margin + 174 << "\" y2=\"" << ly - 9
           << "\" stroke=\"" << purple << "\"/><text x=\"" << margin + 180 << "\" y=\"" << ly << "\">vbar_1</text>\n";
    os << "<text x=\"" << margin + 240 << "\" y=\"" << ly << "\" fill=\"#999999\">? undetermined in window</text>\n";
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace ess
