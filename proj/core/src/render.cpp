#include "orbitscope/render.hpp"

#include "orbitscope/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

namespace orbitscope {

namespace {

constexpr int kMaxFullGridVariables = 5;
constexpr double kMarginLeft = 90.0;
constexpr double kMarginRight = 30.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 70.0;

constexpr std::array<const char*, 10> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};

std::string num(double v)
{
    // Avoid "-0.00" so output bytes do not depend on rounding sign.
    if (std::abs(v) < 0.005)
        v = 0.0;
    return fmt::format("{:.2f}", v);
}

std::string xml_escape(std::string_view text)
{
    std::string out;
    for (char c : text)
    {
        switch (c)
        {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

class SvgDocument
{
public:
    explicit SvgDocument(const FigureConfig& config) : _config(config)
    {
        _out = fmt::format("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                           "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                           "width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
                           "font-family=\"sans-serif\" font-size=\"11\">\n",
                           config.width, config.height);
        _out += fmt::format("<rect class=\"background\" x=\"0\" y=\"0\" width=\"{}\" "
                            "height=\"{}\" fill=\"#ffffff\"/>\n",
                            config.width, config.height);
        if (!config.title.empty())
            _out += fmt::format("<text class=\"title\" x=\"{}\" y=\"22\" "
                                "text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                                num(config.width / 2.0), xml_escape(config.title));
    }

    SvgDocument& operator<<(std::string_view s)
    {
        _out += s;
        return *this;
    }

    void text(std::string_view cls, double x, double y, std::string_view content,
              std::string_view anchor = "middle", double rotate = 0.0)
    {
        _out += fmt::format("<text class=\"{}\" x=\"{}\" y=\"{}\" text-anchor=\"{}\"", cls,
                            num(x), num(y), anchor);
        if (rotate != 0.0)
            _out += fmt::format(" transform=\"rotate({} {} {})\"", num(rotate), num(x), num(y));
        _out += fmt::format(">{}</text>\n", xml_escape(content));
    }

    void line(std::string_view cls, double x1, double y1, double x2, double y2,
              std::string_view extra = "")
    {
        _out += fmt::format("<line class=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"{}/>\n",
                            cls, num(x1), num(y1), num(x2), num(y2), extra);
    }

    std::string finish()
    {
        _out += "</svg>\n";
        return std::move(_out);
    }

    double plot_left() const { return kMarginLeft; }
    double plot_right() const { return _config.width - kMarginRight; }
    double plot_top() const { return kMarginTop; }
    double plot_bottom() const { return _config.height - kMarginBottom; }

private:
    const FigureConfig& _config;
    std::string _out;
};

int orbit_variables(std::span<const Orbit> orbits)
{
    int n = 0;
    for (const auto& o : orbits)
    {
        if (o.states.empty())
            continue;
        if (n == 0)
            n = o.variables();
        else if (n != o.variables())
            throw ValidationError("orbits to render have different variable counts");
    }
    if (n == 0)
        throw ValidationError("nothing to render: no orbit states");
    return n;
}

void require_drawable(int n, const FigureConfig& config)
{
    if (n > kMaxFullGridVariables && !config.subset)
        throw ValidationError("S_" + std::to_string(n) +
                              " is too large to draw in full; pass a subset");
    if (config.subset && config.subset->variables() != n)
        throw ValidationError("subset is defined over S_" +
                              std::to_string(config.subset->variables()) + ", orbits over S_" +
                              std::to_string(n));
}

bool in_subset(const FigureConfig& config, StateId id)
{
    return !config.subset || config.subset->contains(id);
}

template <typename T>
std::size_t index_of(const std::vector<T>& sorted, T value)
{
    return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), value) -
                                    sorted.begin());
}

} // namespace

void validate_figure_config(const FigureConfig& config)
{
    if (config.width <= kMarginLeft + kMarginRight + 10 ||
        config.height <= kMarginTop + kMarginBottom + 10)
        throw ValidationError("figure is too small: " + std::to_string(config.width) + "x" +
                              std::to_string(config.height));
    if (!(config.dot_radius > 0.0))
        throw ValidationError("dot radius must be positive");
    if (!(config.min_edge_opacity > 0.0 && config.min_edge_opacity <= 1.0))
        throw ValidationError("minimum edge opacity must lie in (0, 1]");
}

double edge_opacity(const FigureConfig& config, std::uint64_t count, std::uint64_t max_count)
{
    if (max_count == 0)
        return config.min_edge_opacity;
    const double share = std::min(1.0, static_cast<double>(count) / static_cast<double>(max_count));
    return config.min_edge_opacity + (1.0 - config.min_edge_opacity) * share;
}

// ----------------------------------------------------------------------------

std::string render_state_space(std::span<const Orbit> orbits, const FigureConfig& config)
{
    validate_figure_config(config);
    const int n = orbit_variables(orbits);
    require_drawable(n, config);

    std::set<StateId> visited;
    std::map<Transition, std::uint64_t> edges;
    for (const auto& o : orbits)
    {
        for (std::size_t t = 0; t < o.states.size(); ++t)
        {
            const auto id = o.states[t].id();
            if (in_subset(config, id))
                visited.insert(id);
            if (t == 0)
                continue;
            const auto prev = o.states[t - 1].id();
            if (in_subset(config, prev) && in_subset(config, id))
                ++edges[{prev, id}];
        }
    }

    // Columns hold answer values, rows hold permutation ranks.
    const std::uint64_t answer_mask = (std::uint64_t{1} << n) - 1;
    std::vector<std::uint64_t> columns;
    std::vector<std::uint64_t> rows;
    auto add_axes = [&](StateId id) {
        columns.push_back((id - 1) & answer_mask);
        rows.push_back((id - 1) >> n);
    };
    if (!config.subset)
    {
        for (std::uint64_t v = 0; v <= answer_mask; ++v)
            columns.push_back(v);
        for (std::uint64_t r = 0; r < factorial(n); ++r)
            rows.push_back(r);
    }
    else if (config.subset->is_universal())
        std::for_each(visited.begin(), visited.end(), add_axes);
    else
        std::for_each(config.subset->ids().begin(), config.subset->ids().end(), add_axes);
    std::sort(columns.begin(), columns.end());
    columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

    SvgDocument svg(config);
    const double cell_w = (svg.plot_right() - svg.plot_left()) /
                          static_cast<double>(std::max<std::size_t>(1, columns.size()));
    const double cell_h = (svg.plot_bottom() - svg.plot_top()) /
                          static_cast<double>(std::max<std::size_t>(1, rows.size()));
    auto x_of = [&](StateId id) {
        return svg.plot_left() +
               (static_cast<double>(index_of(columns, (id - 1) & answer_mask)) + 0.5) * cell_w;
    };
    auto y_of = [&](StateId id) {
        return svg.plot_bottom() -
               (static_cast<double>(index_of(rows, (id - 1) >> n)) + 0.5) * cell_h;
    };

    svg << "<g class=\"axes\" stroke=\"#dddddd\" stroke-width=\"0.5\">\n";
    if (columns.size() <= 64)
        for (std::size_t c = 0; c < columns.size(); ++c)
        {
            const double x = svg.plot_left() + (static_cast<double>(c) + 0.5) * cell_w;
            svg.line("grid", x, svg.plot_top(), x, svg.plot_bottom());
        }
    if (rows.size() <= 128)
        for (std::size_t r = 0; r < rows.size(); ++r)
        {
            const double y = svg.plot_bottom() - (static_cast<double>(r) + 0.5) * cell_h;
            svg.line("grid", svg.plot_left(), y, svg.plot_right(), y);
        }
    svg << "</g>\n";

    if (columns.size() <= 32)
        for (std::size_t c = 0; c < columns.size(); ++c)
            svg.text("x-tick", svg.plot_left() + (static_cast<double>(c) + 0.5) * cell_w,
                     svg.plot_bottom() + 14, AnswerString::from_value(columns[c], n).to_string(),
                     "end", -60.0);
    if (rows.size() <= 48)
        for (std::size_t r = 0; r < rows.size(); ++r)
            svg.text("y-tick", svg.plot_left() - 6,
                     svg.plot_bottom() - (static_cast<double>(r) + 0.5) * cell_h + 4,
                     perm_unrank(rows[r], n).to_string(), "end");
    svg.text("x-label", (svg.plot_left() + svg.plot_right()) / 2, config.height - 8,
             "answers x");
    svg.text("y-label", 16, (svg.plot_top() + svg.plot_bottom()) / 2, "order y", "middle",
             -90.0);

    std::uint64_t max_count = 0;
    for (const auto& [key, c] : edges)
        if (key.from != key.to)
            max_count = std::max(max_count, c);

    svg << "<g class=\"transitions\" stroke=\"#1f4e99\" stroke-width=\"1.2\">\n";
    for (const auto& [key, c] : edges)
    {
        if (key.from == key.to)
            continue;
        svg.line("transition", x_of(key.from), y_of(key.from), x_of(key.to), y_of(key.to),
                 fmt::format(" data-from=\"{}\" data-to=\"{}\" data-count=\"{}\" "
                             "stroke-opacity=\"{}\"",
                             key.from, key.to, c, num(edge_opacity(config, c, max_count))));
    }
    svg << "</g>\n";

    svg << "<g class=\"self-loops\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1\">\n";
    for (const auto& [key, c] : edges)
        if (key.from == key.to)
            svg << fmt::format("<circle class=\"self-loop\" data-id=\"{}\" data-count=\"{}\" "
                               "cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n",
                               key.from, c, num(x_of(key.from)), num(y_of(key.from)),
                               num(config.dot_radius * 2.0));
    svg << "</g>\n";

    svg << "<g class=\"states\" fill=\"#111111\">\n";
    for (auto id : visited)
        svg << fmt::format("<circle class=\"state\" data-id=\"{}\" cx=\"{}\" cy=\"{}\" "
                           "r=\"{}\"/>\n",
                           id, num(x_of(id)), num(y_of(id)), num(config.dot_radius));
    svg << "</g>\n";
    if (config.axis_labels == AxisLabelMode::ids)
        for (auto id : visited)
            svg.text("state-label", x_of(id) + config.dot_radius + 2, y_of(id) - 3,
                     std::to_string(id), "start");
    return svg.finish();
}

// ----------------------------------------------------------------------------

std::string render_time_expanded(std::span<const Orbit> orbits, const FigureConfig& config)
{
    validate_figure_config(config);
    const int n = orbit_variables(orbits);
    require_drawable(n, config);

    std::vector<std::int64_t> times;
    StateId lo = 0;
    StateId hi = 0;
    for (const auto& o : orbits)
    {
        times.insert(times.end(), o.times.begin(), o.times.end());
        for (const auto& s : o.states)
            if (in_subset(config, s.id()))
            {
                lo = lo == 0 ? s.id() : std::min(lo, s.id());
                hi = std::max(hi, s.id());
            }
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    // Listed subsets get one evenly spaced row per id; otherwise ids map
    // linearly between the extremes visited.
    std::vector<StateId> rows;
    if (config.subset && !config.subset->is_universal())
        rows.assign(config.subset->ids().begin(), config.subset->ids().end());

    SvgDocument svg(config);
    const double span_x = svg.plot_right() - svg.plot_left();
    const double span_y = svg.plot_bottom() - svg.plot_top();
    auto x_of = [&](std::int64_t t) {
        if (times.size() <= 1)
            return svg.plot_left() + span_x / 2;
        return svg.plot_left() +
               span_x * static_cast<double>(index_of(times, t)) /
                   static_cast<double>(times.size() - 1);
    };
    auto y_of = [&](StateId id) {
        if (!rows.empty())
            return svg.plot_bottom() - span_y * (static_cast<double>(index_of(rows, id)) + 0.5) /
                                           static_cast<double>(rows.size());
        if (hi == lo)
            return svg.plot_bottom() - span_y / 2;
        return svg.plot_bottom() -
               span_y * static_cast<double>(id - lo) / static_cast<double>(hi - lo);
    };

    for (auto t : times)
        svg.text("x-tick", x_of(t), svg.plot_bottom() + 16, std::to_string(t));
    if (!rows.empty())
    {
        if (rows.size() <= 48)
            for (auto id : rows)
                svg.text("y-tick", svg.plot_left() - 6, y_of(id) + 4, std::to_string(id), "end");
    }
    else if (lo != 0)
    {
        svg.text("y-tick", svg.plot_left() - 6, y_of(lo) + 4, std::to_string(lo), "end");
        if (hi != lo)
            svg.text("y-tick", svg.plot_left() - 6, y_of(hi) + 4, std::to_string(hi), "end");
    }
    svg.text("x-label", (svg.plot_left() + svg.plot_right()) / 2, config.height - 8, "time");
    svg.text("y-label", 16, (svg.plot_top() + svg.plot_bottom()) / 2, "state id", "middle",
             -90.0);

    const double opacity = std::clamp(1.0 / std::sqrt(static_cast<double>(orbits.size())),
                                      0.05, 1.0);
    svg << fmt::format("<g class=\"orbits\" fill=\"none\" stroke=\"#1f4e99\" "
                       "stroke-width=\"1.5\" stroke-opacity=\"{}\">\n",
                       num(opacity));
    for (const auto& o : orbits)
    {
        std::string ids;
        std::string points;
        for (std::size_t t = 0; t < o.states.size() && t < o.times.size(); ++t)
        {
            const auto id = o.states[t].id();
            if (!in_subset(config, id))
                continue;
            if (!ids.empty())
            {
                ids.push_back(' ');
                points.push_back(' ');
            }
            ids += std::to_string(id);
            points += num(x_of(o.times[t])) + "," + num(y_of(id));
        }
        if (ids.empty())
            continue;
        svg << fmt::format("<polyline class=\"orbit\" data-subject=\"{}\" data-ids=\"{}\" "
                           "points=\"{}\"/>\n",
                           xml_escape(o.subject_id), ids, points);
    }
    svg << "</g>\n";
    return svg.finish();
}

// ----------------------------------------------------------------------------

std::string render_density_graph(const TransitionCounts& counts, const StateSubset& subset,
                                 const FigureConfig& config)
{
    validate_figure_config(config);
    if (subset.variables() != counts.variables())
        throw ValidationError("subset and densities are over different state spaces");

    std::vector<StateId> nodes;
    if (subset.is_universal())
    {
        std::set<StateId> seen;
        for (const auto& [key, c] : counts.entries())
        {
            seen.insert(key.from);
            seen.insert(key.to);
        }
        nodes.assign(seen.begin(), seen.end());
    }
    else
        nodes.assign(subset.ids().begin(), subset.ids().end());
    if (nodes.empty())
        throw ValidationError("density graph needs at least one state");

    SvgDocument svg(config);
    const double cx = config.width / 2.0;
    const double cy = (config.height + kMarginTop) / 2.0;
    const double radius = 0.34 * std::min(config.width, config.height);
    const double node_r = std::max(16.0, config.dot_radius * 4.0);
    std::map<StateId, std::pair<double, double>> at;
    std::map<StateId, double> angle;
    for (std::size_t k = 0; k < nodes.size(); ++k)
    {
        const double a = -std::numbers::pi / 2 +
                         2 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(nodes.size());
        angle[nodes[k]] = a;
        at[nodes[k]] = nodes.size() == 1
                           ? std::pair{cx, cy}
                           : std::pair{cx + radius * std::cos(a), cy + radius * std::sin(a)};
    }

    std::uint64_t max_count = 0;
    for (const auto& [key, c] : counts.entries())
        if (subset.contains(key.from) && subset.contains(key.to) && c >= config.min_edge_count)
            max_count = std::max(max_count, c);

    svg << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
           "markerWidth=\"7\" markerHeight=\"7\" orient=\"auto\">"
           "<path d=\"M0,0 L10,5 L0,10 z\" fill=\"#333333\"/></marker></defs>\n";
    svg << "<g class=\"edges\" fill=\"none\" stroke=\"#333333\">\n";
    for (const auto& [key, c] : counts.entries())
    {
        if (!subset.contains(key.from) || !subset.contains(key.to) || c < config.min_edge_count)
            continue;
        const double width = 1.0 + 4.0 * static_cast<double>(c) / static_cast<double>(max_count);
        const double opacity = edge_opacity(config, c, max_count);
        const auto [x1, y1] = at[key.from];
        const auto [x2, y2] = at[key.to];
        std::string path;
        double lx = 0;
        double ly = 0;
        std::string label;
        if (key.from == key.to)
        {
            const double a = nodes.size() == 1 ? -std::numbers::pi / 2 : angle[key.from];
            auto px = [&](double da, double r) { return x1 + r * std::cos(a + da); };
            auto py = [&](double da, double r) { return y1 + r * std::sin(a + da); };
            path = fmt::format("M{},{} C{},{} {},{} {},{}", num(px(-0.5, node_r)),
                               num(py(-0.5, node_r)), num(px(-0.7, node_r * 3.5)),
                               num(py(-0.7, node_r * 3.5)), num(px(0.7, node_r * 3.5)),
                               num(py(0.7, node_r * 3.5)), num(px(0.5, node_r)),
                               num(py(0.5, node_r)));
            lx = px(0.0, node_r * 3.3);
            ly = py(0.0, node_r * 3.3) + 4;
            label = "id " + std::to_string(c);
        }
        else
        {
            // Bend each direction to its own side so i->j and j->i stay apart.
            const double dx = x2 - x1;
            const double dy = y2 - y1;
            const double qx = (x1 + x2) / 2 - 0.15 * dy;
            const double qy = (y1 + y2) / 2 + 0.15 * dx;
            auto pull = [&](double x, double y) {
                const double ux = qx - x;
                const double uy = qy - y;
                const double l = std::hypot(ux, uy);
                return std::pair{x + node_r * ux / l, y + node_r * uy / l};
            };
            const auto [sx, sy] = pull(x1, y1);
            const auto [ex, ey] = pull(x2, y2);
            path = fmt::format("M{},{} Q{},{} {},{}", num(sx), num(sy), num(qx), num(qy),
                               num(ex), num(ey));
            lx = 0.25 * x1 + 0.5 * qx + 0.25 * x2;
            ly = 0.25 * y1 + 0.5 * qy + 0.25 * y2 + 4;
            label = std::to_string(c);
        }
        svg << fmt::format("<path class=\"edge{}\" data-from=\"{}\" data-to=\"{}\" "
                           "data-count=\"{}\" d=\"{}\" stroke-width=\"{}\" "
                           "stroke-opacity=\"{}\" marker-end=\"url(#arrow)\"/>\n",
                           key.from == key.to ? " self" : "", key.from, key.to, c, path,
                           num(width), num(opacity));
        svg << fmt::format("<text class=\"edge-label\" data-from=\"{}\" data-to=\"{}\" x=\"{}\" "
                           "y=\"{}\" text-anchor=\"middle\" stroke=\"none\" "
                           "fill=\"#000000\">{}</text>\n",
                           key.from, key.to, num(lx), num(ly), label);
    }
    svg << "</g>\n";

    for (auto id : nodes)
    {
        const auto [x, y] = at[id];
        const auto state = state_from_id(id, subset.variables());
        svg << fmt::format("<g class=\"node\" data-id=\"{}\">"
                           "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#f2f2f2\" "
                           "stroke=\"#111111\"/>",
                           id, num(x), num(y), num(node_r));
        svg << fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" "
                           "font-weight=\"bold\">{}</text>",
                           num(x), num(y + 4), id);
        svg << fmt::format("<text class=\"pair\" x=\"{}\" y=\"{}\" text-anchor=\"middle\" "
                           "font-size=\"9\">{}</text></g>\n",
                           num(x), num(y + node_r + 11), xml_escape(state.to_string()));
    }
    return svg.finish();
}

// ----------------------------------------------------------------------------

std::string render_occupancy(const Occupancy& occupancy, const FigureConfig& config)
{
    validate_figure_config(config);
    std::vector<std::pair<StateId, const std::vector<std::uint64_t>*>> series;
    std::uint64_t max_count = 1;
    for (const auto& [id, values] : occupancy.counts)
    {
        if (config.subset && !config.subset->contains(id))
            continue;
        series.emplace_back(id, &values);
        for (auto v : values)
            max_count = std::max(max_count, v);
    }
    if (series.empty() || occupancy.times.empty())
        throw ValidationError("occupancy figure needs at least one state and one time");

    SvgDocument svg(config);
    const double legend_w = 110.0;
    const double left = svg.plot_left();
    const double right = svg.plot_right() - legend_w;
    const double span_y = svg.plot_bottom() - svg.plot_top();
    const auto& times = occupancy.times;
    auto x_of = [&](std::size_t k) {
        if (times.size() == 1)
            return (left + right) / 2;
        return left + (right - left) * static_cast<double>(k) /
                          static_cast<double>(times.size() - 1);
    };
    auto y_of = [&](std::uint64_t v) {
        return svg.plot_bottom() -
               span_y * static_cast<double>(v) / static_cast<double>(max_count);
    };

    svg.line("axis", left, svg.plot_bottom(), right, svg.plot_bottom(), " stroke=\"#333333\"");
    svg.line("axis", left, svg.plot_top(), left, svg.plot_bottom(), " stroke=\"#333333\"");
    for (std::size_t k = 0; k < times.size(); ++k)
        svg.text("x-tick", x_of(k), svg.plot_bottom() + 16, std::to_string(times[k]));
    svg.text("y-tick", left - 6, y_of(0) + 4, "0", "end");
    svg.text("y-tick", left - 6, y_of(max_count) + 4, std::to_string(max_count), "end");
    svg.text("x-label", (left + right) / 2, config.height - 8, "time");
    svg.text("y-label", 16, (svg.plot_top() + svg.plot_bottom()) / 2, "orbits in state",
             "middle", -90.0);

    for (std::size_t s = 0; s < series.size(); ++s)
    {
        const auto& [id, values] = series[s];
        const char* color = kPalette[s % kPalette.size()];
        std::string points;
        std::string data;
        for (std::size_t k = 0; k < times.size(); ++k)
        {
            if (k > 0)
            {
                points.push_back(' ');
                data.push_back(' ');
            }
            points += num(x_of(k)) + "," + num(y_of((*values)[k]));
            data += std::to_string((*values)[k]);
        }
        svg << fmt::format("<polyline class=\"series\" data-state=\"{}\" data-values=\"{}\" "
                           "points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.8\"/>\n",
                           id, data, points, color);
        const double ly = svg.plot_top() + 14.0 * static_cast<double>(s);
        svg.line("legend-key", right + 16, ly, right + 36, ly,
                 fmt::format(" stroke=\"{}\" stroke-width=\"2\"", color));
        svg.text("legend", right + 40, ly + 4, "state " + std::to_string(id), "start");
    }
    return svg.finish();
}

} // namespace orbitscope
