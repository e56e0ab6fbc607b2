#include "sq2/chart.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sq2 {

namespace {

using PointKey = std::tuple<int, int, int, std::string, bool>;

PointKey key_of(const ChartPoint& p) { return {p.s, p.t, p.n, p.label, p.killed}; }

std::vector<ChartPoint> merge_points(const std::vector<ChartPoint>& points) {
    std::map<PointKey, int> dims;
    for (const ChartPoint& p : points) dims[key_of(p)] += p.dim;
    std::vector<ChartPoint> out;
    for (const auto& [key, dim] : dims) {
        ChartPoint p;
        std::tie(p.s, p.t, p.n, p.label, p.killed) = key;
        p.dim = dim;
        out.push_back(std::move(p));
    }
    return out;
}

const char* color_of(int n) {
    switch (n) {
        case 0: return "#000000";
        case 1: return "#0055cc";
        case 2: return "#cc0000";
        case 3: return "#008800";
        default: return "#888888";
    }
}

std::string xml_escape(const std::string& in) {
    std::string out;
    for (char c : in) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '"') out += "&quot;";
        else out += c;
    }
    return out;
}

}  // namespace

std::string ext_tsv(const std::map<std::pair<int, int>, int>& dims) {
    std::string out;
    for (const auto& [st, dim] : dims)
        out += std::to_string(st.first) + "\t" + std::to_string(st.second) + "\t" +
               std::to_string(dim) + "\n";
    return out;
}

std::string chart_tsv(const std::vector<ChartPoint>& points) {
    std::string out;
    for (const ChartPoint& p : merge_points(points))
        out += std::to_string(p.s) + "\t" + std::to_string(p.t) + "\t" + std::to_string(p.n) +
               "\t" + std::to_string(p.dim) + "\t" + p.label + "\t" + (p.killed ? "1" : "0") +
               "\n";
    return out;
}

std::vector<ChartPoint> parse_chart_tsv(const std::string& text) {
    std::vector<ChartPoint> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto to_int = [&](const std::string& f) {
        size_t used = 0;
        int v;
        try {
            v = std::stoi(f, &used);
        } catch (const std::exception&) {
            throw std::runtime_error("chart TSV line " + std::to_string(lineno) +
                                     ": expected an integer, got \"" + f + "\"");
        }
        if (used != f.size())
            throw std::runtime_error("chart TSV line " + std::to_string(lineno) +
                                     ": expected an integer, got \"" + f + "\"");
        return v;
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        size_t start = 0;
        while (true) {
            size_t tab = line.find('\t', start);
            fields.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        ChartPoint p;
        if (fields.size() == 3) {
            p.s = to_int(fields[0]), p.t = to_int(fields[1]), p.dim = to_int(fields[2]);
        } else if (fields.size() == 6) {
            p.s = to_int(fields[0]), p.t = to_int(fields[1]), p.n = to_int(fields[2]);
            p.dim = to_int(fields[3]);
            p.label = fields[4];
            if (fields[5] != "0" && fields[5] != "1")
                throw std::runtime_error("chart TSV line " + std::to_string(lineno) +
                                         ": killed column must be 0 or 1");
            p.killed = fields[5] == "1";
        } else {
            throw std::runtime_error("chart TSV line " + std::to_string(lineno) + ": expected 3 or 6 tab-separated columns, got " +
                                     std::to_string(fields.size()));
        }
        if (p.dim < 0)
            throw std::runtime_error("chart TSV line " + std::to_string(lineno) +
                                     ": negative dimension");
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<ChartPoint> ext_points(const std::map<std::pair<int, int>, int>& dims) {
    std::vector<ChartPoint> out;
    for (const auto& [st, dim] : dims) {
        ChartPoint p;
        p.s = st.first, p.t = st.second, p.dim = dim;
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<ChartPoint> page_points(const E1Page& page) {
    // grouping key includes the dot style so tower and free classes never
    // merge even when both are unlabeled
    std::map<std::tuple<int, int, int, std::string, bool, bool>, int> dims;
    for (const E1Class& c : page.classes)
        ++dims[{c.s, c.t, c.n, c.label(), c.killed, c.free_summand}];
    std::vector<ChartPoint> out;
    for (const auto& [key, dim] : dims) {
        ChartPoint p;
        std::tie(p.s, p.t, p.n, p.label, p.killed, p.open_dot) = key;
        p.dim = dim;
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<ChartArrow> page_arrows(const E1Page& page) {
    std::vector<ChartArrow> out;
    // dotted v2 connectors between consecutive tower classes
    std::set<std::tuple<int, int, int>> spots;
    for (const E1Class& c : page.classes)
        if (!c.free_summand) spots.insert({c.s, c.t, c.n});
    for (const E1Class& c : page.classes) {
        if (c.free_summand) continue;
        if (spots.count({c.s + 1, c.t + 7, c.n}))
            out.push_back({c.s, c.t, c.s + 1, c.t + 7, true, c.n});
    }
    std::sort(out.begin(), out.end(), [](const ChartArrow& a, const ChartArrow& b) {
        return std::tie(a.s1, a.t1, a.n, a.s2, a.t2) < std::tie(b.s1, b.t1, b.n, b.s2, b.t2);
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const ChartArrow& a, const ChartArrow& b) {
                              return std::tie(a.s1, a.t1, a.n, a.s2, a.t2) ==
                                     std::tie(b.s1, b.t1, b.n, b.s2, b.t2);
                          }),
              out.end());
    for (const auto& [src, dst] : page.differentials) {
        const E1Class& a = page.classes[src];
        const E1Class& b = page.classes[dst];
        out.push_back({a.s, a.t, b.s, b.t, false, a.n});
    }
    return out;
}

std::vector<ChartArrow> infer_v2_connectors(std::vector<ChartPoint>& points) {
    std::set<std::tuple<int, int, int>> spots;
    for (const ChartPoint& p : points) spots.insert({p.s, p.t, p.n});
    std::vector<ChartArrow> out;
    for (ChartPoint& p : points) {
        bool outgoing = spots.count({p.s + 1, p.t + 7, p.n}) != 0;
        bool incoming = spots.count({p.s - 1, p.t - 7, p.n}) != 0;
        p.open_dot = !outgoing && !incoming;
        if (outgoing) out.push_back({p.s, p.t, p.s + 1, p.t + 7, true, p.n});
    }
    std::sort(out.begin(), out.end(), [](const ChartArrow& a, const ChartArrow& b) {
        return std::tie(a.s1, a.t1, a.n, a.s2, a.t2) < std::tie(b.s1, b.t1, b.n, b.s2, b.t2);
    });
    return out;
}

std::string chart_svg(const std::vector<ChartPoint>& points,
                      const std::vector<ChartArrow>& arrows, const ChartStyle& style) {
    int min_x = style.min_stem, max_x = style.max_stem;
    int min_y = style.min_s, max_y = style.max_s;
    if (max_x < min_x || max_y < min_y) {
        if (points.empty()) {
            min_x = 0, max_x = 10, min_y = 0, max_y = 5;
        } else {
            min_x = points[0].t - points[0].s, max_x = min_x;
            min_y = points[0].s, max_y = min_y;
            for (const ChartPoint& p : points) {
                min_x = std::min(min_x, p.t - p.s), max_x = std::max(max_x, p.t - p.s);
                min_y = std::min(min_y, p.s), max_y = std::max(max_y, p.s);
            }
        }
    }
    const int cell = 28, margin = 46, title_pad = style.title.empty() ? 0 : 30;
    int width = (max_x - min_x + 1) * cell + 2 * margin;
    int height = (max_y - min_y + 1) * cell + 2 * margin + title_pad;
    auto px = [&](double x) { return margin + (x - min_x + 0.5) * cell; };
    auto py = [&](double y) { return height - margin - (y - min_y + 0.5) * cell; };
    auto num = [](double v) {
        std::ostringstream os;
        os << v;
        return os.str();
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";
    if (!style.title.empty())
        svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"15\" fill=\"#000000\">"
            << xml_escape(style.title) << "</text>\n";

    // grid
    svg << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (int x = min_x; x <= max_x + 1; ++x)
        svg << "<line x1=\"" << num(px(x - 0.5)) << "\" y1=\"" << num(py(min_y - 0.5))
            << "\" x2=\"" << num(px(x - 0.5)) << "\" y2=\"" << num(py(max_y + 0.5)) << "\"/>\n";
    for (int y = min_y; y <= max_y + 1; ++y)
        svg << "<line x1=\"" << num(px(min_x - 0.5)) << "\" y1=\"" << num(py(y - 0.5))
            << "\" x2=\"" << num(px(max_x + 0.5)) << "\" y2=\"" << num(py(y - 0.5)) << "\"/>\n";
    svg << "</g>\n";
    // axis labels
    svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#444444\">\n";
    for (int x = min_x; x <= max_x; ++x)
        if (x % 5 == 0 || x == min_x || x == max_x)
            svg << "<text x=\"" << num(px(x)) << "\" y=\"" << height - margin + 16
                << "\" text-anchor=\"middle\">" << x << "</text>\n";
    for (int y = min_y; y <= max_y; ++y)
        svg << "<text x=\"" << margin - 10 << "\" y=\"" << num(py(y) + 4)
            << "\" text-anchor=\"end\">" << y << "</text>\n";
    svg << "</g>\n";

    auto in_window = [&](int s, int t) {
        return t - s >= min_x && t - s <= max_x && s >= min_y && s <= max_y;
    };

    // arrows under the dots
    svg << "<defs><marker id=\"ah\" markerWidth=\"7\" markerHeight=\"7\" refX=\"5\" refY=\"3\" "
           "orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\"/></marker></defs>\n";
    for (const ChartArrow& a : arrows) {
        if (!in_window(a.s1, a.t1) || !in_window(a.s2, a.t2)) continue;
        svg << "<line x1=\"" << num(px(a.t1 - a.s1)) << "\" y1=\"" << num(py(a.s1))
            << "\" x2=\"" << num(px(a.t2 - a.s2)) << "\" y2=\"" << num(py(a.s2)) << "\" stroke=\""
            << (a.dotted ? "#999999" : color_of(a.n)) << "\" stroke-width=\"1.2\"";
        if (a.dotted)
            svg << " stroke-dasharray=\"2,3\"";
        else
            svg << " marker-end=\"url(#ah)\"";
        svg << "/>\n";
    }

    // dots: expand dims and spread classes sharing a spot
    std::map<std::pair<int, int>, std::vector<const ChartPoint*>> by_spot;
    std::vector<ChartPoint> sorted = points;
    std::sort(sorted.begin(), sorted.end(), [](const ChartPoint& a, const ChartPoint& b) {
        return std::tie(a.s, a.t, a.n, a.label, a.killed, a.open_dot) <
               std::tie(b.s, b.t, b.n, b.label, b.killed, b.open_dot);
    });
    for (const ChartPoint& p : sorted)
        if (in_window(p.s, p.t)) by_spot[{p.t - p.s, p.s}].push_back(&p);
    for (const auto& [spot, group] : by_spot) {
        int total = 0;
        for (const ChartPoint* p : group) total += p->dim;
        bool expand = total <= 6;
        int shown = expand ? total : int(group.size());
        int idx = 0;
        for (const ChartPoint* p : group) {
            int copies = expand ? p->dim : 1;
            for (int c = 0; c < copies; ++c, ++idx) {
                double dx = (idx - (shown - 1) / 2.0) * 7.0;
                double cx = px(spot.first) + dx, cy = py(spot.second);
                svg << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"3.2\""
                    << " stroke=\"" << color_of(p->n) << "\" stroke-width=\"1.4\" fill=\""
                    << (p->open_dot ? "#ffffff" : color_of(p->n)) << "\"";
                if (p->killed) svg << " opacity=\"0.35\"";
                svg << ">";
                std::string tip = "(" + std::to_string(p->t - p->s) + ", " +
                                  std::to_string(p->s) + ") n=" + std::to_string(p->n);
                if (!expand && p->dim > 1) tip += " dim=" + std::to_string(p->dim);
                if (!p->label.empty()) tip += " " + p->label;
                svg << "<title>" << xml_escape(tip) << "</title></circle>\n";
            }
            if (!expand && p->dim > 1)
                svg << "<text x=\"" << num(px(spot.first) + 10) << "\" y=\""
                    << num(py(spot.second) - 6)
                    << "\" font-family=\"sans-serif\" font-size=\"9\" fill=\"#444444\">x"
                    << p->dim << "</text>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace sq2
