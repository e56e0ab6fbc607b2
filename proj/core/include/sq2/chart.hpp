#pragma once

// Chart interchange and rendering: plain TSV tables of (s, t[, n, label,
// killed]) -> dim, and deterministic SVG in (t-s, s) coordinates with the
// column-filtration color code, open/filled dots, dotted v2 connectors and
// differential arrows.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sq2/tmf_e1.hpp"

namespace sq2 {

struct ChartPoint {
    int s = 0, t = 0, n = 0;
    int dim = 1;
    std::string label;
    bool killed = false;
    bool open_dot = false;  // rendering only; not part of the TSV format
};

struct ChartArrow {
    // endpoints by chart coordinates
    int s1 = 0, t1 = 0, s2 = 0, t2 = 0;
    bool dotted = false;  // dotted = v2 connector, solid = differential
    int n = 0;            // color source
};

struct ChartStyle {
    std::string title;
    // window in stem coordinates; when min > max the window is derived from
    // the data
    int min_stem = 0, max_stem = -1;
    int min_s = 0, max_s = -1;
};

// --- TSV ------------------------------------------------------------------

// three columns "s t dim", rows ascending in (s, t)
std::string ext_tsv(const std::map<std::pair<int, int>, int>& dims);

// six columns "s t n dim label killed", rows ascending in
// (s, t, n, label, killed); points with equal key columns are merged
std::string chart_tsv(const std::vector<ChartPoint>& points);

// accepts both flavors (detected per line by column count); blank lines and
// '#' comment lines are skipped
std::vector<ChartPoint> parse_chart_tsv(const std::string& text);

// --- adapters ---------------------------------------------------------------

std::vector<ChartPoint> ext_points(const std::map<std::pair<int, int>, int>& dims);
std::vector<ChartPoint> page_points(const E1Page& page);
std::vector<ChartArrow> page_arrows(const E1Page& page);

// For charts loaded from TSV (no structure): marks a point open when no
// point sits at (s+1, t+7, n), and returns dotted connectors where one does.
std::vector<ChartArrow> infer_v2_connectors(std::vector<ChartPoint>& points);

// --- SVG --------------------------------------------------------------------

std::string chart_svg(const std::vector<ChartPoint>& points,
                      const std::vector<ChartArrow>& arrows, const ChartStyle& style = {});

}  // namespace sq2
