#pragma once

#include "nevlab/nevanlinna.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace nevlab {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form, '.' decimal point, locale-free.
std::string format_double(double x);

/// Fixed columns: r, T_ahlfors, T_green, T_ricci, then m_j, N_j, Nbar_j
/// per target.  Header row mandatory.
std::string rows_to_csv(const std::vector<NevanlinnaRow>& rows);

void write_text_file(const std::string& path, const std::string& content);

Json row_to_json(const NevanlinnaRow& row);
Json rows_to_json(const std::vector<NevanlinnaRow>& rows);

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

/// Native SVG line plot: axes, ticks, polylines, legend.  No external
/// renderer involved.
std::string render_svg_plot(const std::string& title, const std::string& x_label,
                            const std::string& y_label,
                            const std::vector<PlotSeries>& series,
                            int width = 720, int height = 480);

} // namespace nevlab
