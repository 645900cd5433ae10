#include "nevlab/report.hpp"
#include "nevlab/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace nevlab {

std::string format_double(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string rows_to_csv(const std::vector<NevanlinnaRow>& rows) {
    std::ostringstream out;
    const size_t q = rows.empty() ? 0 : rows.front().targets.size();
    out << "r,T_ahlfors,T_green,T_ricci";
    for (size_t j = 1; j <= q; ++j)
        out << ",m_" << j << ",N_" << j << ",Nbar_" << j;
    out << "\n";
    for (const NevanlinnaRow& row : rows) {
        out << format_double(row.r) << ',' << format_double(row.T_ahlfors) << ','
            << format_double(row.T_green) << ',' << format_double(row.T_ricci);
        for (const TargetColumns& col : row.targets)
            out << ',' << format_double(col.m) << ',' << format_double(col.N) << ','
                << format_double(col.Nbar);
        out << "\n";
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file '" + path + "'");
    out << content;
}

namespace {

std::string target_label(const SpherePoint& a) {
    if (a.is_infinity()) return "inf";
    const Complex v = a.affine();
    std::ostringstream os;
    os << format_double(v.real());
    if (v.imag() != 0.0) os << (v.imag() < 0 ? "-" : "+") << format_double(std::abs(v.imag())) << "i";
    return os.str();
}

} // namespace

Json row_to_json(const NevanlinnaRow& row) {
    Json j;
    j["r"] = row.r;
    j["T_ahlfors"] = row.T_ahlfors;
    j["T_green"] = row.T_green;
    j["T_ricci"] = row.T_ricci;
    j["form_norm_inf"] = row.form_norm_inf;
    j["form_norm_sup"] = row.form_norm_sup;
    j["ok"] = row.ok;
    if (!row.ok) j["error"] = row.error;
    Json targets = Json::array();
    for (const TargetColumns& col : row.targets) {
        Json t;
        t["target"] = target_label(col.target);
        t["m"] = col.m;
        t["N"] = col.N;
        t["Nbar"] = col.Nbar;
        targets.push_back(std::move(t));
    }
    j["targets"] = std::move(targets);
    return j;
}

Json rows_to_json(const std::vector<NevanlinnaRow>& rows) {
    Json arr = Json::array();
    for (const NevanlinnaRow& row : rows) arr.push_back(row_to_json(row));
    return arr;
}

namespace {

struct Range {
    double lo = 0.0, hi = 1.0;
    void expand(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
};

} // namespace

std::string render_svg_plot(const std::string& title, const std::string& x_label,
                            const std::string& y_label,
                            const std::vector<PlotSeries>& series, int width, int height) {
    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    const double ml = 64, mr = 16, mt = 36, mb = 48;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const PlotSeries& s : series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xlo = std::min(xlo, s.x[i]);
            xhi = std::max(xhi, s.x[i]);
            ylo = std::min(ylo, s.y[i]);
            yhi = std::max(yhi, s.y[i]);
        }
    if (!(xlo < xhi)) { xlo = 0; xhi = 1; }
    if (!(ylo < yhi)) { ylo -= 0.5; yhi += 0.5; }
    const double ypad = 0.06 * (yhi - ylo);
    ylo -= ypad;
    yhi += ypad;

    auto X = [&](double x) { return ml + (x - xlo) / (xhi - xlo) * pw; };
    auto Y = [&](double y) { return mt + ph - (y - ylo) / (yhi - ylo) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
    // axes
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw
        << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << mt + ph << "\" stroke=\"black\"/>\n";
    // ticks
    for (int i = 0; i <= 5; ++i) {
        const double xv = xlo + (xhi - xlo) * i / 5.0;
        const double yv = ylo + (yhi - ylo) * i / 5.0;
        svg << "<line x1=\"" << X(xv) << "\" y1=\"" << mt + ph << "\" x2=\"" << X(xv)
            << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << X(xv) << "\" y=\"" << mt + ph + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
            << format_double(std::round(xv * 1e4) / 1e4) << "</text>\n";
        svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << Y(yv) << "\" x2=\"" << ml
            << "\" y2=\"" << Y(yv) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << ml - 8 << "\" y=\"" << Y(yv) + 3
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
            << format_double(std::round(yv * 1e4) / 1e4) << "</text>\n";
    }
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_label
        << "</text>\n";
    svg << "<text x=\"16\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 16 " << mt + ph / 2 << ")\">" << y_label << "</text>\n";

    for (size_t si = 0; si < series.size(); ++si) {
        const PlotSeries& s = series[si];
        const char* color = kColors[si % 8];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            svg << X(s.x[i]) << ',' << Y(s.y[i]) << ' ';
        }
        svg << "\"/>\n";
        svg << "<text x=\"" << ml + pw - 8 << "\" y=\"" << mt + 14 + 14 * si
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\""
            << color << "\">" << s.name << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace nevlab
