#include "nevlab/catalog.hpp"
#include "nevlab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace nevlab {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// "name{body}" -> (name, body); plain "name" -> (name, "")
std::pair<std::string, std::string> split_braces(const std::string& spec) {
    const size_t open = spec.find('{');
    if (open == std::string::npos) return {trim(spec), ""};
    if (spec.back() != '}')
        throw ConfigError("unbalanced braces in spec '" + spec + "'");
    return {trim(spec.substr(0, open)), spec.substr(open + 1, spec.size() - open - 2)};
}

std::vector<std::string> split_top(const std::string& body) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : body) {
        if (c == '[' || c == '{') ++depth;
        if (c == ']' || c == '}') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

Complex parse_complex(const std::string& raw) {
    const std::string s = trim(raw);
    if (s.empty()) throw ConfigError("empty number");
    if (s == "i") return {0.0, 1.0};
    if (s == "-i") return {0.0, -1.0};
    // split a+bi / a-bi at the last sign that is not an exponent sign
    size_t split = std::string::npos;
    for (size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto to_d = [&](const std::string& t) {
        try {
            size_t pos = 0;
            const double x = std::stod(t, &pos);
            if (pos != t.size()) throw std::invalid_argument(t);
            return x;
        } catch (const std::exception&) {
            throw ConfigError("cannot parse number '" + raw + "'");
        }
    };
    if (s.back() == 'i') {
        if (split == std::string::npos) {
            std::string im = s.substr(0, s.size() - 1);
            if (im.empty() || im == "+") im = "1";
            else if (im == "-") im = "-1";
            return {0.0, to_d(im)};
        }
        std::string im = s.substr(split, s.size() - split - 1);
        if (im == "+") im = "1";
        else if (im == "-") im = "-1";
        return {to_d(s.substr(0, split)), to_d(im)};
    }
    if (split != std::string::npos)
        throw ConfigError("cannot parse number '" + raw + "'");
    return {to_d(s), 0.0};
}

std::vector<Complex> parse_coeff_list(const std::string& field, const std::string& raw) {
    const std::string s = trim(raw);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw ConfigError("field '" + field + "' needs a coefficient list [..]");
    std::vector<Complex> out;
    for (const std::string& item : split_top(s.substr(1, s.size() - 2)))
        out.push_back(parse_complex(item));
    if (out.empty()) throw ConfigError("field '" + field + "' is empty");
    return out;
}

} // namespace

std::vector<CatalogEntry> catalog_surfaces() {
    return {
        {"euclidean-plane", "complex plane, flat metric, radius inf"},
        {"euclidean-disc", "unit disc, flat metric, radius 1"},
        {"poincare-disc", "unit disc, weight 4/(1-|w|^2)^2, curvature bound 1"},
        {"chart:halfplane", "unit disc presented by phi=(1-z)^-2, parabolic"},
    };
}

std::vector<CatalogEntry> catalog_functions() {
    return {
        {"identity", "w, as [1:w]"},
        {"square", "w^2"},
        {"cubic-roots", "w^3 - 1"},
        {"exp", "e^w as a balanced pair"},
        {"moebius{a,b,c,d}", "(aw+b)/(cw+d), default w/(w+1)"},
        {"inv-gap", "1/(1-w) on the disc"},
        {"exp-gap", "exp(1/(1-w)) on the disc"},
        {"lacunary", "sum 2^n w^(2^n) on the disc"},
        {"rational{num:[..],den:[..]}", "general rational map"},
        {"composed{outer:<id>,chart:halfplane}", "chart pullback of a catalog map"},
    };
}

SurfaceModel build_surface(const std::string& spec) {
    const std::string s = trim(spec);
    if (s == "euclidean-plane") return make_euclidean_plane();
    if (s == "euclidean-disc") return make_euclidean_disc();
    if (s == "poincare-disc") return make_poincare_disc();
    if (s == "chart:halfplane" || s == "chart{halfplane}")
        return make_halfplane_chart_surface();
    throw ConfigError("unknown surface '" + spec + "'");
}

MeromorphicMap build_function(const std::string& spec, const SurfaceModel& surface) {
    const auto [id, body] = split_braces(trim(spec));
    const double R = surface.s_radius();
    if (id == "identity") return make_rational({{0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}});
    if (id == "square")
        return make_rational({{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}});
    if (id == "cubic-roots")
        return make_rational({{-1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}});
    if (id == "exp") return make_exp();
    if (id == "inv-gap") return make_rational({{1.0, 0.0}}, {{1.0, 0.0}, {-1.0, 0.0}}, 1.0);
    if (id == "exp-gap") return make_exp_gap();
    if (id == "lacunary") return make_lacunary();
    if (id == "moebius") {
        if (body.empty()) return make_moebius(1.0, 0.0, 1.0, 1.0);
        std::vector<Complex> v;
        for (const std::string& item : split_top(body)) {
            const size_t colon = item.find(':');
            v.push_back(parse_complex(colon == std::string::npos ? item
                                                                 : item.substr(colon + 1)));
        }
        if (v.size() != 4) throw ConfigError("moebius needs four parameters a,b,c,d");
        return make_moebius(v[0], v[1], v[2], v[3]);
    }
    if (id == "rational") {
        std::vector<Complex> num, den{{1.0, 0.0}};
        for (const std::string& item : split_top(body)) {
            const size_t colon = item.find(':');
            if (colon == std::string::npos)
                throw ConfigError("rational needs num:[..] and den:[..]");
            const std::string key = trim(item.substr(0, colon));
            if (key == "num") num = parse_coeff_list("num", item.substr(colon + 1));
            else if (key == "den") den = parse_coeff_list("den", item.substr(colon + 1));
            else throw ConfigError("unknown rational field '" + key + "'");
        }
        if (num.empty()) throw ConfigError("rational needs num:[..]");
        return make_rational(num, den);
    }
    if (id == "composed") {
        std::string outer_id, chart_id;
        for (const std::string& item : split_top(body)) {
            const size_t colon = item.find(':');
            if (colon == std::string::npos)
                throw ConfigError("composed needs outer:<id> and chart:<id>");
            const std::string key = trim(item.substr(0, colon));
            const std::string val = trim(item.substr(colon + 1));
            if (key == "outer") outer_id = val;
            else if (key == "chart") chart_id = val;
            else throw ConfigError("unknown composed field '" + key + "'");
        }
        if (chart_id != "halfplane")
            throw ConfigError("composed supports chart:halfplane");
        if (!surface.has_chart())
            throw ConfigError("composed function needs a chart surface");
        const MeromorphicMap outer = build_function(outer_id, surface);
        return make_composed(outer, surface.chart(),
                             std::isfinite(R) ? R : 1e6);
    }
    throw ConfigError("unknown function '" + spec + "'");
}

SpherePoint parse_target(const std::string& spec) {
    const std::string s = trim(spec);
    if (s == "inf" || s == "oo" || s == "infinity") return SpherePoint::infinity();
    return SpherePoint::from_affine(parse_complex(s));
}

} // namespace nevlab
