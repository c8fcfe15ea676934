#include "sympcalc/serialize.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <ostream>

namespace sympcalc {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// --- JSON ---------------------------------------------------------------------

json to_json(const ScalarField& f) {
    return json{{"grid", f.grid.n}, {"kind", "scalar"}, {"data", f.values}};
}

ScalarField scalar_field_from_json(const json& j) {
    if (!j.contains("grid")) throw ConfigError("field envelope missing 'grid'");
    if (!j.contains("data")) throw ConfigError("field envelope missing 'data'");
    GridSpec g(j.at("grid").get<int>());
    ScalarField f(g);
    const auto& data = j.at("data");
    if (data.size() != f.values.size())
        throw ConfigError("field 'data' length does not match grid");
    f.values = data.get<std::vector<double>>();
    if (!field_finite(f)) throw ConfigError("field 'data' contains non-finite values");
    return f;
}

json to_json(const OneFormField& alpha) {
    return json{{"grid", alpha.grid().n},
                {"kind", "one_form"},
                {"data", {{"a1", alpha.a1.values}, {"a2", alpha.a2.values}}}};
}

OneFormField one_form_from_json(const json& j) {
    if (!j.contains("grid")) throw ConfigError("form envelope missing 'grid'");
    if (!j.contains("data")) throw ConfigError("form envelope missing 'data'");
    GridSpec g(j.at("grid").get<int>());
    const auto& data = j.at("data");
    if (!data.contains("a1") || !data.contains("a2"))
        throw ConfigError("form 'data' needs components 'a1' and 'a2'");
    ScalarField a1(g), a2(g);
    a1.values = data.at("a1").get<std::vector<double>>();
    a2.values = data.at("a2").get<std::vector<double>>();
    if (a1.values.size() != g.size() || a2.values.size() != g.size())
        throw ConfigError("form component length does not match grid");
    return {std::move(a1), std::move(a2)};
}

json to_json(const SplitForm& s) {
    return json{{"c1", s.harmonic.c1}, {"c2", s.harmonic.c2},
                {"potential", to_json(s.potential)}};
}

json to_json(const Generator& g) {
    json u = json::array();
    for (const ScalarField& f : g.u) u.push_back(to_json(f));
    json h = json::array();
    for (const HarmonicForm& hf : g.h) h.push_back(json::array({hf.c1, hf.c2}));
    return json{{"T", g.steps}, {"grid", g.grid.n}, {"U", u}, {"H", h}};
}

Generator generator_from_json(const json& j) {
    if (!j.contains("T")) throw ConfigError("generator missing 'T'");
    if (!j.contains("grid")) throw ConfigError("generator missing 'grid'");
    if (!j.contains("U")) throw ConfigError("generator missing 'U'");
    if (!j.contains("H")) throw ConfigError("generator missing 'H'");
    GridSpec g(j.at("grid").get<int>());
    int T = j.at("T").get<int>();
    Generator gen(g, T);
    const auto& u = j.at("U");
    const auto& h = j.at("H");
    if (static_cast<int>(u.size()) != T + 1 || static_cast<int>(h.size()) != T + 1)
        throw ConfigError("generator 'U'/'H' must hold T+1 slices");
    for (int k = 0; k <= T; ++k) {
        gen.u[k] = scalar_field_from_json(u[k]);
        if (gen.u[k].grid != g) throw ConfigError("generator slice grid mismatch in 'U'");
        gen.h[k] = {h[k].at(0).get<double>(), h[k].at(1).get<double>()};
    }
    gen.normalize();
    return gen;
}

json to_json(const DeltaReport& r) {
    return json{{"flux_pairing", r.flux_pairing},
                {"calibrator_term", r.calibrator_term},
                {"value", r.value},
                {"alpha_l2", r.alpha_l2},
                {"basepoint", json::array({r.basepoint.t1, r.basepoint.t2})}};
}

json to_json(const LengthReport& r) {
    return json{{"hamiltonian_part", r.hamiltonian_part},
                {"harmonic_part", r.harmonic_part},
                {"kappa", r.kappa},
                {"total", r.total}};
}

json to_json(const ResultTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows) rows.push_back(r);
    return json{{"columns", t.columns}, {"rows", rows}, {"metadata", t.metadata}};
}

static ShearFamily family_from_string(const std::string& s) {
    if (s == "reciprocal") return ShearFamily::reciprocal;
    if (s == "log_reciprocal") return ShearFamily::log_reciprocal;
    if (s == "constant") return ShearFamily::constant;
    throw ConfigError("unknown shear family '" + s + "'");
}

Generator generator_from_spec(const json& j) {
    if (!j.contains("recipe")) return generator_from_json(j);
    std::string recipe = j.at("recipe").get<std::string>();
    GridSpec g(config_int(j, "grid"));
    int T = config_int_or(j, "T", 8);
    if (recipe == "shear") {
        ShearProfileSpec spec;
        spec.family = family_from_string(config_string_or(j, "family", "reciprocal"));
        spec.cutoff_index = config_int_or(j, "i", 8);
        spec.amplitude = config_number_or(j, "amplitude", 1.0);
        spec.unit_mean = j.value("unit_mean", false);
        if (j.contains("target_length"))
            return build_shear_with_length(spec, g, T, config_number(j, "target_length"));
        return build_shear(spec, g, T);
    }
    if (recipe == "translation")
        return translation_generator(g, T, config_number_or(j, "v1", 0.0),
                                     config_number_or(j, "v2", 0.0));
    if (recipe == "random")
        return random_generator(g, T, static_cast<std::uint64_t>(config_int_or(j, "seed", 1)),
                                config_int_or(j, "max_mode", 3),
                                config_number_or(j, "x_sup", 1.0),
                                config_number_or(j, "h_l2", 0.0));
    throw ConfigError("unknown generator recipe '" + recipe + "'");
}

// --- CSV ----------------------------------------------------------------------

void write_field_csv(std::ostream& os, const ScalarField& f) {
    for (int j = 0; j < f.grid.n; ++j) {
        for (int k = 0; k < f.grid.n; ++k) {
            if (k) os << ',';
            os << format_double(f.at(j, k));
        }
        os << '\n';
    }
}

void write_table_csv(std::ostream& os, const ResultTable& t) {
    for (const auto& [key, value] : t.metadata)
        os << "# " << key << "=" << value << '\n';
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c) os << ',';
        os << t.columns[c];
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ',';
            os << format_double(row[c]);
        }
        os << '\n';
    }
}

// --- SVG ----------------------------------------------------------------------

namespace {

struct PlotBox {
    double x0 = 90, y0 = 60, x1 = 760, y1 = 520; // pixel frame
};

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

} // namespace

void write_svg_plot(std::ostream& os, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    const std::vector<double>& xs, const std::vector<SvgSeries>& series) {
    double xmin = xs.empty() ? 0.0 : xs.front();
    double xmax = xs.empty() ? 1.0 : xs.front();
    for (double x : xs) { xmin = std::min(xmin, x); xmax = std::max(xmax, x); }
    double ymin = 0.0, ymax = 1.0;
    bool first = true;
    for (const auto& s : series)
        for (double y : s.ys) {
            if (first) { ymin = ymax = y; first = false; }
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;

    PlotBox box;
    auto px = [&](double x) { return box.x0 + (x - xmin) / (xmax - xmin) * (box.x1 - box.x0); };
    auto py = [&](double y) { return box.y1 - (y - ymin) / (ymax - ymin) * (box.y1 - box.y0); };

    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
          "viewBox=\"0 0 800 600\">\n";
    os << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
    os << "<text x=\"400\" y=\"30\" text-anchor=\"middle\" font-size=\"18\">" << title
       << "</text>\n";
    os << "<line x1=\"" << box.x0 << "\" y1=\"" << box.y1 << "\" x2=\"" << box.x1
       << "\" y2=\"" << box.y1 << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << box.x0 << "\" y1=\"" << box.y0 << "\" x2=\"" << box.x0
       << "\" y2=\"" << box.y1 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << 0.5 * (box.x0 + box.x1) << "\" y=\"570\" text-anchor=\"middle\" "
          "font-size=\"14\">" << xlabel << "</text>\n";
    os << "<text x=\"25\" y=\"" << 0.5 * (box.y0 + box.y1)
       << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 25 "
       << 0.5 * (box.y0 + box.y1) << ")\">" << ylabel << "</text>\n";
    for (int t = 0; t <= 4; ++t) {
        double fx = xmin + (xmax - xmin) * t / 4.0;
        double fy = ymin + (ymax - ymin) * t / 4.0;
        os << "<text x=\"" << px(fx) << "\" y=\"" << box.y1 + 20
           << "\" text-anchor=\"middle\" font-size=\"12\">" << fmt_tick(fx) << "</text>\n";
        os << "<text x=\"" << box.x0 - 8 << "\" y=\"" << py(fy) + 4
           << "\" text-anchor=\"end\" font-size=\"12\">" << fmt_tick(fy) << "</text>\n";
    }
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kColors[s % 5];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < xs.size() && i < series[s].ys.size(); ++i) {
            if (i) os << ' ';
            os << px(xs[i]) << ',' << py(series[s].ys[i]);
        }
        os << "\"/>\n";
        os << "<text x=\"" << box.x1 - 150 << "\" y=\"" << box.y0 + 18 * (s + 1)
           << "\" font-size=\"13\" fill=\"" << color << "\">" << series[s].label
           << "</text>\n";
    }
    os << "</svg>\n";
}

// --- config helpers -------------------------------------------------------------

std::string config_hash(const json& config) {
    std::string dump = config.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

double config_number(const json& config, const std::string& key) {
    if (!config.contains(key)) throw ConfigError("config missing field '" + key + "'");
    if (!config.at(key).is_number())
        throw ConfigError("config field '" + key + "' must be a number");
    return config.at(key).get<double>();
}

double config_number_or(const json& config, const std::string& key, double fallback) {
    if (!config.contains(key)) return fallback;
    return config_number(config, key);
}

int config_int(const json& config, const std::string& key) {
    if (!config.contains(key)) throw ConfigError("config missing field '" + key + "'");
    if (!config.at(key).is_number_integer())
        throw ConfigError("config field '" + key + "' must be an integer");
    return config.at(key).get<int>();
}

int config_int_or(const json& config, const std::string& key, int fallback) {
    if (!config.contains(key)) return fallback;
    return config_int(config, key);
}

std::string config_string_or(const json& config, const std::string& key,
                             const std::string& fallback) {
    if (!config.contains(key)) return fallback;
    if (!config.at(key).is_string())
        throw ConfigError("config field '" + key + "' must be a string");
    return config.at(key).get<std::string>();
}

} // namespace sympcalc
