#ifndef SYMPCALC_SERIALIZE_HPP
#define SYMPCALC_SERIALIZE_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "sympcalc/experiments.hpp"

namespace sympcalc {

using json = nlohmann::json;

/** Shortest-round-trip formatting used for every number we write, so equal
 * configs reproduce byte-identical files. */
std::string format_double(double v);

// JSON envelopes ------------------------------------------------------------

json to_json(const ScalarField& f);
ScalarField scalar_field_from_json(const json& j);

json to_json(const OneFormField& alpha);
OneFormField one_form_from_json(const json& j);

json to_json(const SplitForm& s);

json to_json(const Generator& g);
Generator generator_from_json(const json& j);

json to_json(const DeltaReport& r);
json to_json(const LengthReport& r);
json to_json(const ResultTable& t);

/** Builds a generator either from a full dump or from a recipe object:
 *   {"recipe":"shear", "family":"reciprocal", "i":8, "grid":256, "T":8, ...}
 *   {"recipe":"translation", "v1":..., "v2":..., "grid":..., "T":...}
 *   {"recipe":"random", "seed":..., "max_mode":..., "x_sup":..., "h_l2":..., ...}
 * Unknown fields raise ConfigError naming the field. */
Generator generator_from_spec(const json& j);

// Row-major CSV --------------------------------------------------------------

void write_field_csv(std::ostream& os, const ScalarField& f);
void write_table_csv(std::ostream& os, const ResultTable& t);

// SVG ------------------------------------------------------------------------

struct SvgSeries {
    std::string label;
    std::vector<double> ys;
};

/** Static 800x600 polyline plot with axes and labels; no dependencies. */
void write_svg_plot(std::ostream& os, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    const std::vector<double>& xs, const std::vector<SvgSeries>& series);

// Config helpers ---------------------------------------------------------------

/** FNV-1a hash of the canonical (sorted-key) dump, as fixed-width hex. */
std::string config_hash(const json& config);

/** Fetches config[key] with a type check; throws ConfigError naming the key
 * when missing or mistyped. */
double config_number(const json& config, const std::string& key);
double config_number_or(const json& config, const std::string& key, double fallback);
int config_int(const json& config, const std::string& key);
int config_int_or(const json& config, const std::string& key, int fallback);
std::string config_string_or(const json& config, const std::string& key,
                             const std::string& fallback);

} // namespace sympcalc

#endif
