#include "ulab/config.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "ulab/function_spec.hpp"
#include "ulab/types.hpp"

namespace ulab {

using nlohmann::json;

namespace {

struct Field {
    std::string name;
    json fallback;          // ignored when required
    bool required = false;
};

Field req(std::string name) { return {std::move(name), nullptr, true}; }
Field opt(std::string name, json fallback) { return {std::move(name), std::move(fallback), false}; }

const json kGeometricT = json::array({0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625});

const std::map<std::string, std::vector<Field>>& schema() {
    static const std::map<std::string, std::vector<Field>> table = {
        {"landau",
         {opt("p", 2.0), opt("q", 2.0), opt("a", 0.0), opt("b", 0.0), opt("c", 0.0), opt("d", 0.0), opt("r", 1),
          opt("k", 1), opt("functions", nullptr), opt("sharpness", nullptr), opt("ratio_bound", 1e3),
          opt("fit_window", 10.0)}},
        {"landau-sharpness",
         {opt("p", 2.0), opt("q", 2.0), opt("a", 0.0), opt("b", 0.0), opt("c", 0.0), opt("d", 0.0), opt("r", 1),
          opt("k", 1), req("eps"), opt("m", 4), opt("n_grid", json::array({16, 32, 64, 128, 256, 512})),
          opt("fit_window", 10.0)}},
        {"hardy-littlewood",
         {req("p"), req("q"), opt("weight", json::array({0.0, 0.0})), opt("basis", nullptr),
          opt("sigma", "critical"), opt("functions", nullptr), opt("sharpness", nullptr), opt("drift_bound", 2.0),
          opt("probe_sigmas", json::array())}},
        {"ulyanov-k",
         {req("p"), req("q"), opt("r", 1.0), opt("weight", json::array({0.0, 0.0})), opt("basis", nullptr),
          req("function"), opt("t_grid", kGeometricT), opt("u_min", 1.0 / 4096.0), opt("points_per_dyad", 16),
          opt("integrand", "realized"), opt("ratio_bound", 20.0)}},
        {"ulyanov-moduli",
         {req("p"), req("q"), opt("r", 1), opt("weight", json::array({0.0, 0.0})), req("function"),
          opt("t_grid", kGeometricT), opt("u_min", 1.0 / 4096.0), opt("points_per_dyad", 16),
          opt("variant", "standard"), opt("ratio_bound", 20.0), opt("h_grid", 32)}},
        {"nikolskii",
         {req("p"), req("q"), opt("weight", json::array({0.0, 0.0})),
          opt("n_grid", json::array({4, 8, 16, 32, 64, 128, 256})), opt("draws", 8),
          opt("seed", kDefaultSeed), opt("drift_bound", 2.0)}},
        {"two-weight-markov",
         {opt("r", 1), req("sigma"), opt("p", 2.0), opt("weight", json::array({0.0, 0.0})),
          opt("n_grid", json::array({4, 8, 16, 32, 64, 128, 256})), opt("draws", 8),
          opt("seed", kDefaultSeed), opt("drift_bound", 2.0)}},
        {"modulus",
         {req("function"), opt("r", 1), opt("p", 2.0), opt("weight", json::array({0.0, 0.0})),
          opt("t_grid", json::array({0.2, 0.1, 0.05, 0.025})), opt("ratio_bound", 100.0)}},
        {"kfunctional",
         {req("function"), opt("r", 1.0), opt("p", 2.0), opt("weight", json::array({0.0, 0.0})),
          opt("basis", nullptr), opt("t_grid", json::array({0.25, 0.1, 0.05, 0.025})), opt("ratio_bound", 20.0)}},
        {"operator-ratio",
         {opt("r", 1), opt("p", 2.0), opt("weight", json::array({0.0, 0.0})), opt("basis", nullptr),
          opt("k_max", 64), opt("drift_bound", 2.0)}},
        {"expand", {req("function"), opt("basis", json::array({0.0, 0.0})), opt("degree", 8)}},
    };
    return table;
}

const std::vector<Field>& fields_of(const std::string& kind) {
    const auto it = schema().find(kind);
    if (it == schema().end()) {
        std::string known;
        for (const auto& k : experiment_kinds()) known += (known.empty() ? "" : ", ") + k;
        throw ConfigError("unknown experiment kind '" + kind + "' (expected one of: " + known + ")");
    }
    return it->second;
}

template <class T>
T get_as(const json& c, const std::string& field) {
    try {
        return c.at(field).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("field '" + field + "' has the wrong type: " + c.at(field).dump());
    }
}

double number(const json& c, const std::string& field) { return json_number(c.at(field), field); }

int integer(const json& c, const std::string& field) {
    const double v = number(c, field);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError("field '" + field + "' must be an integer");
    return static_cast<int>(v);
}

std::pair<double, double> pair_of(const json& c, const std::string& field) {
    const auto& v = c.at(field);
    if (!v.is_array() || v.size() != 2) throw ConfigError("field '" + field + "' must be a pair [x, y]");
    return {json_number(v[0], field), json_number(v[1], field)};
}

WeightExponents weight_of(const json& c) {
    const auto [a, b] = pair_of(c, "weight");
    return {a, b};
}

// the operator basis defaults to the weight exponents
JacobiIndex basis_of_config(const json& c) {
    if (c.at("basis").is_null()) return basis_of(weight_of(c));
    const auto [al, be] = pair_of(c, "basis");
    return {al, be};
}

std::vector<double> doubles(const json& c, const std::string& field) {
    const auto& v = c.at(field);
    if (!v.is_array() || v.empty()) throw ConfigError("field '" + field + "' must be a non-empty array");
    std::vector<double> out;
    for (const auto& e : v) out.push_back(json_number(e, field));
    return out;
}

std::vector<int> integers(const json& c, const std::string& field) {
    std::vector<int> out;
    for (double v : doubles(c, field)) {
        if (v != std::floor(v)) throw ConfigError("field '" + field + "' must hold integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

LandauParams landau_params(const json& c) {
    LandauParams lp;
    lp.p = number(c, "p");
    lp.q = number(c, "q");
    lp.a = number(c, "a");
    lp.b = number(c, "b");
    lp.c = number(c, "c");
    lp.d = number(c, "d");
    lp.r = integer(c, "r");
    lp.k = integer(c, "k");
    return lp;
}

struct SharpnessSpec {
    int m = 0;
    std::vector<int> n_grid;
};

SharpnessSpec sharpness_of(const json& c) {
    const auto& s = c.at("sharpness");
    if (!s.is_object()) throw ConfigError("field 'sharpness' must be an object {m, n_grid}");
    for (const auto& [key, value] : s.items()) {
        if (key != "m" && key != "n_grid") throw ConfigError("unknown field 'sharpness." + key + "'");
    }
    if (!s.contains("m") || !s.contains("n_grid")) throw ConfigError("field 'sharpness' needs m and n_grid");
    return {integer(s, "m"), integers(s, "n_grid")};
}

// members of a 'functions' list are indexed by position; sharpness members by n
std::vector<std::pair<double, FunctionSpec>> family_of(const json& c) {
    std::vector<std::pair<double, FunctionSpec>> out;
    if (!c.at("sharpness").is_null()) {
        const auto s = sharpness_of(c);
        for (int n : s.n_grid) out.emplace_back(n, FunctionSpec::sharpness(s.m, n));
        return out;
    }
    const auto& list = c.at("functions");
    for (std::size_t i = 0; i < list.size(); ++i) out.emplace_back(static_cast<double>(i), function_from_json(list[i]));
    return out;
}

void check_family_choice(const json& c) {
    const bool has_list = !c.at("functions").is_null();
    const bool has_sharp = !c.at("sharpness").is_null();
    if (has_list == has_sharp) throw ConfigError("exactly one of 'functions' and 'sharpness' must be given");
    if (has_list && (!c.at("functions").is_array() || c.at("functions").empty())) {
        throw ConfigError("field 'functions' must be a non-empty array of function specs");
    }
}

UGrid ugrid_of(const json& c) { return {number(c, "u_min"), integer(c, "points_per_dyad")}; }

InequalityReport dispatch(const json& c) {
    const auto kind = c.at("kind").get<std::string>();
    if (kind == "landau") {
        check_family_choice(c);
        const auto lp = landau_params(c);
        if (!c.at("sharpness").is_null()) {
            const auto s = sharpness_of(c);
            return landau_family_experiment(lp, s.m, s.n_grid, number(c, "ratio_bound"), number(c, "fit_window"));
        }
        return landau_experiment(lp, family_of(c), number(c, "ratio_bound"));
    }
    if (kind == "landau-sharpness") {
        return landau_sharpness_experiment(landau_params(c), number(c, "eps"), integer(c, "m"),
                                           integers(c, "n_grid"), number(c, "fit_window"));
    }
    if (kind == "hardy-littlewood") {
        check_family_choice(c);
        const double p = number(c, "p");
        const double q = number(c, "q");
        const auto weight = weight_of(c);
        const auto& s = c.at("sigma");
        const double sigma = s == "critical" ? critical_sigma(p, q, weight) : json_number(s, "sigma");
        HardyLittlewoodOptions options;
        options.drift_bound = number(c, "drift_bound");
        for (const auto& v : c.at("probe_sigmas")) options.probe_sigmas.push_back(json_number(v, "probe_sigmas"));
        return hardy_littlewood_experiment(p, q, weight, basis_of_config(c), sigma, family_of(c), options);
    }
    if (kind == "ulyanov-k") {
        const auto mode = get_as<std::string>(c, "integrand");
        if (mode != "realized" && mode != "closed-form") {
            throw ConfigError("field 'integrand' must be 'realized' or 'closed-form'");
        }
        return ulyanov_k_experiment(number(c, "p"), number(c, "q"), number(c, "r"), weight_of(c), basis_of_config(c),
                                    function_from_json(c.at("function")), doubles(c, "t_grid"), ugrid_of(c),
                                    mode == "realized" ? KIntegrand::realized : KIntegrand::closed_form,
                                    number(c, "ratio_bound"));
    }
    if (kind == "ulyanov-moduli") {
        const auto variant = get_as<std::string>(c, "variant");
        if (variant != "standard" && variant != "raised-order") {
            throw ConfigError("field 'variant' must be 'standard' or 'raised-order'");
        }
        return ulyanov_moduli_experiment(number(c, "p"), number(c, "q"), integer(c, "r"), weight_of(c),
                                         function_from_json(c.at("function")), doubles(c, "t_grid"), ugrid_of(c),
                                         variant == "standard" ? ModuliVariant::standard : ModuliVariant::raised_order,
                                         number(c, "ratio_bound"), integer(c, "h_grid"));
    }
    if (kind == "nikolskii") {
        return nikolskii_check(integers(c, "n_grid"), number(c, "p"), number(c, "q"), weight_of(c),
                               integer(c, "draws"), get_as<std::uint64_t>(c, "seed"), number(c, "drift_bound"));
    }
    if (kind == "two-weight-markov") {
        return two_weight_markov_check(integers(c, "n_grid"), integer(c, "r"), number(c, "sigma"), number(c, "p"),
                                       weight_of(c), integer(c, "draws"), get_as<std::uint64_t>(c, "seed"),
                                       number(c, "drift_bound"));
    }
    if (kind == "modulus") {
        return modulus_experiment(function_from_json(c.at("function")), integer(c, "r"), number(c, "p"),
                                  weight_of(c), doubles(c, "t_grid"), number(c, "ratio_bound"));
    }
    if (kind == "kfunctional") {
        return kfunctional_experiment(function_from_json(c.at("function")), number(c, "r"), number(c, "p"),
                                      weight_of(c), basis_of_config(c), doubles(c, "t_grid"),
                                      number(c, "ratio_bound"));
    }
    if (kind == "operator-ratio") {
        return operator_ratio_sweep(integer(c, "r"), number(c, "p"), weight_of(c), basis_of_config(c),
                                    integer(c, "k_max"), number(c, "drift_bound"));
    }
    if (kind == "expand") {
        const auto [al, be] = pair_of(c, "basis");
        return expand_experiment(function_from_json(c.at("function")), JacobiIndex(al, be), integer(c, "degree"));
    }
    throw ConfigError("unknown experiment kind '" + kind + "'");
}

json preset_config(json body) { return normalize_config(body); }

std::vector<Preset> build_presets() {
    const json sharp_n = json::array({8, 16, 32, 64, 128, 256, 512});
    const json dyadic_t = json::array({0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625});
    std::vector<Preset> out;
    out.push_back({"landau-family-norms", "norm slopes of the sharpness family f_n",
                   preset_config({{"kind", "landau"}, {"p", 2.0}, {"q", 4.0}, {"c", 0.5}, {"d", 0.5},
                                  {"sharpness", {{"m", 4}, {"n_grid", sharp_n}}}, {"ratio_bound", 1e6}})});
    out.push_back({"landau-smooth", "Landau inequality on smooth members",
                   preset_config({{"kind", "landau"}, {"p", 2.0}, {"q", 4.0}, {"r", 2}, {"k", 1},
                                  {"functions", json::array({{{"family", "monomial"}, {"degree", 1}},
                                                             {{"family", "cos"}, {"omega", 1.0}},
                                                             {{"family", "cos"}, {"omega", 2.0}},
                                                             {{"family", "psi"}, {"k", 6}, {"basis", {0.0, 0.0}}}})}})});
    out.push_back({"landau-sharpness-eps-0.25", "ratio growth n^eps under the perturbed weight",
                   preset_config({{"kind", "landau-sharpness"}, {"eps", 0.25}, {"m", 4},
                                  {"n_grid", sharp_n}})});
    out.push_back({"hardy-littlewood-same-basis", "I_sigma bounded at the critical sigma, operator basis = weight",
                   preset_config({{"kind", "hardy-littlewood"}, {"p", 2.0}, {"q", 4.0},
                                  {"sharpness", {{"m", 2}, {"n_grid", sharp_n}}}})});
    out.push_back({"hardy-littlewood-shifted-basis", "I_sigma bounded with a different operator basis",
                   preset_config({{"kind", "hardy-littlewood"}, {"p", 2.0}, {"q", 4.0}, {"basis", {0.5, 0.5}},
                                  {"sharpness", {{"m", 2}, {"n_grid", sharp_n}}}})});
    out.push_back({"ulyanov-k-psi", "K-functional Ulyanov inequality on psi_5 with the closed-form integrand",
                   preset_config({{"kind", "ulyanov-k"}, {"p", 2.0}, {"q", 4.0},
                                  {"function", {{"family", "psi"}, {"k", 5}, {"basis", {0.0, 0.0}}}},
                                  {"t_grid", dyadic_t}, {"integrand", "closed-form"}})});
    out.push_back({"ulyanov-k-cos", "K-functional Ulyanov inequality on cos(2 pi x)",
                   preset_config({{"kind", "ulyanov-k"}, {"p", 2.0}, {"q", 4.0},
                                  {"function", {{"family", "cos"}, {"omega", 2.0}}}, {"t_grid", dyadic_t}})});
    out.push_back({"operator-ratio", "derivative against fractional operator ratios over psi_k, k <= 64",
                   preset_config({{"kind", "operator-ratio"}, {"r", 2}, {"p", 3.0}, {"k_max", 64}})});
    out.push_back({"ulyanov-moduli-cos", "modulus Ulyanov inequality, (p,q)=(2,4), r=2, cos(2 pi x)",
                   preset_config({{"kind", "ulyanov-moduli"}, {"p", 2.0}, {"q", 4.0}, {"r", 2},
                                  {"function", {{"family", "cos"}, {"omega", 2.0}}}, {"t_grid", dyadic_t}})});
    out.push_back({"ulyanov-moduli-raised-order", "sigma >= 1: order r+1 with exponent 1, (p,q)=(1,4)",
                   preset_config({{"kind", "ulyanov-moduli"}, {"p", 1.0}, {"q", 4.0}, {"r", 1},
                                  {"function", {{"family", "cos"}, {"omega", 2.0}}},
                                  {"t_grid", json::array({0.125, 0.0625, 0.03125, 0.015625})},
                                  {"variant", "raised-order"}})});
    out.push_back({"ulyanov-moduli-one-inf", "(p,q)=(1,inf): order r+2 with exponent 2",
                   preset_config({{"kind", "ulyanov-moduli"}, {"p", 1.0}, {"q", "inf"}, {"r", 1},
                                  {"function", {{"family", "cos"}, {"omega", 2.0}}},
                                  {"t_grid", json::array({0.125, 0.0625, 0.03125, 0.015625})},
                                  {"variant", "raised-order"}})});
    out.push_back({"nikolskii", "Nikolskii inequality L2 -> Linf",
                   preset_config({{"kind", "nikolskii"}, {"p", 2.0}, {"q", "inf"}})});
    out.push_back({"two-weight-markov", "two-weight Markov inequality, sigma = 1.5",
                   preset_config({{"kind", "two-weight-markov"}, {"r", 1}, {"sigma", 1.5}})});
    out.push_back({"modulus-abs", "Ditzian-Totik modulus against the realized K_phi on |x|",
                   preset_config({{"kind", "modulus"}, {"function", {{"family", "abs"}}}, {"r", 2}})});
    out.push_back({"kfunctional-abs", "realized against direct spectral K-functional on |x|",
                   preset_config({{"kind", "kfunctional"}, {"function", {{"family", "abs"}}}, {"p", 3.0}})});
    out.push_back({"expand-psi3", "coefficients of psi_3",
                   preset_config({{"kind", "expand"}, {"function", {{"family", "psi"}, {"k", 3}, {"basis", {0.0, 0.0}}}},
                                  {"degree", 5}})});
    return out;
}

std::string csv_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

double json_number(const json& value, const std::string& field) {
    if (value.is_number()) return value.get<double>();
    if (value.is_string()) {
        const auto s = value.get<std::string>();
        if (s == "inf" || s == "infinity") return kInf;
    }
    throw ConfigError("field '" + field + "' must be a number or \"inf\" (got " + value.dump() + ")");
}

const std::vector<std::string>& experiment_kinds() {
    static const std::vector<std::string> kinds = [] {
        std::vector<std::string> out;
        for (const auto& [kind, fields] : schema()) out.push_back(kind);
        return out;
    }();
    return kinds;
}

json normalize_config(const json& raw) {
    if (!raw.is_object()) throw ConfigError("config must be a JSON object");
    if (!raw.contains("kind") || !raw.at("kind").is_string()) throw ConfigError("config needs a string field 'kind'");
    const auto kind = raw.at("kind").get<std::string>();
    const auto& fields = fields_of(kind);
    for (const auto& [key, value] : raw.items()) {
        if (key == "kind") continue;
        bool known = false;
        for (const auto& f : fields) known = known || f.name == key;
        if (!known) throw ConfigError("unknown field '" + key + "' for kind '" + kind + "'");
    }
    json out = {{"kind", kind}};
    for (const auto& f : fields) {
        if (raw.contains(f.name)) {
            out[f.name] = raw.at(f.name);
        } else if (f.required) {
            throw ConfigError("missing required field '" + f.name + "' for kind '" + kind + "'");
        } else {
            out[f.name] = f.fallback;
        }
    }
    return out;
}

void apply_override(json& config, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override must look like key=value: " + assignment);
    const auto key = assignment.substr(0, eq);
    const auto text = assignment.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;
    json* node = &config;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const auto part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty()) throw ConfigError("empty path component in override: " + assignment);
        if (!node->is_object()) throw ConfigError("override path does not address an object: " + key);
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        node = &(*node)[part];
        if (node->is_null()) *node = json::object();
        start = dot + 1;
    }
}

InequalityReport run_config(const json& config) { return dispatch(normalize_config(config)); }

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = build_presets();
    return all;
}

const Preset& find_preset(const std::string& name) {
    for (const auto& p : presets()) {
        if (p.name == name) return p;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

json make_manifest(const json& config, const InequalityReport& report, const std::string& timestamp) {
    json out = report.to_json();
    out["config"] = config;
    out["version"] = kArtifactVersion;
    out["timestamp"] = timestamp;
    return out;
}

std::string report_csv(const InequalityReport& report) {
    std::ostringstream os;
    os << "parameter,lhs,rhs,ratio\r\n";
    for (const auto& row : report.rows) {
        os << csv_number(row.parameter) << ',' << csv_number(row.lhs) << ',' << csv_number(row.rhs) << ','
           << csv_number(row.ratio) << "\r\n";
    }
    return os.str();
}

}  // namespace ulab
