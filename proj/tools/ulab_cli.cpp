#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ulab/config.hpp"
#include "ulab/types.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitConfig = 1;
constexpr int kExitAssertion = 2;

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json load_config(const std::string& source, std::string& stem) {
    const std::string prefix = "preset:";
    if (source.rfind(prefix, 0) == 0) {
        stem = source.substr(prefix.size());
        return ulab::find_preset(stem).config;
    }
    std::ifstream in(source);
    if (!in) throw ulab::ConfigError("cannot open config file '" + source + "'");
    stem = fs::path(source).stem().string();
    json config = json::parse(in, nullptr, false);
    if (config.is_discarded()) throw ulab::ConfigError("config file '" + source + "' is not valid JSON");
    return config;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ulab::ConfigError("cannot write '" + path.string() + "'");
    out << content;
}

int execute(json config, const std::string& stem, const std::string& out_dir, const std::string& format) {
    config = ulab::normalize_config(config);
    const auto report = ulab::run_config(config);
    const auto manifest = ulab::make_manifest(config, report, utc_timestamp());
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        if (format != "csv") write_file(fs::path(out_dir) / (stem + ".json"), manifest.dump(2) + "\n");
        if (format != "json") write_file(fs::path(out_dir) / (stem + ".csv"), ulab::report_csv(report));
    }
    std::cout << report.experiment << ": " << report.rows.size() << " rows, max_ratio "
              << manifest.at("summary").at("max_ratio").dump() << "\n";
    for (const auto& v : report.verdicts) {
        std::cout << "  [" << (v.passed ? "pass" : "FAIL") << "] " << v.name << ": " << v.detail << "\n";
    }
    return report.passed() ? kExitPass : kExitAssertion;
}

// "k=3,basis=0:0" -> {"k": 3, "basis": [0, 0]}; a leading '{' means a JSON object
json parse_params(const std::string& text) {
    if (text.empty()) return json::object();
    if (text.front() == '{') {
        json j = json::parse(text, nullptr, false);
        if (j.is_discarded() || !j.is_object()) throw ulab::ConfigError("--params is not a JSON object");
        return j;
    }
    json out = json::object();
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ulab::ConfigError("--params entries must look like key=value: " + item);
        const auto key = item.substr(0, eq);
        const auto value = item.substr(eq + 1);
        if (value.find(':') != std::string::npos) {
            json arr = json::array();
            std::stringstream vs(value);
            std::string part;
            while (std::getline(vs, part, ':')) arr.push_back(json::parse(part));
            out[key] = arr;
        } else {
            json v = json::parse(value, nullptr, false);
            out[key] = v.is_discarded() ? json(value) : v;
        }
    }
    return out;
}

std::vector<double> parse_pair(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(std::stod(part));
    if (out.size() != 2) throw ulab::ConfigError("--basis must look like alpha,beta");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for weighted Jacobi-polynomial inequalities"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir = ".";
    std::string format = "both";
    auto* run = app.add_subcommand("run", "run an experiment config (a JSON file or preset:<name>)");
    run->add_option("config", config_path, "config file or preset:<name>")->required();
    run->add_option("--set", overrides, "override a config field, key=value");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--format", format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));

    bool show_configs = false;
    auto* list = app.add_subcommand("presets", "list the bundled preset configs");
    list->add_flag("--show", show_configs, "print each preset config");

    std::string family;
    std::string params;
    std::string basis = "0,0";
    int degree = 8;
    std::string expand_out;
    auto* expand = app.add_subcommand("expand", "coefficients of a function in a Jacobi basis");
    expand->add_option("--family", family, "function family (psi, poly, cos, abs, power, sharpness, monomial)")
        ->required();
    expand->add_option("--params", params, "family parameters, k=v[,k=v] (arrays as a:b) or a JSON object");
    expand->add_option("--basis", basis, "alpha,beta");
    expand->add_option("--degree", degree, "highest coefficient index");
    expand->add_option("--out", expand_out, "also write report files to this directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*list) {
            for (const auto& p : ulab::presets()) {
                std::cout << p.name << "  " << p.description << "\n";
                if (show_configs) std::cout << "  " << p.config.dump() << "\n";
            }
            return kExitPass;
        }
        if (*run) {
            std::string stem;
            json config = load_config(config_path, stem);
            for (const auto& o : overrides) ulab::apply_override(config, o);
            return execute(config, stem, out_dir, format);
        }
        const auto b = parse_pair(basis);
        json fspec = parse_params(params);
        fspec["family"] = family;
        if (family == "psi" || family == "poly") {
            if (!fspec.contains("basis")) fspec["basis"] = b;
        }
        const json config = {{"kind", "expand"}, {"function", fspec}, {"basis", b}, {"degree", degree}};
        const auto report = ulab::run_config(config);
        std::cout << report.extra.at("coefficients").dump() << "\n";
        if (!expand_out.empty()) return execute(config, "expand", expand_out, "both");
        return kExitPass;
    } catch (const ulab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitAssertion;
    }
}
