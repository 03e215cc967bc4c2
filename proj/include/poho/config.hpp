#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "poho/conformal.hpp"
#include "poho/manifest.hpp"

namespace poho {

// Line-oriented "key = value" text with [section] headers, '#' comments.
struct ConfigFile {
    // section -> ordered key/value pairs
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections;

    bool has(const std::string& section) const { return sections.count(section) != 0; }
};

inline std::string trim_copy(std::string s) {
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

inline ConfigFile parse_config_text(const std::string& text) {
    ConfigFile cfg;
    std::string section = "verify";
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim_copy(line.substr(0, line.find('#')));
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section");
            section = trim_copy(t.substr(1, t.size() - 2));
            cfg.sections[section];
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        cfg.sections[section].emplace_back(trim_copy(t.substr(0, eq)),
                                           trim_copy(t.substr(eq + 1)));
    }
    return cfg;
}

inline ConfigFile load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

inline std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        const auto comma = value.find(',', start);
        const std::string tok = trim_copy(
            value.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (!tok.empty()) out.push_back(tok);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

inline double parse_double(const std::string& v, const std::string& key) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for '" + key + "': " + v);
    }
    if (used != v.size()) throw ConfigError("bad numeric value for '" + key + "': " + v);
    return x;
}

inline std::size_t parse_size(const std::string& v, const std::string& key) {
    const double x = parse_double(v, key);
    if (x < 0 || x != std::floor(x)) throw ConfigError("bad integer value for '" + key + "': " + v);
    return std::size_t(x);
}

// "a@alpha" pairs, e.g. "0.5@0, 0.3@0.3, 0.2+0.1i@1.0"
inline MobiusDisk parse_mobius(const std::string& tok) {
    const auto at = tok.find('@');
    const cplx a = parse_complex(at == std::string::npos ? tok : tok.substr(0, at));
    const double alpha = at == std::string::npos ? 0.0 : parse_double(tok.substr(at + 1), "mobius");
    try {
        return MobiusDisk(alpha, a);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("bad mobius parameter '") + tok + "': " + e.what());
    }
}

// Settings of a verification run; the command line can override grid, tol,
// seed, jobs and output path.
struct SuiteConfig {
    std::vector<std::string> maps = [] {
        auto ids = default_circle_ids();
        const auto planar = default_planar_ids();
        ids.insert(ids.end(), planar.begin(), planar.end());
        return ids;
    }();
    std::size_t grid = 1024;
    double global_tol = -1.0;  // < 0: use per-identity defaults
    std::vector<std::pair<std::string, double>> tol_overrides;
    std::vector<double> t_grid{0.1, 0.5, 1.0, 2.0};
    std::size_t n_max = 10;
    std::vector<MobiusDisk> mobius{MobiusDisk(0.0, cplx(0.3, 0.0)),
                                   MobiusDisk(0.3, cplx(0.5, 0.0))};
    std::uint64_t seed = 42;
    unsigned jobs = 1;
    std::string out;

    // Per-identity defaults; a global tolerance, when set, wins over these,
    // and explicit tol.<name> keys win over everything.
    double tol_for(const std::string& identity) const {
        for (const auto& [name, tol] : tol_overrides)
            if (name == identity) return tol;
        if (global_tol >= 0.0) return global_tol;
        if (identity == "stationarity") return 1e-10;
        if (identity == "el_sphere") return 1e-9;
        if (identity == "poho_s1") return 1e-8;
        if (identity == "poho_s1_first") return 1e-10;
        if (identity == "fourier_relation") return 1e-10;
        if (identity == "fourier_relation_alpha") return 1e-10;
        if (identity == "low_order") return 1e-12;
        if (identity == "mobius_invariance") return 1e-8;
        if (identity == "mobius_covariance") return 1e-8;
        if (identity == "pullback_halflap") return 1e-8;
        if (identity == "poho_r") return 1e-6;
        if (identity == "hypothesis_residual") return 1e-6;
        if (identity == "ball_pohozaev") return 1e-10;
        if (identity == "gaussian_pohozaev") return 1e-8;
        return 1e-8;
    }
};

struct FlowConfig {
    std::string map = "blaschke:0";
    std::size_t grid = 256;
    double amplitude = 0.1;
    std::uint64_t seed = 42;
    double tau = -1.0;  // < 0: default 0.256/N
    std::size_t max_steps = 10000;
    double tol = 1e-6;
    std::size_t certify_n_max = 6;
    std::string trace_path;
    std::string out;
};

inline SuiteConfig suite_config_from(const ConfigFile& cfg) {
    SuiteConfig sc;
    if (!cfg.has("verify")) return sc;
    for (const auto& [key, value] : cfg.sections.at("verify")) {
        if (key == "maps") {
            sc.maps = split_list(value);
            // blaschke ids contain commas; re-join pieces that do not start a
            // new id so "blaschke:0.3,-0.2" survives the list split
            std::vector<std::string> merged;
            for (const auto& tok : sc.maps) {
                if (!merged.empty() && !is_circle_map_id(tok) && !is_planar_map_id(tok))
                    merged.back() += "," + tok;
                else
                    merged.push_back(tok);
            }
            sc.maps = merged;
        } else if (key == "grid") {
            sc.grid = parse_size(value, key);
        } else if (key == "tol") {
            sc.global_tol = parse_double(value, key);
        } else if (key.rfind("tol.", 0) == 0) {
            sc.tol_overrides.emplace_back(key.substr(4), parse_double(value, key));
        } else if (key == "t_grid") {
            sc.t_grid.clear();
            for (const auto& tok : split_list(value)) sc.t_grid.push_back(parse_double(tok, key));
        } else if (key == "n_max") {
            sc.n_max = parse_size(value, key);
        } else if (key == "mobius") {
            sc.mobius.clear();
            for (const auto& tok : split_list(value)) sc.mobius.push_back(parse_mobius(tok));
        } else if (key == "seed") {
            sc.seed = std::uint64_t(parse_size(value, key));
        } else if (key == "jobs") {
            sc.jobs = unsigned(parse_size(value, key));
        } else if (key == "out") {
            sc.out = value;
        } else {
            throw ConfigError("unknown key in [verify]: '" + key + "'");
        }
    }
    return sc;
}

inline FlowConfig flow_config_from(const ConfigFile& cfg) {
    FlowConfig fc;
    if (!cfg.has("flow")) return fc;
    for (const auto& [key, value] : cfg.sections.at("flow")) {
        if (key == "map") fc.map = value;
        else if (key == "grid") fc.grid = parse_size(value, key);
        else if (key == "amplitude") fc.amplitude = parse_double(value, key);
        else if (key == "seed") fc.seed = std::uint64_t(parse_size(value, key));
        else if (key == "tau") fc.tau = parse_double(value, key);
        else if (key == "max_steps") fc.max_steps = parse_size(value, key);
        else if (key == "tol") fc.tol = parse_double(value, key);
        else if (key == "n_max") fc.certify_n_max = parse_size(value, key);
        else if (key == "trace") fc.trace_path = value;
        else if (key == "out") fc.out = value;
        else throw ConfigError("unknown key in [flow]: '" + key + "'");
    }
    return fc;
}

}  // namespace poho
