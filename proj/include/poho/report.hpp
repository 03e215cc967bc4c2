#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace poho {

// Floor added to every relative-gap denominator so that 0 = 0 comparisons
// come out as gap 0 instead of 0/0.
inline constexpr double rel_gap_floor = 1e-30;

inline std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

using Params = std::vector<std::pair<std::string, std::string>>;

inline Params with(Params base, const std::string& key, const std::string& value) {
    base.emplace_back(key, value);
    return base;
}
inline Params with(Params base, const std::string& key, double value) {
    base.emplace_back(key, format_g17(value));
    return base;
}

// One verified identity instance: both sides, gaps, verdict. For pointwise
// (field) comparisons lhs and rhs hold the two sup-norms and abs_gap the
// sup-norm of the difference; for scalar comparisons abs_gap = |lhs - rhs|.
struct IdentityReport {
    std::string identity_name;
    std::vector<std::pair<std::string, std::string>> params;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_gap = 0.0;
    double rel_gap = 0.0;
    bool pass = false;

    void add_param(const std::string& key, const std::string& value) {
        params.emplace_back(key, value);
    }
    void add_param(const std::string& key, double value) {
        params.emplace_back(key, format_g17(value));
    }

    std::string params_string() const {
        std::string s;
        for (const auto& [k, v] : params) {
            if (!s.empty()) s += ";";
            s += k + "=" + v;
        }
        return s;
    }
};

// Assembles a report judged on the relative gap. The tolerance actually
// compared against rel_gap is always recorded under the "tolerance" key.
inline IdentityReport make_report_rel(std::string name,
                                      std::vector<std::pair<std::string, std::string>> params,
                                      double lhs, double rhs, double abs_gap, double rel_tol) {
    IdentityReport r;
    r.identity_name = std::move(name);
    r.params = std::move(params);
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_gap = abs_gap;
    r.rel_gap = abs_gap / (std::abs(lhs) + std::abs(rhs) + rel_gap_floor);
    r.pass = r.rel_gap <= rel_tol;
    r.add_param("tolerance", rel_tol);
    return r;
}

// Assembles a report judged on the absolute gap; the equivalent relative
// threshold is recorded so that pass <=> rel_gap <= tolerance still holds.
inline IdentityReport make_report_abs(std::string name,
                                      std::vector<std::pair<std::string, std::string>> params,
                                      double lhs, double rhs, double abs_gap, double abs_tol) {
    const double denom = std::abs(lhs) + std::abs(rhs) + rel_gap_floor;
    IdentityReport r;
    r.identity_name = std::move(name);
    r.params = std::move(params);
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_gap = abs_gap;
    r.rel_gap = abs_gap / denom;
    r.pass = abs_gap <= abs_tol;
    r.add_param("tolerance", abs_tol / denom);
    r.add_param("tolerance_abs", abs_tol);
    return r;
}

inline void sort_reports(std::vector<IdentityReport>& reports) {
    std::stable_sort(reports.begin(), reports.end(),
                     [](const IdentityReport& a, const IdentityReport& b) {
                         if (a.identity_name != b.identity_name)
                             return a.identity_name < b.identity_name;
                         return a.params_string() < b.params_string();
                     });
}

inline void json_escape_into(std::string& out, const std::string& s) {
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += ch;
        }
    }
}

// Hand-rolled serializer: flat objects, fixed key order, 17 significant
// digits -- byte-identical output for identical inputs.
inline std::string to_json(const IdentityReport& r, int indent = 0) {
    const std::string pad(indent, ' ');
    std::string s = pad + "{\n";
    s += pad + "  \"identity_name\": \"";
    json_escape_into(s, r.identity_name);
    s += "\",\n";
    s += pad + "  \"params\": {";
    for (std::size_t i = 0; i < r.params.size(); ++i) {
        if (i) s += ", ";
        s += "\"";
        json_escape_into(s, r.params[i].first);
        s += "\": \"";
        json_escape_into(s, r.params[i].second);
        s += "\"";
    }
    s += "},\n";
    s += pad + "  \"lhs\": " + format_g17(r.lhs) + ",\n";
    s += pad + "  \"rhs\": " + format_g17(r.rhs) + ",\n";
    s += pad + "  \"abs_gap\": " + format_g17(r.abs_gap) + ",\n";
    s += pad + "  \"rel_gap\": " + format_g17(r.rel_gap) + ",\n";
    s += pad + "  \"pass\": " + (r.pass ? std::string("true") : std::string("false")) + "\n";
    s += pad + "}";
    return s;
}

inline std::string to_json(const std::vector<IdentityReport>& reports) {
    std::string s = "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        s += to_json(reports[i], 2);
        if (i + 1 < reports.size()) s += ",";
        s += "\n";
    }
    s += "]\n";
    return s;
}

}  // namespace poho
