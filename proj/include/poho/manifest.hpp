#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "poho/zoo.hpp"

namespace poho {

// Configuration mistakes (unknown ids, malformed values) are their own
// category: the command line maps them to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts "0.5", "-0.2", "0.5+0.2i", "-0.1i", "i".
inline cplx parse_complex(std::string s) {
    auto fail = [&]() -> cplx { throw ConfigError("malformed complex number: '" + s + "'"); };
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
    if (s.empty()) return fail();

    auto to_double = [&](const std::string& part) {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            fail();
        }
        if (used != part.size()) fail();
        return v;
    };

    if (s.back() != 'i') return cplx(to_double(s), 0.0);
    s.pop_back();
    // split "re+im" / "re-im"; signs inside exponents do not occur here
    for (std::size_t pos = s.size(); pos-- > 1;) {
        if ((s[pos] == '+' || s[pos] == '-') && s[pos - 1] != 'e' && s[pos - 1] != 'E') {
            return cplx(to_double(s.substr(0, pos)), to_double(s.substr(pos)));
        }
    }
    return cplx(0.0, to_double(s));
}

inline bool is_circle_map_id(const std::string& id) {
    return id.rfind("blaschke:", 0) == 0 || id.rfind("negctrl:", 0) == 0;
}

inline bool is_planar_map_id(const std::string& id) {
    return id.rfind("holo:", 0) == 0 || id.rfind("sphere:", 0) == 0 ||
           id.rfind("harm:", 0) == 0 || id.rfind("broken:", 0) == 0;
}

// "blaschke:a1,a2,...[@alpha]" | "negctrl:1" | "negctrl:sphere"
inline GridMap1D make_circle_map(const std::string& id, std::size_t n) {
    if (id.rfind("blaschke:", 0) == 0) {
        std::string spec = id.substr(9);
        double alpha = 0.0;
        if (const auto at = spec.find('@'); at != std::string::npos) {
            try {
                alpha = std::stod(spec.substr(at + 1));
            } catch (const std::exception&) {
                throw ConfigError("malformed phase in map id: '" + id + "'");
            }
            spec = spec.substr(0, at);
        }
        BlaschkeProduct b;
        b.phase = alpha;
        std::size_t start = 0;
        while (start <= spec.size()) {
            const std::size_t comma = spec.find(',', start);
            const std::string tok =
                spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            b.factors.push_back(parse_complex(tok));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (b.factors.empty()) throw ConfigError("map id has no factors: '" + id + "'");
        return blaschke_trace(b, n);
    }
    if (id == "negctrl:1") return negative_control(n);
    if (id == "negctrl:sphere") return negative_control_sphere(n);
    throw ConfigError("unknown circle map id: '" + id + "'");
}

inline PlanarMap make_planar_map(const std::string& id) {
    if (id == "holo:const") return holomorphic_planar(CPoly{{cplx(1.0, 0.5)}});
    if (id == "holo:z") return holomorphic_planar(CPoly{{cplx(0, 0), cplx(1, 0)}});
    if (id == "holo:z2")
        return holomorphic_planar(CPoly{{cplx(0, 0), cplx(0, 0), cplx(1, 0)}});
    if (id == "holo:z3")
        return holomorphic_planar(CPoly{{cplx(0, 0), cplx(0, 0), cplx(0, 0), cplx(1, 0)}});
    if (id == "sphere:z")
        return meromorphic_to_s2(CRational::poly(CPoly{{cplx(0, 0), cplx(1, 0)}}));
    if (id == "sphere:z2")
        return meromorphic_to_s2(CRational::poly(CPoly{{cplx(0, 0), cplx(0, 0), cplx(1, 0)}}));
    if (id == "harm:rez2")
        return harmonic_scalar(CPoly{{cplx(0, 0), cplx(0, 0), cplx(1, 0)}});
    if (id == "broken:x2y") return broken_planar_control();
    throw ConfigError("unknown planar map id: '" + id + "'");
}

// The certified circle family plus the mandatory controls.
inline std::vector<std::string> default_circle_ids() {
    return {"blaschke:0", "blaschke:0.5", "blaschke:0.3,-0.2", "blaschke:0.5+0.2i",
            "negctrl:1",  "negctrl:sphere"};
}

inline std::vector<std::string> default_planar_ids() {
    return {"holo:z2", "sphere:z", "harm:rez2", "broken:x2y"};
}

}  // namespace poho
