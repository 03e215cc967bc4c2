#pragma once

#include <atomic>
#include <fstream>
#include <functional>
#include <thread>

#include "poho/config.hpp"
#include "poho/flow.hpp"
#include "poho/identities.hpp"
#include "poho/planar.hpp"

namespace poho {

inline std::string report_param(const IdentityReport& r, const std::string& key) {
    for (const auto& [k, v] : r.params)
        if (k == key) return v;
    return {};
}

struct SuiteCase {
    std::string label;
    std::function<std::vector<IdentityReport>()> run;
    // Controls are expected to fail specific identities; absent means
    // everything must pass.
    std::function<bool(const IdentityReport&)> expect_pass;
};

struct SuiteResult {
    std::vector<IdentityReport> reports;
    std::size_t unexpected = 0;
};

namespace detail {

inline Params map_params(const std::string& id, std::size_t grid) {
    Params p;
    p.emplace_back("map", id);
    p.emplace_back("grid", std::to_string(grid));
    return p;
}

// The raw control (cos 2theta, sin theta) has exact Fourier data, so the
// verdicts are known per identity: the relation family fails at n = 2 and
// n = 4 and is vacuously zero elsewhere.
inline bool negctrl_expectation(const IdentityReport& r) {
    const std::string& id = r.identity_name;
    if (id == "stationarity" || id == "el_sphere" || id == "poho_s1" ||
        id == "poho_s1_first" || id == "low_order_n2_norm" || id == "low_order_n4_norm")
        return false;
    if (id == "fourier_relation") {
        const std::string n = report_param(r, "n");
        return !(n == "2" || n == "4");
    }
    return true;
}

inline void append_circle_cases(std::vector<SuiteCase>& cases, const SuiteConfig& sc,
                                const std::string& id) {
    const bool control = id.rfind("negctrl:", 0) == 0;
    const std::size_t n = sc.grid;
    const Params base = map_params(id, n);

    cases.push_back({id + "/stationarity",
                     [=] {
                         return std::vector<IdentityReport>{residual_report(
                             "stationarity", stationarity_residual(make_circle_map(id, n)),
                             sc.tol_for("stationarity"), base)};
                     },
                     control ? negctrl_expectation : nullptr});

    if (id != "negctrl:1") {  // the raw control is the one non-sphere-valued map
        cases.push_back({id + "/el_sphere",
                         [=] {
                             return std::vector<IdentityReport>{residual_report(
                                 "el_sphere", el_residual_sphere(make_circle_map(id, n)),
                                 sc.tol_for("el_sphere"), base)};
                         },
                         control ? negctrl_expectation : nullptr});
    }
    if (id == "negctrl:sphere") return;  // relation family runs on the raw control

    cases.push_back({id + "/poho_s1",
                     [=] {
                         return poho_s1(make_circle_map(id, n), sc.t_grid,
                                        sc.tol_for("poho_s1"), base);
                     },
                     control ? negctrl_expectation : nullptr});
    cases.push_back({id + "/poho_s1_first",
                     [=] {
                         return std::vector<IdentityReport>{poho_s1_first(
                             make_circle_map(id, n), sc.tol_for("poho_s1_first"), base)};
                     },
                     control ? negctrl_expectation : nullptr});
    cases.push_back({id + "/fourier_relations",
                     [=] {
                         std::vector<IdentityReport> out;
                         for (auto& fr : fourier_relations(make_circle_map(id, n), sc.n_max,
                                                           sc.tol_for("fourier_relation"), base))
                             out.push_back(std::move(fr.report));
                         return out;
                     },
                     control ? negctrl_expectation : nullptr});
    cases.push_back({id + "/low_order",
                     [=] {
                         return low_order_relations(make_circle_map(id, n),
                                                    sc.tol_for("low_order"), base);
                     },
                     control ? negctrl_expectation : nullptr});
    if (!control) {
        cases.push_back({id + "/fourier_relation_alpha",
                         [=] {
                             const GridMap1D u = make_circle_map(id, n);
                             std::vector<IdentityReport> out;
                             const std::size_t nn = 4;
                             for (double alpha :
                                  {0.0, M_PI / (2.0 * double(nn)), M_PI / double(nn), 1.0})
                                 out.push_back(fourier_relation_alpha(
                                     u, nn, alpha, sc.tol_for("fourier_relation_alpha"), base));
                             return out;
                         },
                         nullptr});
    }
}

inline void append_planar_cases(std::vector<SuiteCase>& cases, const SuiteConfig& sc,
                                const std::string& id) {
    Params base;
    base.emplace_back("map", id);
    const QuadratureConfig q;

    if (id == "broken:x2y") {
        cases.push_back({id + "/hypothesis",
                         [=] {
                             const PlanarMap u = make_planar_map(id);
                             const double sup = hypothesis_residual(u, 0.0, 1.0, 0.0, 1.0);
                             return std::vector<IdentityReport>{make_report_abs(
                                 "hypothesis_residual", with(base, "region", "unit square"), sup,
                                 0.0, sup, sc.tol_for("hypothesis_residual"))};
                         },
                         [](const IdentityReport&) { return false; }});
        return;
    }

    cases.push_back({id + "/hypothesis",
                     [=] {
                         const PlanarMap u = make_planar_map(id);
                         const double sup = hypothesis_residual(u, -2.0, 2.0, -2.0, 2.0);
                         return std::vector<IdentityReport>{make_report_abs(
                             "hypothesis_residual", with(base, "region", "[-2,2]^2"), sup, 0.0,
                             sup, sc.tol_for("hypothesis_residual"))};
                     },
                     nullptr});

    if (id == "harm:rez2") {
        // The anti-holomorphic control has to act on a non-conformal map:
        // for conformal maps both integrands coincide pointwise and no field
        // can separate them.
        cases.push_back({id + "/ball_control",
                         [=] {
                             const PlanarMap u = make_planar_map(id);
                             std::vector<IdentityReport> out;
                             out.push_back(ball_pohozaev(
                                 u, 0.5, 0.0, 1.0,
                                 PlanarField::holomorphic(CPoly{{cplx(0, 0), cplx(1, 0)}}),
                                 sc.tol_for("ball_pohozaev"), q, with(base, "X", "z")));
                             out.push_back(ball_pohozaev(u, 0.5, 0.0, 1.0,
                                                         PlanarField::conj_z(),
                                                         sc.tol_for("ball_pohozaev"), q,
                                                         with(base, "X", "conj(z)")));
                             return out;
                         },
                         [](const IdentityReport& r) {
                             return report_param(r, "X") != "conj(z)";
                         }});
        return;
    }

    cases.push_back({id + "/ball_radial",
                     [=] {
                         const PlanarMap u = make_planar_map(id);
                         std::vector<IdentityReport> out;
                         for (double r : {0.5, 1.0, 2.0})
                             out.push_back(ball_pohozaev_radial(
                                 u, 0.0, 0.0, r, sc.tol_for("ball_pohozaev"), q, base));
                         return out;
                     },
                     nullptr});
    cases.push_back({id + "/ball_fields",
                     [=] {
                         const PlanarMap u = make_planar_map(id);
                         std::vector<IdentityReport> out;
                         const std::pair<std::string, CPoly> fields[] = {
                             {"1", CPoly{{cplx(1, 0)}}},
                             {"z", CPoly{{cplx(0, 0), cplx(1, 0)}}},
                             {"z^2", CPoly{{cplx(0, 0), cplx(0, 0), cplx(1, 0)}}}};
                         for (const auto& [name, poly] : fields)
                             out.push_back(ball_pohozaev(u, 0.0, 0.0, 1.0,
                                                         PlanarField::holomorphic(poly),
                                                         sc.tol_for("ball_pohozaev"), q,
                                                         with(base, "X", name)));
                         return out;
                     },
                     nullptr});
    cases.push_back({id + "/gaussian_radial",
                     [=] {
                         const PlanarMap u = make_planar_map(id);
                         std::vector<IdentityReport> out;
                         for (double t : {0.5, 1.0})
                             for (auto [x0, y0] : {std::pair{0.0, 0.0}, {0.2, -0.1}})
                                 out.push_back(gaussian_pohozaev_radial(
                                     u, x0, y0, t, sc.tol_for("gaussian_pohozaev"), q, base));
                         return out;
                     },
                     nullptr});
    cases.push_back({id + "/gaussian_field",
                     [=] {
                         const PlanarMap u = make_planar_map(id);
                         return std::vector<IdentityReport>{gaussian_pohozaev(
                             u, 0.0, 0.0, 1.0,
                             PlanarField::holomorphic(CPoly{{cplx(0, 0), cplx(1, 0)}}),
                             sc.tol_for("gaussian_pohozaev"), q, with(base, "X", "z"))};
                     },
                     nullptr});
}

inline void append_global_cases(std::vector<SuiteCase>& cases, const SuiteConfig& sc) {
    const std::size_t fine = std::max<std::size_t>(sc.grid, 2048);

    cases.push_back({"global/pullback_halflap",
                     [=] {
                         std::vector<IdentityReport> out;
                         for (double t : {1.0, 2.0})
                             out.push_back(pullback_halflap_check(
                                 t, fine, sc.tol_for("pullback_halflap"),
                                 with({}, "grid", std::to_string(fine))));
                         return out;
                     },
                     nullptr});
    cases.push_back({"global/poho_r",
                     [=] {
                         Params p = detail::map_params("blaschke:0", fine);
                         p.emplace_back("u0", "(0,-1)");
                         return poho_r(make_circle_map("blaschke:0", fine), RVec(0.0, -1.0),
                                       sc.t_grid, sc.tol_for("poho_r"), p);
                     },
                     nullptr});
    for (std::size_t i = 0; i < sc.mobius.size(); ++i) {
        const MobiusDisk m = sc.mobius[i];
        cases.push_back({"global/mobius_covariance/" + std::to_string(i),
                         [=] {
                             return std::vector<IdentityReport>{mobius_covariance_residual(
                                 make_circle_map("blaschke:0", fine), m,
                                 sc.tol_for("mobius_covariance"),
                                 detail::map_params("blaschke:0", fine))};
                         },
                         nullptr});
        cases.push_back({"global/mobius_invariance/" + std::to_string(i),
                         [=] {
                             return mobius_invariance_suite(
                                 make_circle_map("blaschke:0.5", fine), m,
                                 std::min<std::size_t>(sc.n_max, 8),
                                 sc.tol_for("mobius_invariance"),
                                 detail::map_params("blaschke:0.5", fine));
                         },
                         nullptr});
    }
}

}  // namespace detail

inline std::vector<SuiteCase> build_verify_suite(const SuiteConfig& sc) {
    std::vector<SuiteCase> cases;
    for (const std::string& id : sc.maps) {
        if (is_circle_map_id(id)) {
            detail::append_circle_cases(cases, sc, id);
        } else if (is_planar_map_id(id)) {
            detail::append_planar_cases(cases, sc, id);
        } else {
            throw ConfigError("unknown map id: '" + id + "'");
        }
    }
    detail::append_global_cases(cases, sc);
    return cases;
}

// Runs every case (in parallel when jobs > 1), annotates each report with its
// expectation, and counts surprises. Case evaluation order never affects the
// output: results land in per-case slots and are sorted at the end.
inline SuiteResult run_verify_suite(const SuiteConfig& sc) {
    // Validate ids up front: a bad id must be a configuration error before
    // any case runs.
    for (const std::string& id : sc.maps) {
        if (is_circle_map_id(id))
            make_circle_map(id, 8);
        else if (is_planar_map_id(id))
            make_planar_map(id);
        else
            throw ConfigError("unknown map id: '" + id + "'");
    }
    std::vector<SuiteCase> cases = build_verify_suite(sc);
    std::vector<std::vector<IdentityReport>> slots(cases.size());

    if (sc.jobs <= 1) {
        for (std::size_t i = 0; i < cases.size(); ++i) slots[i] = cases[i].run();
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= cases.size()) return;
                slots[i] = cases[i].run();
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < std::min<unsigned>(sc.jobs, unsigned(cases.size())); ++t)
            pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    SuiteResult result;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        for (IdentityReport& r : slots[i]) {
            const bool expect = cases[i].expect_pass ? cases[i].expect_pass(r) : true;
            r.add_param("expected", expect ? "pass" : "fail");
            if (r.pass != expect) ++result.unexpected;
            result.reports.push_back(std::move(r));
        }
    }
    sort_reports(result.reports);
    return result;
}

// ---------------------------------------------------------------------------
// CSV interfaces
// ---------------------------------------------------------------------------

inline std::string spectrum_csv(const Spectrum& s) {
    std::string out = "n";
    for (std::size_t c = 0; c < s.dim(); ++c) {
        out += ",re" + std::to_string(c) + ",im" + std::to_string(c);
    }
    out += "\n";
    for (long k = -s.max_mode(); k <= s.max_mode(); ++k) {
        out += std::to_string(k);
        for (std::size_t c = 0; c < s.dim(); ++c) {
            out += "," + format_g17(s.at(k, c).real());
            out += "," + format_g17(s.at(k, c).imag());
        }
        out += "\n";
    }
    return out;
}

// Coefficient block followed by the relation-sum block.
inline std::string fourier_csv(const FourierData& fd, const std::vector<FourierRelation>& rels) {
    const std::size_t m = fd.a[0].m;
    std::string out = "k";
    for (std::size_t c = 0; c < m; ++c) out += ",a" + std::to_string(c);
    for (std::size_t c = 0; c < m; ++c) out += ",b" + std::to_string(c);
    out += "\n";
    for (std::size_t k = 0; k < fd.a.size(); ++k) {
        out += std::to_string(k);
        for (std::size_t c = 0; c < m; ++c) out += "," + format_g17(fd.a[k][c]);
        for (std::size_t c = 0; c < m; ++c) out += "," + format_g17(fd.b[k][c]);
        out += "\n";
    }
    out += "\nn,S_n,T_n,scale_n\n";
    for (const auto& fr : rels) {
        out += std::to_string(fr.n) + "," + format_g17(fr.s_sum) + "," + format_g17(fr.t_sum) +
               "," + format_g17(fr.scale) + "\n";
    }
    return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

}  // namespace poho
