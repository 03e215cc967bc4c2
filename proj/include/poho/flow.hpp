#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "poho/identities.hpp"

namespace poho {

struct FlowStep {
    std::size_t step = 0;
    double energy = 0.0;
    double el_residual = 0.0;
};

struct FlowState {
    GridMap1D u;
    std::size_t step = 0;
    double tau = 0.0;
    double energy = 0.0;
    double el_residual = 0.0;
    bool converged = false;
    std::string termination;
    std::vector<FlowStep> trace;
};

// Default step size: the explicit-step stability bound for the largest
// multiplier N/2 is tau <= 2/N; run an order of magnitude inside it.
inline double default_flow_tau(std::size_t n) { return 0.256 / double(n); }

namespace detail {

struct TangentField {
    std::vector<RVec> dir;   // tangential part of (-Delta)^{1/2} u
    double sup = 0.0;
    double energy = 0.0;
    double max_dtheta = 0.0;  // sup |du/dtheta|, the certification condition factor
};

inline TangentField flow_gradient(const GridMap1D& u) {
    const Spectrum s = analyze(u);
    const GridMap1D w = synthesize(fractional_laplacian(s, 0.5), u.grid_size());
    const GridMap1D du = synthesize(theta_derivative(s), u.grid_size());
    TangentField f;
    f.energy = half_energy(s);
    f.dir.resize(u.grid_size());
    for (std::size_t j = 0; j < u.grid_size(); ++j) {
        const RVec p = u.sample(j);
        const RVec wj = w.sample(j);
        f.dir[j] = wj - dot(wj, p) * p;
        f.sup = std::max(f.sup, norm(f.dir[j]));
        f.max_dtheta = std::max(f.max_dtheta, norm(du.sample(j)));
    }
    return f;
}

}  // namespace detail

// Projected gradient descent on the half-energy over sphere-valued maps:
//   u <- normalize(u - tau * P_{T_u} (-Delta)^{1/2} u).
// Energy must not increase beyond 1e-12 per accepted step; an increase halves
// the step, six consecutive halvings abort with a diagnostic.
inline FlowState half_harmonic_flow(const GridMap1D& u0, double tau, std::size_t max_steps,
                                    double tol) {
    if (!u0.sphere_valued())
        throw std::invalid_argument("half_harmonic_flow: input must be sphere-valued");
    if (!(tau > 0.0) || tau > 2.0 / double(u0.grid_size()))
        throw std::invalid_argument("half_harmonic_flow: need 0 < tau <= 2/N");

    FlowState st{u0, 0, tau, 0.0, 0.0, false, "", {}};
    detail::TangentField f = detail::flow_gradient(st.u);
    st.energy = f.energy;
    st.el_residual = f.sup;
    st.trace.push_back({0, st.energy, st.el_residual});

    int halvings = 0;
    while (st.step < max_steps) {
        if (st.el_residual <= tol) {
            st.converged = true;
            st.termination = "tolerance";
            return st;
        }
        GridMap1D next(st.u.grid_size(), st.u.dim(), /*sphere_valued=*/true);
        for (std::size_t j = 0; j < st.u.grid_size(); ++j) {
            RVec p = st.u.sample(j) - st.tau * f.dir[j];
            p *= 1.0 / norm(p);
            next.set_sample(j, p);
        }
        const detail::TangentField fn = detail::flow_gradient(next);
        if (fn.energy > st.energy + 1e-12) {
            st.tau *= 0.5;
            if (++halvings >= 6) {
                st.termination = "step_collapse";
                return st;
            }
            continue;
        }
        halvings = 0;
        st.u = next;
        f = fn;
        st.energy = fn.energy;
        st.el_residual = fn.sup;
        ++st.step;
        st.trace.push_back({st.step, st.energy, st.el_residual});
    }
    st.converged = st.el_residual <= tol;
    st.termination = st.converged ? "tolerance" : "max_steps";
    return st;
}

// Runs the independent verifiers on a flow output. The thresholds are tied to
// the flow's own stopping quantity: residual <= 10 * el_residual * kappa with
// the condition factor kappa = max(1, sup |du/dtheta|).
inline std::vector<IdentityReport> certify(const FlowState& st, std::size_t n_max = 6,
                                           Params base = {}) {
    const detail::TangentField f = detail::flow_gradient(st.u);
    const double kappa = std::max(1.0, f.max_dtheta);
    const double tol = 10.0 * std::max(st.el_residual, 1e-15) * kappa;
    Params p = with(base, "condition_factor", kappa);
    p.emplace_back("el_residual", format_g17(st.el_residual));
    if (!st.converged) p.emplace_back("unconverged", "true");

    std::vector<IdentityReport> out;
    out.push_back(residual_report("flow_stationarity", stationarity_residual(st.u), tol, p));
    out.push_back(poho_s1_first(st.u, tol, with(p, "post", "flow")));
    for (auto& fr : fourier_relations(st.u, n_max, tol, p)) out.push_back(std::move(fr.report));
    return out;
}

inline std::string flow_trace_csv(const FlowState& st) {
    std::string s = "step,energy,el_residual\n";
    for (const FlowStep& r : st.trace) {
        s += std::to_string(r.step);
        s += ",";
        s += format_g17(r.energy);
        s += ",";
        s += format_g17(r.el_residual);
        s += "\n";
    }
    return s;
}

}  // namespace poho
