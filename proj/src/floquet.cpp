#include "rydl/floquet.hpp"

namespace rydl {

namespace {

// per-cycle schedule: evolution segments interleaved with instantaneous maps
struct CyclePlan {
    std::vector<Propagator> segments;          // one per continuous stretch
    std::vector<double> seg_len;               // in units of tau
    std::vector<SparseOperator> after_seg;     // instantaneous unitary after each segment
};

CyclePlan make_plan(const ConstrainedBasis& basis, double Omega, const FloquetSpec& spec) {
    CyclePlan plan;
    const Lattice& lat = basis.lattice();
    auto pulse = pulse_operator(basis, spec.eps);
    switch (spec.protocol) {
        case FloquetProtocol::P0: {
            auto H = build_pxp_z(basis, Omega, DetuningProfile::staggered(lat, spec.Delta));
            plan.segments.emplace_back(H, spec.method, spec.dt);
            plan.seg_len = {1.0};
            plan.after_seg = {chirality(basis, Chirality::C)};
            break;
        }
        case FloquetProtocol::PI: {
            auto H = build_pxp_z(basis, Omega, DetuningProfile::staggered(lat, spec.Delta));
            plan.segments.emplace_back(H, spec.method, spec.dt);
            plan.seg_len = {1.0};
            auto tr = translation_operator(basis, Axis::X);
            if (spec.variant == ChiralityVariant::C2)
                tr = op_mul(translation_operator(basis, Axis::Y), tr);
            plan.after_seg = {op_mul(tr, pulse)};
            break;
        }
        case FloquetProtocol::PII: {
            auto Hp = build_pxp_z(basis, Omega, DetuningProfile::staggered(lat, spec.Delta0));
            auto Hm = build_pxp_z(basis, Omega, DetuningProfile::staggered_flipped(lat, spec.Delta0));
            plan.segments.emplace_back(Hp, spec.method, spec.dt);
            plan.segments.emplace_back(Hm, spec.method, spec.dt);
            plan.seg_len = {0.5, 0.5};
            plan.after_seg = {pulse, pulse};
            break;
        }
    }
    return plan;
}

}  // namespace

TimeSeries run_floquet(const ConstrainedBasis& basis, double Omega, const FloquetSpec& spec,
                       const Eigen::VectorXcd& psi0) {
    if (std::abs(psi0.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("run_floquet: psi0 not normalized");
    auto plan = make_plan(basis, Omega, spec);
    auto mz = observable_mz(basis);

    TimeSeries ts;
    auto& fid = ts.add_column("fidelity");
    auto& mzc = ts.add_column("mz");
    auto& strobe = ts.add_column("stroboscopic");

    auto record = [&](double t, const Eigen::VectorXcd& psi, bool is_strobe) {
        ts.append_time(t);
        fid.push_back(std::min(1.0, std::norm(psi0.dot(psi))));
        mzc.push_back(real_expectation(psi, mz));
        strobe.push_back(is_strobe ? 1.0 : 0.0);
    };

    Eigen::VectorXcd psi = psi0;
    record(0.0, psi, true);
    const int sub = std::max(1, spec.micromotion_substeps);
    for (int cyc = 0; cyc < spec.n_cycles; ++cyc) {
        double t0 = cyc * spec.tau;
        double frac_done = 0.0;
        for (std::size_t seg = 0; seg < plan.segments.size(); ++seg) {
            double len = plan.seg_len[seg] * spec.tau;
            int steps = std::max(1, int(std::lround(sub * plan.seg_len[seg])));
            for (int k = 1; k <= steps; ++k) {
                psi = plan.segments[seg].step(psi, len / steps);
                bool last_of_cycle = (seg + 1 == plan.segments.size()) && k == steps;
                if (!last_of_cycle)
                    record(t0 + (frac_done + plan.seg_len[seg] * k / steps) * spec.tau, psi, false);
            }
            psi = plan.after_seg[seg].apply(psi);
            if (seg + 1 == plan.segments.size()) record(t0 + spec.tau, psi, true);
            frac_done += plan.seg_len[seg];
        }
    }

    ts.meta["protocol"] = spec.protocol == FloquetProtocol::P0   ? "0"
                          : spec.protocol == FloquetProtocol::PI ? "I"
                                                                 : "II";
    ts.meta["tau"] = spec.tau;
    ts.meta["eps"] = spec.eps;
    ts.meta["n_cycles"] = spec.n_cycles;
    ts.meta["micromotion_substeps"] = spec.micromotion_substeps;
    if (spec.protocol == FloquetProtocol::PII)
        ts.meta["delta0"] = spec.Delta0;
    else
        ts.meta["delta"] = spec.Delta;
    if (spec.protocol == FloquetProtocol::PI)
        ts.meta["variant"] = spec.variant == ChiralityVariant::C1 ? "C1" : "C2";
    if (spec.protocol == FloquetProtocol::P0 && spec.Delta != 0.0)
        ts.meta["warning"] = "protocol 0 with nonzero staggering: exact period-2 revivals no longer guaranteed";
    return ts;
}

Eigen::MatrixXcd floquet_cycle_matrix(const ConstrainedBasis& basis, double Omega,
                                      const FloquetSpec& spec) {
    FloquetSpec ed = spec;
    ed.method = Method::ED;
    auto plan = make_plan(basis, Omega, ed);
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(basis.dim(), basis.dim());
    for (std::size_t seg = 0; seg < plan.segments.size(); ++seg) {
        U = plan.segments[seg].expm(plan.seg_len[seg] * spec.tau) * U;
        U = plan.after_seg[seg].mat * U;
    }
    return U;
}

int revival_cycle_oracle(const ConstrainedBasis& basis, FockState s) {
    const Lattice& lat = basis.lattice();
    auto px = lat.perm_x();
    FockState t = s;
    for (int m = 1; m <= 2 * lat.n_cols; ++m) {
        t = apply_perm(t, px, lat.n_sites());
        if (m % 2 == 0 && t == s) return m;
    }
    throw std::logic_error("revival_cycle_oracle: no even translation period");
}

}  // namespace rydl
