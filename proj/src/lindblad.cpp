#include "rydl/lindblad.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "rydl/rng.hpp"

namespace rydl {

std::vector<SparseOperator> JumpChannelSet::materialize(const ConstrainedBasis& basis) const {
    const Lattice& lat = basis.lattice();
    const int N = lat.n_sites();
    std::vector<SparseOperator> out;
    for (int i = 0; i < N; ++i) {
        if (gamma_d > 0) {
            std::vector<Triplet> trips;
            for (std::size_t si = 0; si < basis.dim(); ++si) {
                double z = ((basis.state(si) >> i) & 1) ? 1.0 : -1.0;
                trips.emplace_back(si, si, std::sqrt(gamma_d) * z);
            }
            out.push_back(from_triplets(basis.dim(), trips, true));
        }
        if (gamma_e > 0) {
            // sigma^- maps the constrained basis into itself
            std::vector<Triplet> trips;
            for (std::size_t si = 0; si < basis.dim(); ++si) {
                FockState s = basis.state(si);
                if ((s >> i) & 1)
                    trips.emplace_back(Eigen::Index(basis.index_of(s ^ (FockState(1) << i))),
                                       Eigen::Index(si), std::sqrt(gamma_e));
            }
            out.push_back(from_triplets(basis.dim(), trips, false));
        }
    }
    return out;
}

Eigen::MatrixXcd lindblad_rhs(const SparseOperator& H, const std::vector<SparseOperator>& jumps,
                              const Eigen::MatrixXcd& rho) {
    if (H.dim() != rho.rows() || rho.rows() != rho.cols())
        throw std::invalid_argument("lindblad_rhs: shape mismatch");
    const cplx mi(0, -1);
    Eigen::MatrixXcd out = mi * (H.mat * rho - rho * H.mat);
    for (const auto& J : jumps) {
        Eigen::MatrixXcd Jr = J.mat * rho;
        out += Jr * J.mat.adjoint();
        Eigen::MatrixXcd JdJ_rho = J.mat.adjoint() * Jr;
        out -= 0.5 * (JdJ_rho + JdJ_rho.adjoint());
    }
    return out;
}

TimeSeries evolve_lindblad(const ConstrainedBasis& basis, const SparseOperator& H,
                           const JumpChannelSet& channels, const Eigen::MatrixXcd& rho0,
                           double t_max, const std::vector<NamedObservable>& observables,
                           const LindbladOptions& opt) {
    if (std::size_t(H.dim()) > opt.dim_cap)
        throw resource_cap("evolve_lindblad: density matrix exceeds the cap (" +
                           std::to_string(opt.dim_cap) + "); use trajectories instead");
    auto jumps = channels.materialize(basis);
    // precompute sum J^+J once; it is reused every substep
    Eigen::MatrixXcd JdJ = Eigen::MatrixXcd::Zero(H.dim(), H.dim());
    for (auto& J : jumps) JdJ += Eigen::MatrixXcd(SpMat(J.mat.adjoint() * J.mat));
    const cplx mi(0, -1);
    auto rhs = [&](const Eigen::MatrixXcd& r) {
        Eigen::MatrixXcd out = mi * (H.mat * r - r * H.mat);
        for (auto& J : jumps) out += Eigen::MatrixXcd(J.mat * r) * J.mat.adjoint();
        out -= 0.5 * (JdJ * r + r * JdJ);
        return out;
    };

    TimeSeries ts;
    std::vector<std::vector<double>*> cols;
    for (auto& o : observables) cols.push_back(&ts.add_column(o.name));
    auto& trc = ts.add_column("trace_drift");

    Eigen::MatrixXcd rho = rho0;
    const int n_steps = int(std::lround(t_max / opt.dt));
    const int sample_every = std::max(1, int(std::lround(opt.sample_dt / opt.dt)));
    double min_eig_seen = 0.0;
    for (int n = 0; n <= n_steps; ++n) {
        double t = n * opt.dt;
        if (n % sample_every == 0 || n == n_steps) {
            ts.append_time(t);
            for (std::size_t k = 0; k < observables.size(); ++k)
                cols[k]->push_back((observables[k].op.mat * rho).trace().real());
            trc.push_back(std::abs(rho.trace().real() - 1.0));
        }
        if (opt.checkpoint_every > 0 && n % opt.checkpoint_every == 0) {
            double drift = std::abs(rho.trace().real() - 1.0);
            if (drift > kTraceDriftTol)
                throw numeric_abort("evolve_lindblad: trace drift " + std::to_string(drift));
            rho /= rho.trace().real();
            double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
            if (herm > 1e-10) throw numeric_abort("evolve_lindblad: hermiticity loss");
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
            min_eig_seen = std::min(min_eig_seen, es.eigenvalues().minCoeff());
            if (es.eigenvalues().minCoeff() < -1e-8)
                throw numeric_abort("evolve_lindblad: positivity loss");
        }
        if (n == n_steps) break;
        Eigen::MatrixXcd k1 = rhs(rho);
        Eigen::MatrixXcd k2 = rhs(rho + (opt.dt / 2) * k1);
        Eigen::MatrixXcd k3 = rhs(rho + (opt.dt / 2) * k2);
        Eigen::MatrixXcd k4 = rhs(rho + opt.dt * k3);
        rho += (opt.dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    ts.meta["integrator"] = "rk4";
    ts.meta["dt"] = opt.dt;
    ts.meta["gamma_d"] = channels.gamma_d;
    ts.meta["gamma_e"] = channels.gamma_e;
    ts.meta["min_eigenvalue_seen"] = min_eig_seen;
    return ts;
}

TimeSeries mcwf_trajectory(const ConstrainedBasis& basis, const SparseOperator& H,
                           const JumpChannelSet& channels, const Eigen::VectorXcd& psi0,
                           double t_max, std::uint64_t seed,
                           const std::vector<NamedObservable>& observables,
                           const McwfOptions& opt) {
    if (std::abs(psi0.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("mcwf_trajectory: psi0 not normalized");
    auto jumps = channels.materialize(basis);
    SpMat JdJ(H.dim(), H.dim());
    for (auto& J : jumps) JdJ = JdJ + SpMat(J.mat.adjoint() * J.mat);
    // H_eff = H - (i/2) sum J^+J drives the no-jump decay of the norm
    SpMat Heff = H.mat - cplx(0, 0.5) * JdJ;
    const cplx mi(0, -1);
    auto deriv = [&](const Eigen::VectorXcd& v) { return Eigen::VectorXcd(mi * (Heff * v)); };

    std::mt19937_64 gen(seed);
    double threshold = uniform01(gen);

    TimeSeries ts;
    std::vector<std::vector<double>*> cols;
    for (auto& o : observables) cols.push_back(&ts.add_column(o.name));
    auto& jumped = ts.add_column("n_jumps");

    Eigen::VectorXcd psi = psi0;
    int n_jumps = 0;
    bool warned = false;
    const int n_steps = int(std::lround(t_max / opt.dt));
    const int sample_every = std::max(1, int(std::lround(opt.sample_dt / opt.dt)));
    for (int n = 0; n <= n_steps; ++n) {
        if (n % sample_every == 0 || n == n_steps) {
            ts.append_time(n * opt.dt);
            Eigen::VectorXcd unit = psi / psi.norm();
            for (std::size_t k = 0; k < observables.size(); ++k)
                cols[k]->push_back(real_expectation(unit, observables[k].op));
            jumped.push_back(double(n_jumps));
        }
        if (n == n_steps) break;
        double n2_before = psi.squaredNorm();
        Eigen::VectorXcd k1 = deriv(psi);
        Eigen::VectorXcd k2 = deriv(psi + (opt.dt / 2) * k1);
        Eigen::VectorXcd k3 = deriv(psi + (opt.dt / 2) * k2);
        Eigen::VectorXcd k4 = deriv(psi + opt.dt * k3);
        psi += (opt.dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
        double n2 = psi.squaredNorm();
        if (!warned && n2_before > 0 && 1.0 - n2 / n2_before > 0.1) {
            ts.meta["warning"] = "per-step jump probability exceeded 0.1; decrease dt";
            warned = true;
        }
        if (!jumps.empty() && n2 <= threshold) {
            // jump channel chosen with probability proportional to |J psi|^2
            std::vector<double> w(jumps.size());
            double tot = 0;
            for (std::size_t k = 0; k < jumps.size(); ++k) {
                w[k] = (jumps[k].mat * psi).squaredNorm();
                tot += w[k];
            }
            double r = uniform01(gen) * tot;
            std::size_t pick = 0;
            for (; pick + 1 < jumps.size(); ++pick) {
                if (r < w[pick]) break;
                r -= w[pick];
            }
            psi = jumps[pick].mat * psi;
            psi /= psi.norm();
            threshold = uniform01(gen);
            ++n_jumps;
        }
    }
    ts.meta["seed"] = seed;
    ts.meta["dt"] = opt.dt;
    ts.meta["n_jumps"] = n_jumps;
    ts.meta["gamma_d"] = channels.gamma_d;
    ts.meta["gamma_e"] = channels.gamma_e;
    return ts;
}

TimeSeries trajectory_average(const ConstrainedBasis& basis, const SparseOperator& H,
                              const JumpChannelSet& channels, const Eigen::VectorXcd& psi0,
                              double t_max, int n_traj, std::uint64_t master_seed,
                              const std::vector<NamedObservable>& observables,
                              const McwfOptions& opt, int jobs) {
    if (n_traj < 1) throw std::invalid_argument("trajectory_average: n_traj must be >= 1");
    std::vector<TimeSeries> runs(n_traj);
    if (jobs <= 0) jobs = int(std::thread::hardware_concurrency());
    jobs = std::max(1, std::min(jobs, n_traj));

    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int idx = next.fetch_add(1);
            if (idx >= n_traj) return;
            runs[idx] = mcwf_trajectory(basis, H, channels, psi0, t_max,
                                        mix_seed(master_seed, std::uint64_t(idx)), observables, opt);
        }
    };
    std::vector<std::thread> pool;
    for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    TimeSeries out;
    out.times = runs[0].times;
    const std::size_t nt = out.times.size();
    for (auto& o : observables) {
        auto& mean = out.add_column(o.name + "_mean");
        auto& serr = out.add_column(o.name + "_stderr");
        mean.assign(nt, 0.0);
        serr.assign(nt, 0.0);
        // fixed-order reduction over the trajectory index
        for (std::size_t r = 0; r < nt; ++r) {
            double m = 0;
            for (int k = 0; k < n_traj; ++k) m += runs[k].column(o.name)[r];
            m /= n_traj;
            double v = 0;
            for (int k = 0; k < n_traj; ++k) v += std::pow(runs[k].column(o.name)[r] - m, 2);
            mean[r] = m;
            serr[r] = n_traj > 1 ? std::sqrt(v / (double(n_traj) * (n_traj - 1))) : 0.0;
        }
    }
    out.meta["n_traj"] = n_traj;
    out.meta["master_seed"] = master_seed;
    out.meta["dt"] = opt.dt;
    out.meta["gamma_d"] = channels.gamma_d;
    out.meta["gamma_e"] = channels.gamma_e;
    return out;
}

}  // namespace rydl
