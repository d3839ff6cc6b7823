#include "rydl/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "rydl/rng.hpp"

namespace rydl {

SpectrumReport level_spacing_stats(std::vector<double> energies, double degeneracy_tol,
                                   int hist_bins) {
    std::sort(energies.begin(), energies.end());
    SpectrumReport rep;
    // collapse exact degeneracies before forming ratios
    for (double e : energies)
        if (rep.energies.empty() || e - rep.energies.back() > degeneracy_tol)
            rep.energies.push_back(e);
    if (rep.energies.size() < 4)
        throw std::invalid_argument("level_spacing_stats: need at least 4 distinct levels");

    const auto& lev = rep.energies;
    for (std::size_t n = 1; n + 1 < lev.size(); ++n) {
        double s0 = lev[n] - lev[n - 1];
        double s1 = lev[n + 1] - lev[n];
        rep.r_values.push_back(std::min(s0, s1) / std::max(s0, s1));
    }
    double sum = 0;
    for (double r : rep.r_values) sum += r;
    rep.mean_r = sum / double(rep.r_values.size());

    rep.hist_edges.resize(hist_bins + 1);
    rep.hist_density.assign(hist_bins, 0.0);
    for (int b = 0; b <= hist_bins; ++b) rep.hist_edges[b] = double(b) / hist_bins;
    for (double r : rep.r_values) {
        int b = std::min(hist_bins - 1, int(r * hist_bins));
        rep.hist_density[b] += 1.0;
    }
    double w = 1.0 / hist_bins;
    for (auto& d : rep.hist_density) d /= double(rep.r_values.size()) * w;

    for (double e : energies)
        if (std::abs(e) < degeneracy_tol) ++rep.zero_mode_count;
    for (std::size_t k = 0; k < energies.size(); ++k)
        rep.reflection_residual = std::max(
            rep.reflection_residual, std::abs(energies[k] + energies[energies.size() - 1 - k]));
    return rep;
}

DisorderAverage disorder_averaged_r(const ConstrainedBasis& basis, double Omega, double Delta,
                                    double eta, int ky_index, int n_realizations,
                                    std::uint64_t master_seed, int jobs) {
    if (eta <= 0) throw std::invalid_argument("disorder_averaged_r: eta must be positive");
    // the disordered detuning is column-random but leg-symmetric, so T_y is
    // the one remaining lattice symmetry; resolve it once
    SymmetrySector sector(basis, SectorSpec{std::nullopt, ky_index, false});

    DisorderAverage out;
    out.per_realization.assign(n_realizations, 0.0);
    if (jobs <= 0) jobs = int(std::thread::hardware_concurrency());
    jobs = std::max(1, std::min(jobs, n_realizations));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int idx = next.fetch_add(1);
            if (idx >= n_realizations) return;
            auto profile = DetuningProfile::disordered(basis.lattice(), Delta, eta,
                                                       mix_seed(master_seed, std::uint64_t(idx)));
            auto H = sector.project(build_pxp_z(basis, Omega, profile));
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.dense(), Eigen::EigenvaluesOnly);
            std::vector<double> evals(es.eigenvalues().data(),
                                      es.eigenvalues().data() + es.eigenvalues().size());
            double width = evals.back() - evals.front();
            auto rep = level_spacing_stats(std::move(evals), 1e-10 * width);
            out.per_realization[idx] = rep.mean_r;
        }
    };
    std::vector<std::thread> pool;
    for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    double m = 0;
    for (double r : out.per_realization) m += r;
    m /= n_realizations;
    double v = 0;
    for (double r : out.per_realization) v += (r - m) * (r - m);
    out.mean_r = m;
    out.stderr_r = n_realizations > 1 ? std::sqrt(v / (double(n_realizations) * (n_realizations - 1)))
                                      : 0.0;
    return out;
}

int zero_mode_count(const SparseOperator& H, double tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.dense(), Eigen::EigenvaluesOnly);
    int count = 0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
        if (std::abs(es.eigenvalues()[k]) < tol) ++count;
    return count;
}

double agp_default_zeta(int n_sites, std::size_t dim) {
    return n_sites * std::log(double(n_sites)) / double(dim);
}

double agp_norm(const SparseOperator& H, const SparseOperator& dH, double zeta) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.dense());
    const auto& w = es.eigenvalues();
    Eigen::MatrixXcd V = es.eigenvectors();
    const Eigen::Index D = w.size();
    double width = std::max(1.0, w[D - 1] - w[0]);
    double degtol = 1e-10 * width;

    Eigen::MatrixXcd M = V.adjoint() * (dH.mat * V);
    // rotate each degenerate block to diagonalize the projected perturbation
    Eigen::Index i = 0;
    while (i < D) {
        Eigen::Index j = i;
        while (j + 1 < D && w[j + 1] - w[i] <= degtol) ++j;
        if (j > i) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> bs(M.block(i, i, j - i + 1, j - i + 1));
            Eigen::MatrixXcd R = Eigen::MatrixXcd::Identity(D, D);
            R.block(i, i, j - i + 1, j - i + 1) = bs.eigenvectors();
            M = R.adjoint() * M * R;
        }
        i = j + 1;
    }
    double out = 0;
    for (Eigen::Index a = 0; a < D; ++a)
        for (Eigen::Index b = 0; b < D; ++b) {
            if (a == b) continue;
            double om = w[a] - w[b];
            if (std::abs(om) <= degtol) continue;
            double om2 = om * om;
            out += om2 / std::pow(om2 + zeta * zeta, 2) * std::norm(M(a, b));
        }
    return out / double(D);
}

PageEstimate page_value_estimate(const ConstrainedBasis& basis, const Cut& cut, int n_samples,
                                 std::uint64_t seed, const SymmetrySector* sector, int jobs) {
    const Eigen::Index dim = sector ? Eigen::Index(sector->dim()) : Eigen::Index(basis.dim());
    std::vector<double> vals(n_samples, 0.0);
    if (jobs <= 0) jobs = int(std::thread::hardware_concurrency());
    jobs = std::max(1, std::min(jobs, n_samples));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int idx = next.fetch_add(1);
            if (idx >= n_samples) return;
            std::mt19937_64 gen(mix_seed(seed, std::uint64_t(idx)));
            // Box-Muller from raw bits keeps the draw platform-independent
            Eigen::VectorXcd v(dim);
            for (Eigen::Index k = 0; k < dim; ++k) {
                double u1 = std::max(uniform01(gen), 1e-300);
                double u2 = uniform01(gen);
                double r = std::sqrt(-2.0 * std::log(u1));
                v[k] = cplx(r * std::cos(2 * std::numbers::pi * u2),
                            r * std::sin(2 * std::numbers::pi * u2));
            }
            v /= v.norm();
            Eigen::VectorXcd full = sector ? sector->lift(v) : v;
            vals[idx] = vn_entropy(basis, full, cut);
        }
    };
    std::vector<std::thread> pool;
    for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    PageEstimate est;
    est.n_samples = n_samples;
    double m = 0;
    for (double s : vals) m += s;
    m /= n_samples;
    double var = 0;
    for (double s : vals) var += (s - m) * (s - m);
    est.mean = m;
    est.stderr_mean = n_samples > 1 ? std::sqrt(var / (double(n_samples) * (n_samples - 1))) : 0.0;
    return est;
}

}  // namespace rydl
