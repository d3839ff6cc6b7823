#include "rydl/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "rydl/rng.hpp"

namespace rydl {

double diagonal_ensemble_average(const SparseOperator& H, const Eigen::VectorXcd& psi0,
                                 const SparseOperator& O, double degeneracy_tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.dense());
    const auto& w = es.eigenvalues();
    const auto& V = es.eigenvectors();
    Eigen::VectorXcd c = V.adjoint() * psi0;
    Eigen::MatrixXcd Ov = V.adjoint() * (O.mat * V);
    double tol = degeneracy_tol * std::max(1.0, std::max(std::abs(w[0]), std::abs(w[w.size() - 1])));
    double out = 0;
    Eigen::Index i = 0;
    while (i < w.size()) {
        Eigen::Index j = i;
        while (j + 1 < w.size() && w[j + 1] - w[i] <= tol) ++j;
        for (Eigen::Index a = i; a <= j; ++a)
            for (Eigen::Index b = i; b <= j; ++b)
                out += std::real(std::conj(c[a]) * c[b] * Ov(a, b));
        i = j + 1;
    }
    return out;
}

double EnsembleFit::expectation(const SparseOperator& O) const {
    Eigen::MatrixXcd Ov = evecs.adjoint() * (O.mat * evecs);
    double out = 0;
    for (Eigen::Index k = 0; k < weights.size(); ++k) out += weights[k] * Ov(k, k).real();
    return out;
}

Eigen::MatrixXcd EnsembleFit::density_matrix() const {
    return evecs * weights.asDiagonal() * evecs.adjoint();
}

namespace {

Eigen::VectorXd gibbs_weights(const Eigen::VectorXd& w, double beta) {
    Eigen::VectorXd x = (-beta) * w;
    double m = x.maxCoeff();
    Eigen::VectorXd p = (x.array() - m).exp();
    return p / p.sum();
}

double gibbs_energy(const Eigen::VectorXd& w, double beta) {
    return gibbs_weights(w, beta).dot(w);
}

}  // namespace

EnsembleFit fit_ge_target(const SparseOperator& H, double E0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.dense());
    EnsembleFit fit;
    fit.kind = "GE";
    fit.evals = es.eigenvalues();
    fit.evecs = es.eigenvectors();

    const double bmax = kMultiplierClamp;
    double lo = -bmax, hi = bmax;
    double Elo = gibbs_energy(fit.evals, lo), Ehi = gibbs_energy(fit.evals, hi);
    // Tr(rho H) is decreasing in beta
    if (E0 >= Elo || E0 <= Ehi) {
        fit.boundary = true;
        double beta = (E0 >= Elo) ? lo : hi;
        fit.multipliers = {beta};
        fit.weights = gibbs_weights(fit.evals, beta);
        fit.residual = std::abs(gibbs_energy(fit.evals, beta) - E0);
        fit.converged = false;
        return fit;
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (gibbs_energy(fit.evals, mid) > E0)
            lo = mid;
        else
            hi = mid;
    }
    double beta = 0.5 * (lo + hi);
    fit.multipliers = {beta};
    fit.weights = gibbs_weights(fit.evals, beta);
    fit.residual = std::abs(gibbs_energy(fit.evals, beta) - E0);
    fit.converged = true;
    return fit;
}

EnsembleFit fit_ge(const SparseOperator& H, const Eigen::VectorXcd& psi0) {
    return fit_ge_target(H, psi0.dot(H.mat * psi0).real());
}

namespace {

// Nelder-Mead with clamped evaluation box
double nelder_mead(std::vector<double>& x, const std::function<double(const std::vector<double>&)>& f,
                   double step, int max_iter, double ftol) {
    const int n = int(x.size());
    std::vector<std::vector<double>> S(n + 1, x);
    std::vector<double> fv(n + 1);
    for (int i = 0; i < n; ++i) S[i + 1][i] += step;
    for (int i = 0; i <= n; ++i) fv[i] = f(S[i]);

    auto order = [&] {
        std::vector<int> idx(n + 1);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> S2;
        std::vector<double> f2;
        for (int i : idx) {
            S2.push_back(S[i]);
            f2.push_back(fv[i]);
        }
        S = S2;
        fv = f2;
    };
    order();
    for (int it = 0; it < max_iter; ++it) {
        if (fv[0] < ftol) break;
        std::vector<double> cen(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) cen[k] += S[i][k] / n;
        auto mix = [&](double alpha) {
            std::vector<double> p(n);
            for (int k = 0; k < n; ++k) p[k] = cen[k] + alpha * (S[n][k] - cen[k]);
            return p;
        };
        auto xr = mix(-1.0);
        double fr = f(xr);
        if (fr < fv[0]) {
            auto xe = mix(-2.0);
            double fe = f(xe);
            if (fe < fr) {
                S[n] = xe;
                fv[n] = fe;
            } else {
                S[n] = xr;
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            S[n] = xr;
            fv[n] = fr;
        } else {
            auto xc = mix(0.5);
            double fc = f(xc);
            if (fc < fv[n]) {
                S[n] = xc;
                fv[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    for (int k = 0; k < n; ++k) S[i][k] = S[0][k] + 0.5 * (S[i][k] - S[0][k]);
                    fv[i] = f(S[i]);
                }
            }
        }
        order();
    }
    x = S[0];
    return fv[0];
}

}  // namespace

EnsembleFit fit_gge(const SparseOperator& Heff2, const SparseOperator& Zpi,
                    const std::vector<SparseOperator>& Qs, const Eigen::VectorXcd& psi0,
                    std::uint64_t restart_seed) {
    const Eigen::Index D = Heff2.dim();
    const int nq = int(Qs.size());
    const int np = 2 + nq;

    // all charges are Fock-diagonal, so Heff2 is block diagonal over joint
    // charge signatures; diagonalizing the blocks gives a common eigenbasis
    Eigen::VectorXd zdiag(D);
    Eigen::MatrixXd qdiag(nq, D);
    for (Eigen::Index i = 0; i < D; ++i) {
        zdiag[i] = Zpi.mat.coeff(i, i).real();
        for (int j = 0; j < nq; ++j) qdiag(j, i) = Qs[j].mat.coeff(i, i).real();
    }
    std::map<std::vector<int>, std::vector<Eigen::Index>> blocks;
    for (Eigen::Index i = 0; i < D; ++i) {
        std::vector<int> key(1 + nq);
        key[0] = int(std::lround(zdiag[i]));
        for (int j = 0; j < nq; ++j) key[1 + j] = int(std::lround(qdiag(j, i)));
        blocks[key].push_back(i);
    }

    EnsembleFit fit;
    fit.kind = "GGE";
    fit.evals.resize(D);
    fit.evecs = Eigen::MatrixXcd::Zero(D, D);
    Eigen::VectorXd zc(D);
    Eigen::MatrixXd qc(nq, D);
    Eigen::MatrixXcd Hd = Heff2.dense();
    Eigen::Index pos = 0;
    for (auto& [key, rows] : blocks) {
        const Eigen::Index m = Eigen::Index(rows.size());
        Eigen::MatrixXcd blk(m, m);
        for (Eigen::Index a = 0; a < m; ++a)
            for (Eigen::Index b = 0; b < m; ++b) blk(a, b) = Hd(rows[a], rows[b]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(blk);
        for (Eigen::Index k = 0; k < m; ++k) {
            fit.evals[pos] = es.eigenvalues()[k];
            for (Eigen::Index a = 0; a < m; ++a) fit.evecs(rows[a], pos) = es.eigenvectors()(a, k);
            zc[pos] = double(key[0]);
            for (int j = 0; j < nq; ++j) qc(j, pos) = double(key[1 + j]);
            ++pos;
        }
    }

    // targets from the initial state
    const double tH = psi0.dot(Heff2.mat * psi0).real();
    const double tz = psi0.dot(Zpi.mat * psi0).real();
    Eigen::VectorXd tq(nq);
    for (int j = 0; j < nq; ++j) tq[j] = psi0.dot(Qs[j].mat * psi0).real();

    auto clamp = [](double v) { return std::clamp(v, -kMultiplierClamp, kMultiplierClamp); };
    auto weights_of = [&](const std::vector<double>& lam) {
        Eigen::VectorXd x = -clamp(lam[0]) * fit.evals - clamp(lam[1]) * zc;
        for (int j = 0; j < nq; ++j) x -= clamp(lam[2 + j]) * Eigen::VectorXd(qc.row(j).transpose());
        double m = x.maxCoeff();
        Eigen::VectorXd p = (x.array() - m).exp();
        return Eigen::VectorXd(p / p.sum());
    };
    auto cost = [&](const std::vector<double>& lam) {
        Eigen::VectorXd p = weights_of(lam);
        double c = std::pow(p.dot(fit.evals) - tH, 2) + std::pow(p.dot(zc) - tz, 2);
        for (int j = 0; j < nq; ++j) c += std::pow(p.dot(Eigen::VectorXd(qc.row(j).transpose())) - tq[j], 2);
        return c;
    };

    std::mt19937_64 gen(restart_seed);
    std::vector<double> best(np, 0.0);
    double fbest = cost(best);
    for (int attempt = 0; attempt < 3 && fbest >= kGgeCostTol; ++attempt) {
        std::vector<double> x(np);
        for (auto& v : x) v = (attempt == 0) ? 0.0 : 4.0 * (uniform01(gen) - 0.5);
        double fv = nelder_mead(x, cost, 1.0, 10000, kGgeCostTol);
        if (fv < fbest) {
            fbest = fv;
            best = x;
        }
    }
    for (auto& v : best) v = clamp(v);
    fit.multipliers = best;
    fit.weights = weights_of(best);
    fit.residual = fbest;
    fit.converged = fbest < kGgeCostTol;
    for (double v : best)
        if (std::abs(v) >= kMultiplierClamp - 1e-9) fit.boundary = true;
    for (int j = 0; j < nq; ++j)
        if (std::abs(std::abs(tq[j]) - 1.0) < 1e-12) fit.boundary = true;
    return fit;
}

}  // namespace rydl
