#include "rydl/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

namespace rydl {

Cut Cut::lr(const Lattice& lat) {
    Cut c;
    for (int j = 1; j <= lat.n_cols / 2; ++j)
        for (int a = 1; a <= lat.n_legs; ++a) c.sites.push_back(lat.site(j, a));
    std::sort(c.sites.begin(), c.sites.end());
    return c;
}

Cut Cut::ud(const Lattice& lat) {
    Cut c;
    for (int j = 1; j <= lat.n_cols; ++j) c.sites.push_back(lat.site(j, 1));
    std::sort(c.sites.begin(), c.sites.end());
    return c;
}

Cut Cut::custom(std::vector<int> sites) {
    Cut c;
    c.sites = std::move(sites);
    std::sort(c.sites.begin(), c.sites.end());
    c.sites.erase(std::unique(c.sites.begin(), c.sites.end()), c.sites.end());
    return c;
}

std::vector<FockState> subsystem_basis(const Lattice& lat, const std::vector<int>& sites) {
    const int n = int(sites.size());
    // neighbor masks restricted to bonds with both endpoints inside
    std::vector<std::uint64_t> mask(n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (lat.neighbor_mask[sites[a]] >> sites[b] & 1) {
                mask[a] |= std::uint64_t(1) << b;
                mask[b] |= std::uint64_t(1) << a;
            }
    std::vector<FockState> out;
    for (FockState m = 0; m < (FockState(1) << n); ++m) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            if ((m >> a) & 1 && (m & mask[a])) ok = false;
        if (ok) out.push_back(m);
    }
    return out;  // ascending by construction
}

namespace {

std::vector<int> complement_sites(const Lattice& lat, const std::vector<int>& X) {
    std::set<int> xs(X.begin(), X.end());
    std::vector<int> out;
    for (int i = 0; i < lat.n_sites(); ++i)
        if (!xs.count(i)) out.push_back(i);
    return out;
}

FockState gather_bits(FockState s, const std::vector<int>& sites) {
    FockState m = 0;
    for (std::size_t k = 0; k < sites.size(); ++k)
        if ((s >> sites[k]) & 1) m |= FockState(1) << k;
    return m;
}

double entropy_of_singular_values(const Eigen::VectorXd& sv) {
    double S = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        double p = sv[k] * sv[k];
        if (p > 1e-14) S -= p * std::log(p);
    }
    return S;
}

}  // namespace

Eigen::MatrixXcd embed(const ConstrainedBasis& basis, const Eigen::VectorXcd& psi, const Cut& cut) {
    const Lattice& lat = basis.lattice();
    for (int s : cut.sites)
        if (s < 0 || s >= lat.n_sites()) throw std::invalid_argument("embed: cut site out of range");
    auto Xc = complement_sites(lat, cut.sites);
    auto bx = subsystem_basis(lat, cut.sites);
    auto bc = subsystem_basis(lat, Xc);
    std::unordered_map<FockState, Eigen::Index> ix, ic;
    for (std::size_t k = 0; k < bx.size(); ++k) ix[bx[k]] = Eigen::Index(k);
    for (std::size_t k = 0; k < bc.size(); ++k) ic[bc[k]] = Eigen::Index(k);

    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(bx.size(), bc.size());
    for (std::size_t si = 0; si < basis.dim(); ++si) {
        if (psi[Eigen::Index(si)] == cplx(0)) continue;
        FockState s = basis.state(si);
        M(ix.at(gather_bits(s, cut.sites)), ic.at(gather_bits(s, Xc))) += psi[Eigen::Index(si)];
    }
    return M;
}

double vn_entropy(const ConstrainedBasis& basis, const Eigen::VectorXcd& psi, const Cut& cut) {
    Eigen::MatrixXcd M = embed(basis, psi, cut);
    // SVD of the thinner orientation
    if (M.rows() > M.cols()) M = M.adjoint().eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M * M.adjoint());
    Eigen::VectorXd p = es.eigenvalues().cwiseMax(0.0);
    double S = 0;
    for (Eigen::Index k = 0; k < p.size(); ++k)
        if (p[k] > 1e-14) S -= p[k] * std::log(p[k]);
    return S;
}

double mutual_information(const ConstrainedBasis& basis, const Eigen::VectorXcd& psi,
                          const std::vector<int>& X, const std::vector<int>& Y) {
    for (int x : X)
        for (int y : Y)
            if (x == y) throw std::invalid_argument("mutual_information: overlapping site sets");
    std::vector<int> XY = X;
    XY.insert(XY.end(), Y.begin(), Y.end());
    return vn_entropy(basis, psi, Cut::custom(X)) + vn_entropy(basis, psi, Cut::custom(Y)) -
           vn_entropy(basis, psi, Cut::custom(XY));
}

std::vector<std::pair<double, double>> eigenstate_entropy_scan(const ConstrainedBasis& basis,
                                                               const SparseOperator& H,
                                                               const Cut& cut,
                                                               const SymmetrySector* sector) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.dense());
    std::vector<std::pair<double, double>> out;
    out.reserve(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        Eigen::VectorXcd v = es.eigenvectors().col(k);
        if (sector) v = sector->lift(v);
        out.emplace_back(es.eigenvalues()[k], vn_entropy(basis, v, cut));
    }
    return out;
}

}  // namespace rydl
