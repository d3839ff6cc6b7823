#include "rydl/sw.hpp"

#include <cmath>

namespace rydl {

std::vector<int> zpi_labels(const ConstrainedBasis& basis) {
    const Lattice& lat = basis.lattice();
    std::vector<int> out(basis.dim());
    for (std::size_t si = 0; si < basis.dim(); ++si) {
        FockState s = basis.state(si);
        int v = 0;
        for (int i = 0; i < lat.n_sites(); ++i)
            v += lat.stagger(i) * (((s >> i) & 1) ? +1 : -1);
        out[si] = v;
    }
    return out;
}

SparseOperator project_zpi(const SparseOperator& op, const std::vector<int>& labels) {
    std::vector<Triplet> trips;
    for (int k = 0; k < op.mat.outerSize(); ++k)
        for (SpMat::InnerIterator it(op.mat, k); it; ++it)
            if (labels[it.row()] == labels[it.col()])
                trips.emplace_back(it.row(), it.col(), it.value());
    return from_triplets(op.dim(), trips, op.hermitian);
}

SparseOperator sw_generator(const ConstrainedBasis& basis, double Omega, double Delta) {
    if (Delta == 0.0) throw std::invalid_argument("sw_generator: Delta must be nonzero");
    const Lattice& lat = basis.lattice();
    const int N = lat.n_sites();
    // iS = alpha sum_j,a (-1)^j sigma~y with alpha = -i Omega / (2 Delta),
    // fixed by [iS, H_z] = -H_x. Flip-up element -(Omega/2Delta)(-1)^j,
    // flip-down the opposite sign: a real antisymmetric matrix.
    std::vector<Triplet> trips;
    const double g = Omega / (2.0 * Delta);
    for (std::size_t si = 0; si < basis.dim(); ++si) {
        FockState s = basis.state(si);
        for (int i = 0; i < N; ++i) {
            if (s & lat.neighbor_mask[i]) continue;
            FockState t = s ^ (FockState(1) << i);
            double up = ((s >> i) & 1) ? +1.0 : -1.0;  // +g when de-exciting
            trips.emplace_back(Eigen::Index(basis.index_of(t)), Eigen::Index(si),
                               up * g * lat.stagger(i));
        }
    }
    return from_triplets(basis.dim(), trips, false);
}

SparseOperator heff2_analytic(const ConstrainedBasis& basis, double Omega, double Delta) {
    const Lattice& lat = basis.lattice();
    if (lat.n_legs != 2)
        throw std::invalid_argument("heff2_analytic: closed form is for the 2-leg ladder");
    if (Delta == 0.0) throw std::invalid_argument("heff2_analytic: Delta must be nonzero");
    const int N = lat.n_sites();
    const int L = lat.n_cols;
    std::vector<Triplet> trips;
    const double c1 = -Omega * Omega / (2.0 * Delta);
    const double c2 = -Omega * Omega / (4.0 * Delta);
    for (std::size_t si = 0; si < basis.dim(); ++si) {
        FockState s = basis.state(si);
        double diag = 0;
        for (int i = 0; i < N; ++i) {
            if (s & lat.neighbor_mask[i]) continue;  // sigma~z projector
            diag += lat.stagger(i) * (((s >> i) & 1) ? +1 : -1);
        }
        if (diag != 0) trips.emplace_back(si, si, c1 * diag);

        for (int j = 1; j <= L; ++j) {
            int i1 = lat.site(j, 1), i2 = lat.site(j, 2);
            bool b1 = (s >> i1) & 1, b2 = (s >> i2) & 1;
            if (b1 == b2) continue;
            // both neighboring columns fully ground on both legs
            int jl = (j == 1) ? L : j - 1;
            int jr = (j == L) ? 1 : j + 1;
            FockState guard = (FockState(1) << lat.site(jl, 1)) | (FockState(1) << lat.site(jl, 2)) |
                              (FockState(1) << lat.site(jr, 1)) | (FockState(1) << lat.site(jr, 2));
            if (s & guard) continue;
            FockState t = s ^ (FockState(1) << i1) ^ (FockState(1) << i2);
            // (XX+YY) carries 2 on the flip-flop pair; the a-sum covers each
            // direction once
            trips.emplace_back(Eigen::Index(basis.index_of(t)), Eigen::Index(si),
                               c2 * lat.stagger(i1) * 2.0);
        }
    }
    return from_triplets(basis.dim(), trips, true);
}

SWExpansion heff_numeric(const ConstrainedBasis& basis, double Omega, double Delta,
                         int max_order) {
    if (Delta == 0.0) throw std::invalid_argument("heff_numeric: Delta must be nonzero");
    if (max_order < 0 || max_order > 4)
        throw std::invalid_argument("heff_numeric: supported orders are 0..4");
    const Lattice& lat = basis.lattice();

    SparseOperator Hz = build_pxp_z(basis, 0.0, DetuningProfile::staggered(lat, Delta));
    SparseOperator Hx = build_pxp_z(basis, Omega, DetuningProfile::staggered(lat, 0.0));
    SparseOperator A = sw_generator(basis, Omega, Delta);
    auto labels = zpi_labels(basis);

    SWExpansion sw;
    sw.Omega = Omega;
    sw.Delta = Delta;
    sw.generator = A;
    sw.terms.push_back(project_zpi(Hz, labels));  // order 0
    if (max_order >= 1)
        sw.terms.push_back(from_triplets(basis.dim(), {}, true));  // order 1 vanishes
    SparseOperator K = Hx;
    double fact = 1.0;
    for (int order = 2; order <= max_order; ++order) {
        K = commutator(A, K);
        fact *= order;
        auto term = project_zpi(op_scale(K, 1.0 / fact), labels);
        term.hermitian = true;
        sw.terms.push_back(term);
    }
    return sw;
}

SparseOperator SWExpansion::cumulative(int order) const {
    if (order < 0 || order >= int(terms.size()))
        throw std::invalid_argument("SWExpansion: order out of range");
    SparseOperator out = terms[0];
    for (int k = 1; k <= order; ++k) out = op_add(out, terms[k]);
    out.hermitian = true;
    return out;
}

// Columns group into connected clusters along x (PBC). A cluster of one
// occupied column is an active rung whose excitation Rabi-oscillates between
// the legs; longer zig-zag clusters are frozen by the flip projectors. Fixing
// the frozen pattern, the 2^k leg choices of the k active rungs close under
// H_eff^[2]; diagonalizing that small block gives exact eigenstates. For
// active rungs two or more empty columns away from all other occupation the
// block is the pure +- Bell product; at one-empty-column separation the
// dressed sigma~z diagonal differs between branches and tilts the
// combinations. Leg choices map one-to-one onto eigenvectors, so the
// enumeration spans the full space.
std::vector<LabeledEigenstate> enumerate_heff2_eigenstates(const ConstrainedBasis& basis,
                                                           double Omega, double Delta) {
    const Lattice& lat = basis.lattice();
    if (lat.n_legs != 2)
        throw std::invalid_argument("enumerate_heff2_eigenstates: 2-leg ladder only");
    const int L = lat.n_cols;
    auto H2 = op_add(heff2_analytic(basis, Omega, Delta),
                     build_pxp_z(basis, 0.0, DetuningProfile::staggered(lat, Delta)));
    Eigen::MatrixXcd H2d = H2.dense();

    auto occupied = [&](FockState s, int j) {
        return ((s >> lat.site(j, 1)) & 1) || ((s >> lat.site(j, 2)) & 1);
    };

    std::vector<LabeledEigenstate> out;
    // canonical skeletons: states whose active rungs all sit on leg 1
    for (std::size_t si = 0; si < basis.dim(); ++si) {
        FockState s = basis.state(si);
        std::vector<int> active;
        bool canonical = true;
        for (int j = 1; j <= L && canonical; ++j) {
            if (!occupied(s, j)) continue;
            int jl = (j == 1) ? L : j - 1;
            int jr = (j == L) ? 1 : j + 1;
            if (!occupied(s, jl) && !occupied(s, jr)) {
                if ((s >> lat.site(j, 2)) & 1)
                    canonical = false;  // counted from its leg-1 twin
                else
                    active.push_back(j);
            }
        }
        if (!canonical) continue;

        const int k = int(active.size());
        const int nb = 1 << k;
        std::vector<Eigen::Index> branch(nb);
        for (int combo = 0; combo < nb; ++combo) {
            FockState f = s;
            for (int b = 0; b < k; ++b)
                if ((combo >> b) & 1) {
                    f ^= FockState(1) << lat.site(active[b], 1);
                    f |= FockState(1) << lat.site(active[b], 2);
                }
            branch[combo] = Eigen::Index(basis.index_of(f));
        }
        Eigen::MatrixXcd blk(nb, nb);
        for (int a = 0; a < nb; ++a)
            for (int b = 0; b < nb; ++b) blk(a, b) = H2d(branch[a], branch[b]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(blk);

        // charges and tags are shared by every branch
        int occ_cols = 0, z_pi = 0;
        std::vector<int> q(L);
        for (int j = 1; j <= L; ++j) {
            q[j - 1] = occupied(s, j) ? -1 : +1;
            if (occupied(s, j)) ++occ_cols;
        }
        for (int i = 0; i < lat.n_sites(); ++i)
            z_pi += lat.stagger(i) * (((s >> i) & 1) ? +1 : -1);

        for (int m = 0; m < nb; ++m) {
            LabeledEigenstate st;
            st.n_bell = k;
            st.z_pi = z_pi;
            st.q = q;
            st.energy = es.eigenvalues()[m];
            st.vector = Eigen::VectorXcd::Zero(basis.dim());
            for (int a = 0; a < nb; ++a) st.vector[branch[a]] = es.eigenvectors()(a, m);
            if (s == 0)
                st.tag = "vacuum";
            else if (k == 0)
                st.tag = "block";
            else if (occ_cols == k)
                st.tag = "bell";
            else
                st.tag = "mixed";
            out.push_back(std::move(st));
        }
    }
    return out;
}

FockState encode_bits(const Lattice& lat, const std::vector<int>& bits) {
    if (lat.n_legs != 2) throw std::invalid_argument("encode_bits: 2-leg ladder only");
    const int L = lat.n_cols;
    if (int(bits.size()) != L) throw std::invalid_argument("encode_bits: need L bits");
    for (int b : bits)
        if (b != 1 && b != -1) throw std::invalid_argument("encode_bits: bits must be +-1");

    // runs of consecutive -1 rungs alternate legs, starting each run on leg 1
    std::vector<int> leg(L, 0);  // 0 = empty
    int start = -1;
    for (int j = 0; j < L; ++j)
        if (bits[j] == 1) start = j;
    if (start < 0) {
        if (L % 2 == 1)
            throw std::invalid_argument(
                "encode_bits: all-(-1) string cannot be blockade-legal on an odd ring");
        for (int j = 0; j < L; ++j) leg[j] = 1 + (j % 2);
    } else {
        int prev_leg = 0;
        for (int d = 1; d <= L; ++d) {
            int j = (start + d) % L;
            if (bits[j] == 1) {
                prev_leg = 0;
                continue;
            }
            leg[j] = (prev_leg == 1) ? 2 : 1;
            prev_leg = leg[j];
        }
    }
    FockState s = 0;
    for (int j = 1; j <= L; ++j)
        if (leg[j - 1]) s |= FockState(1) << lat.site(j, leg[j - 1]);
    if (!blockade_legal(lat, s)) throw std::logic_error("encode_bits: assignment failed");
    return s;
}

std::vector<int> decode_bits(const std::vector<double>& q_expectations, double tol) {
    std::vector<int> out;
    out.reserve(q_expectations.size());
    for (double q : q_expectations) {
        if (std::abs(q) < tol)
            throw numeric_abort("decode_bits: indeterminate bit, |<Q>| below tolerance");
        out.push_back(q > 0 ? +1 : -1);
    }
    return out;
}

}  // namespace rydl
