#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rydl/lindblad.hpp"
#include "rydl/rng.hpp"

using namespace rydl;

namespace {
ConstrainedBasis ladder(int L) { return enumerate_basis(build_lattice(L, 2)); }
}  // namespace

TEST_CASE("lindblad rhs basics") {
    auto basis = ladder(2);
    auto H = build_pxp_z(basis, 1.0, DetuningProfile::staggered(basis.lattice(), 0.7));
    const Eigen::Index D = H.dim();

    Eigen::VectorXcd psi = fock_vector(D, 1);
    Eigen::MatrixXcd rho = psi * psi.adjoint();

    // zero rates: pure commutator
    auto rhs0 = lindblad_rhs(H, {}, rho);
    Eigen::MatrixXcd comm = cplx(0, -1) * (H.mat * rho - rho * H.mat);
    CHECK((rhs0 - comm).cwiseAbs().maxCoeff() < 1e-14);

    JumpChannelSet both{0.3, 0.2};
    auto jumps = both.materialize(basis);
    auto rhs = lindblad_rhs(H, jumps, rho);
    // trace preserving and hermiticity preserving
    CHECK(std::abs(rhs.trace()) < 1e-12);
    CHECK((rhs - rhs.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

    // maximally mixed state is stationary under pure dephasing
    JumpChannelSet deph{0.5, 0.0};
    Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Identity(D, D) / double(D);
    auto H0 = build_pxp_z(basis, 0.0, DetuningProfile::staggered(basis.lattice(), 0.0));
    auto rhs_mixed = lindblad_rhs(H0, deph.materialize(basis), mixed);
    CHECK(rhs_mixed.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("emission channels stay inside the constrained space") {
    auto basis = ladder(3);
    JumpChannelSet em{0.0, 0.4};
    for (const auto& J : em.materialize(basis)) {
        // every column maps a basis state to a basis state (or zero)
        CHECK(J.dim() == Eigen::Index(basis.dim()));
    }
}

TEST_CASE("closed-system limit of the Lindblad solver") {
    auto basis = ladder(2);
    auto H = build_pxp_z(basis, 1.0, DetuningProfile::staggered(basis.lattice(), 0.5));
    Eigen::VectorXcd psi0 = fock_vector(basis.dim(), basis.index_of(1));
    Eigen::MatrixXcd rho0 = psi0 * psi0.adjoint();
    std::vector<NamedObservable> obs{{"mz", observable_mz(basis)}};
    LindbladOptions opt;
    opt.dt = 1e-3;
    opt.sample_dt = 0.5;
    auto ts = evolve_lindblad(basis, H, JumpChannelSet{}, rho0, 5.0, obs, opt);

    Propagator prop(H, Method::ED);
    for (std::size_t k = 0; k < ts.times.size(); ++k) {
        auto psi = prop.at_time(psi0, ts.times[k]);
        CHECK(ts.column("mz")[k] ==
              doctest::Approx(real_expectation(psi, obs[0].op)).epsilon(1e-6));
    }
}

TEST_CASE("vacuum is a dark state of emission") {
    auto basis = ladder(2);
    auto H0 = build_pxp_z(basis, 0.0, DetuningProfile::staggered(basis.lattice(), 0.0));
    Eigen::VectorXcd vac = fock_vector(basis.dim(), basis.index_of(0));
    JumpChannelSet em{0.0, 0.5};
    McwfOptions opt;
    opt.dt = 1e-2;
    auto ts = mcwf_trajectory(basis, H0, em, vac, 10.0, 42, {{"mz", observable_mz(basis)}}, opt);
    CHECK(ts.column("n_jumps").back() == 0.0);
    for (double v : ts.column("mz")) CHECK(v == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("two-level emission decays exponentially") {
    // two-site chain, drive off, one excitation: population e^{-gamma t}
    auto lat = build_lattice(2, 1, false, false);
    auto basis = enumerate_basis(lat);
    double ge = 0.35;
    auto H0 = build_pxp_z(basis, 0.0, DetuningProfile::staggered(lat, 0.0));
    Eigen::VectorXcd psi0 = fock_vector(basis.dim(), basis.index_of(1));
    std::vector<NamedObservable> obs{{"n", observable_n(basis)}};
    McwfOptions opt;
    opt.dt = 5e-3;
    opt.sample_dt = 1.0;
    int n_traj = 1000;
    auto ts = trajectory_average(basis, H0, JumpChannelSet{0.0, ge}, psi0, 6.0, n_traj, 2024, obs,
                                 opt, 2);
    for (std::size_t k = 0; k < ts.times.size(); ++k) {
        double expect = std::exp(-ge * ts.times[k]);
        double m = ts.column("n_mean")[k];
        // binomial error bound; stderr column vanishes at the endpoints
        double sig = std::max(ts.column("n_stderr")[k],
                              std::sqrt(expect * (1 - expect) / n_traj) + 1e-12);
        CHECK(std::abs(m - expect) < 3.5 * sig + 1e-9);
    }
}

TEST_CASE("trajectory average matches the master equation") {
    auto basis = ladder(2);  // N = 4 keeps this quick
    auto H = build_pxp_z(basis, 1.0, DetuningProfile::staggered(basis.lattice(), 0.0));
    Eigen::VectorXcd z2 = fock_vector(basis.dim(), basis.index_of(parse_state("ox/xo", basis.lattice())));
    Eigen::MatrixXcd rho0 = z2 * z2.adjoint();
    std::vector<NamedObservable> obs{{"mz", observable_mz(basis)}};
    JumpChannelSet deph{0.1, 0.0};

    LindbladOptions lopt;
    lopt.dt = 2e-3;
    lopt.sample_dt = 1.0;
    auto exact = evolve_lindblad(basis, H, deph, rho0, 8.0, obs, lopt);

    McwfOptions mopt;
    mopt.dt = 2e-3;
    mopt.sample_dt = 1.0;
    auto avg = trajectory_average(basis, H, deph, z2, 8.0, 400, 77, obs, mopt, 2);
    for (std::size_t k = 1; k < exact.times.size(); ++k) {
        double d = std::abs(exact.column("mz")[k] - avg.column("mz_mean")[k]);
        CHECK(d < 3.0 * std::max(avg.column("mz_stderr")[k], 1e-3));
    }
}

TEST_CASE("single trajectory average returns it with zero stderr") {
    auto basis = ladder(2);
    auto H = build_pxp_z(basis, 1.0, DetuningProfile::staggered(basis.lattice(), 0.0));
    Eigen::VectorXcd psi0 = fock_vector(basis.dim(), 0);
    std::vector<NamedObservable> obs{{"mz", observable_mz(basis)}};
    McwfOptions opt;
    opt.dt = 1e-2;
    opt.sample_dt = 1.0;
    auto one = mcwf_trajectory(basis, H, {0.2, 0.0}, psi0, 3.0, mix_seed(5, 0), obs, opt);
    auto avg = trajectory_average(basis, H, {0.2, 0.0}, psi0, 3.0, 1, 5, obs, opt, 1);
    for (std::size_t k = 0; k < one.times.size(); ++k) {
        CHECK(avg.column("mz_mean")[k] == one.column("mz")[k]);
        CHECK(avg.column("mz_stderr")[k] == 0.0);
    }
}

TEST_CASE("dimension cap suggests trajectories") {
    auto basis = ladder(8);  // D = 1155 < cap, so force a tiny cap
    auto H = build_pxp_z(basis, 1.0, DetuningProfile::staggered(basis.lattice(), 0.0));
    Eigen::MatrixXcd rho0 =
        Eigen::MatrixXcd::Identity(basis.dim(), basis.dim()) / double(basis.dim());
    LindbladOptions opt;
    opt.dim_cap = 100;
    CHECK_THROWS_AS(evolve_lindblad(basis, H, {}, rho0, 1.0, {}, opt), resource_cap);
}
