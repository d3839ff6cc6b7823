#include "rydl/propagate.hpp"

#include <cmath>

namespace rydl {

Propagator::Propagator(const SparseOperator& H, Method method, double dt, std::size_t ed_cap)
    : H_(H.mat), method_(method), dt_(dt) {
    if (!H.hermitian) throw std::invalid_argument("Propagator: H must be hermitian");
    if (method_ == Method::ED && std::size_t(H.dim()) > ed_cap) {
        method_ = Method::RK4;
        fell_back_ = true;
    }
    if (method_ == Method::ED) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.dense());
        evals_ = es.eigenvalues();
        evecs_ = es.eigenvectors();
    }
}

const Eigen::VectorXd& Propagator::evals() const {
    if (method_ != Method::ED) throw std::logic_error("Propagator: no eigendecomposition (RK4)");
    return evals_;
}
const Eigen::MatrixXcd& Propagator::evecs() const {
    if (method_ != Method::ED) throw std::logic_error("Propagator: no eigendecomposition (RK4)");
    return evecs_;
}

Eigen::MatrixXcd Propagator::expm(double t) const {
    const auto& V = evecs();
    Eigen::VectorXcd ph(evals_.size());
    for (Eigen::Index k = 0; k < evals_.size(); ++k) ph[k] = std::polar(1.0, -evals_[k] * t);
    return V * ph.asDiagonal() * V.adjoint();
}

namespace {

Eigen::VectorXcd rk4_span(const SpMat& H, Eigen::VectorXcd psi, double dt_total, double dt) {
    const cplx mi(0, -1);
    int nsteps = std::max(1, int(std::ceil(dt_total / dt - 1e-12)));
    double h = dt_total / nsteps;
    for (int n = 0; n < nsteps; ++n) {
        Eigen::VectorXcd k1 = mi * (H * psi);
        Eigen::VectorXcd k2 = mi * (H * (psi + (h / 2) * k1).eval());
        Eigen::VectorXcd k3 = mi * (H * (psi + (h / 2) * k2).eval());
        Eigen::VectorXcd k4 = mi * (H * (psi + h * k3).eval());
        psi += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    if (std::abs(psi.norm() - 1.0) > kRk4NormTol)
        throw numeric_abort("RK4 norm drift exceeded 1e-6; reduce dt");
    return psi;
}

}  // namespace

Eigen::VectorXcd Propagator::at_time(const Eigen::VectorXcd& psi0, double t) const {
    if (psi0.size() != H_.rows()) throw std::invalid_argument("evolve: dimension mismatch");
    if (method_ == Method::ED) {
        Eigen::VectorXcd c = evecs_.adjoint() * psi0;
        for (Eigen::Index k = 0; k < evals_.size(); ++k) c[k] *= std::polar(1.0, -evals_[k] * t);
        return evecs_ * c;
    }
    return rk4_span(H_, psi0, t, dt_);
}

Eigen::VectorXcd Propagator::step(const Eigen::VectorXcd& psi, double dt_total) const {
    if (dt_total == 0.0) return psi;
    if (method_ == Method::ED) return at_time(psi, dt_total);
    return rk4_span(H_, psi, dt_total, dt_);
}

std::vector<Eigen::VectorXcd> evolve_states(const Propagator& prop, const Eigen::VectorXcd& psi0,
                                            const std::vector<double>& sample_times) {
    std::vector<Eigen::VectorXcd> out;
    out.reserve(sample_times.size());
    if (prop.method() == Method::ED) {
        for (double t : sample_times) out.push_back(prop.at_time(psi0, t));
    } else {
        Eigen::VectorXcd psi = psi0;
        double tcur = 0;
        for (double t : sample_times) {
            if (t < tcur) throw std::invalid_argument("evolve: sample times must be nondecreasing");
            psi = prop.step(psi, t - tcur);
            tcur = t;
            out.push_back(psi);
        }
    }
    return out;
}

TimeSeries evolve(const Propagator& prop, const Eigen::VectorXcd& psi0,
                  const std::vector<double>& sample_times,
                  const std::vector<NamedObservable>& observables, bool with_fidelity) {
    auto snaps = evolve_states(prop, psi0, sample_times);
    TimeSeries ts;
    ts.times = sample_times;
    if (with_fidelity) ts.add_column("fidelity") = fidelity_series(psi0, snaps);
    for (auto& no : observables) {
        auto& col = ts.add_column(no.name);
        col.reserve(snaps.size());
        for (auto& psi : snaps) col.push_back(real_expectation(psi, no.op));
    }
    ts.meta["method"] = prop.method() == Method::ED ? "ed" : "rk4";
    if (prop.method() == Method::RK4) ts.meta["dt"] = prop.dt();
    if (prop.fell_back_to_rk4()) ts.meta["note"] = "ED cap exceeded; fell back to RK4";
    return ts;
}

std::vector<double> fidelity_series(const Eigen::VectorXcd& psi0,
                                    const std::vector<Eigen::VectorXcd>& snapshots) {
    std::vector<double> out;
    out.reserve(snapshots.size());
    for (auto& psi : snapshots) {
        double f = std::norm(psi0.dot(psi));
        out.push_back(std::min(1.0, f));
    }
    return out;
}

Eigen::VectorXcd fock_vector(std::size_t dim, std::size_t index) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index(dim));
    v[Eigen::Index(index)] = 1.0;
    return v;
}

double real_expectation(const Eigen::VectorXcd& psi, const SparseOperator& op) {
    return psi.dot(op.mat * psi).real();
}

}  // namespace rydl
