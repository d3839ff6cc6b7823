#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rydl/sparse_op.hpp"
#include "rydl/timeseries.hpp"

namespace rydl {

enum class Method { ED, RK4 };

inline constexpr std::size_t kEdDimCap = 8192;
inline constexpr double kDefaultDt = 1e-3;
inline constexpr double kRk4NormTol = 1e-6;

// Unitary propagator: either a cached eigendecomposition or a fixed-step RK4
// integrator. ED above the dimension cap falls back to RK4 with a meta note.
class Propagator {
  public:
    Propagator(const SparseOperator& H, Method method = Method::ED, double dt = kDefaultDt,
               std::size_t ed_cap = kEdDimCap);

    Method method() const { return method_; }
    double dt() const { return dt_; }
    bool fell_back_to_rk4() const { return fell_back_; }

    // psi(t) = exp(-iHt) psi0
    Eigen::VectorXcd at_time(const Eigen::VectorXcd& psi0, double t) const;

    // propagate forward by dt_total from psi (RK4 steps or ED in one shot)
    Eigen::VectorXcd step(const Eigen::VectorXcd& psi, double dt_total) const;

    const Eigen::VectorXd& evals() const;
    const Eigen::MatrixXcd& evecs() const;

    // dense exp(-iH t); needs ED
    Eigen::MatrixXcd expm(double t) const;

  private:
    SpMat H_;
    Method method_;
    double dt_;
    bool fell_back_ = false;
    Eigen::VectorXd evals_;
    Eigen::MatrixXcd evecs_;
};

// observable expectation columns along the trajectory
struct NamedObservable {
    std::string name;
    SparseOperator op;
};

TimeSeries evolve(const Propagator& prop, const Eigen::VectorXcd& psi0,
                  const std::vector<double>& sample_times,
                  const std::vector<NamedObservable>& observables = {},
                  bool with_fidelity = true);

// F(t) = |<psi0|psi(t)>|^2 for an already-sampled trajectory
std::vector<double> fidelity_series(const Eigen::VectorXcd& psi0,
                                    const std::vector<Eigen::VectorXcd>& snapshots);

std::vector<Eigen::VectorXcd> evolve_states(const Propagator& prop, const Eigen::VectorXcd& psi0,
                                            const std::vector<double>& sample_times);

Eigen::VectorXcd fock_vector(std::size_t dim, std::size_t index);

double real_expectation(const Eigen::VectorXcd& psi, const SparseOperator& op);

}  // namespace rydl
