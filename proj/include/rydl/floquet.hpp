#pragma once

#include "rydl/operators.hpp"
#include "rydl/propagate.hpp"
#include "rydl/timeseries.hpp"

namespace rydl {

enum class FloquetProtocol { P0, PI, PII };
enum class ChiralityVariant { C1, C2 };  // protocol I translation choice

struct FloquetSpec {
    FloquetProtocol protocol = FloquetProtocol::PI;
    double tau = 1.0;
    double Delta = 0.0;   // protocols 0 and I
    double Delta0 = 0.5;  // protocol II half-period staggering amplitude
    double eps = 0.0;     // pi-pulse imperfection
    ChiralityVariant variant = ChiralityVariant::C1;
    int n_cycles = 10;
    int micromotion_substeps = 20;
    Method method = Method::ED;
    double dt = kDefaultDt;
};

// Micromotion plus stroboscopic fidelity and magnetization. Stroboscopic
// samples are taken at the end of each cycle after all pulses.
TimeSeries run_floquet(const ConstrainedBasis& basis, double Omega, const FloquetSpec& spec,
                       const Eigen::VectorXcd& psi0);

// dense one-cycle unitary, for operator-identity checks at small sizes
Eigen::MatrixXcd floquet_cycle_matrix(const ConstrainedBasis& basis, double Omega,
                                      const FloquetSpec& spec);

// smallest positive even m with T_x^m |s> = |s>; the protocol-I revival cycle
int revival_cycle_oracle(const ConstrainedBasis& basis, FockState s);

}  // namespace rydl
