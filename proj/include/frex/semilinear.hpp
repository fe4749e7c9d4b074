#pragma once

#include <string>
#include <vector>

#include "frex/exchanger.hpp"
#include "frex/norm_series.hpp"

// Time integration of the semilinear system
//   u_t + (-Lap)^sigma u + mu*u - nu*v = u^p
//   v_t + (-Lap)^sigma v - mu*u + nu*v = v^q
// by an exponential Heun scheme: the coupled linear flow is applied exactly
// per Fourier mode, only the nonlinear Duhamel term is approximated.

namespace frex::semilinear {

enum class Nonlin { signed_power, plain_power };

struct SemilinearParams {
    exchanger::ExchangerParams exchanger;
    double p = 2.0;
    double q = 2.0;
    double epsilon = 1.0;  // initial data multiplier; 0 gives the zero solution
    Nonlin convention = Nonlin::signed_power;

    void validate() const {
        exchanger.validate();
        if (!(p > 1.0)) throw std::domain_error("SemilinearParams: p must be > 1");
        if (!(q > 1.0)) throw std::domain_error("SemilinearParams: q must be > 1");
        if (!(epsilon >= 0.0)) throw std::domain_error("SemilinearParams: epsilon must be >= 0");
    }
};

struct SolverConfig {
    double dt = 0.01;
    double t_max = 10.0;
    int snapshot_stride = 10;
    double blowup_threshold = 1e6;
    bool dealias = true;
    bool nonlinearity_enabled = true;  // test hook: false integrates the linear system

    void validate() const {
        if (!(dt > 0.0)) throw std::domain_error("SolverConfig: dt must be > 0");
        if (!(dt < t_max)) throw std::domain_error("SolverConfig: dt must be < t_max");
        if (snapshot_stride < 1)
            throw std::domain_error("SolverConfig: snapshot_stride must be >= 1");
        if (!(blowup_threshold > 1.0))
            throw std::domain_error("SolverConfig: blowup_threshold must be > 1");
    }
};

enum class Outcome { completed, blowup, aborted };

struct Trajectory {
    SemilinearParams params;
    SolverConfig config;
    std::vector<exchanger::StatePair> snapshots;  // full fields every stride steps
    NormSeries norms;                             // every step
    Outcome outcome = Outcome::completed;
    double blowup_time = 0.0;       // stabilized detection time after dt refinement
    double blowup_time_base = 0.0;  // detection time of the base-dt run
    double dt_used = 0.0;           // step size behind blowup_time
    bool refinement_agreed = true;  // dt/2 and dt/4 detections within 2%
    bool underresolved = false;     // spectral tail above 1e-3 of peak while growing
    std::string abort_reason;
};

/// Pointwise power with the chosen sign convention. signed_power maps w to
/// sign(w)|w|^r; plain_power requires a nonnegative field.
RealField nonlinearity(const RealField& w, double r, Nonlin convention);

/// One predictor-corrector step of size dt from the given state.
exchanger::StatePair step(const exchanger::StatePair& state, double dt,
                          const SemilinearParams& params, const SolverConfig& config);

/// Integrates from (eps*u0, eps*v0) until t_max or blow-up. On blow-up the
/// run is repeated at dt/2 and dt/4 and the refined detection time reported.
Trajectory simulate(const SemilinearParams& params, const SolverConfig& config,
                    const RealField& u0, const RealField& v0);

/// Max over snapshot times of the L^m defect of the integral equation
///   w(t) = K0w(t)u0 + K1w(t)v0 + int_0^t (K0w(t-s)u^p + K1w(t-s)v^q) ds
/// with trapezoidal quadrature over the stored snapshots.
double duhamel_residual(const Trajectory& traj, FieldChoice which, double m);

}  // namespace frex::semilinear
