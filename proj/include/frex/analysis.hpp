#pragma once

#include <span>
#include <vector>

#include "frex/norm_series.hpp"
#include "frex/semilinear.hpp"

// Post-processing of trajectories: decay-rate fits, the space-time integral
// of the nonlinearity with an explicit tail bound, profile-error series and
// the two-sided L^2 comparison.

namespace frex::analysis {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    double r_squared = 0.0;
    double window_lo = 0.0, window_hi = 0.0;
    int points = 0;
    int filtered = 0;  // nonpositive values dropped before the log fit
};

/// Ordinary least squares of y against x.
FitResult fit_linear(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of log(norm) against log(t) over [t_lo, t_hi],
/// restricted to t >= 1. Requires at least 8 usable samples.
FitResult fit_decay_rate(const NormSeries& series, FieldChoice which, double m,
                         double t_lo, double t_hi);

/// Trapezoid rule over possibly nonuniform samples.
double trapezoid(std::span<const double> t, std::span<const double> y);

/// Remainder of int_{t_last}^inf C s^-beta ds with C calibrated so the
/// integrand equals y_last at t_last. Requires beta > 1.
double powerlaw_tail(double y_last, double t_last, double beta);

struct NonlinearMass {
    double value = 0.0;
    double tail_bound = 0.0;
};

/// P_{u^p + v^q}: time quadrature of mass(u^p) + mass(v^q) over the stored
/// snapshots, plus the fitted decay tail beyond t_max. Requires a completed
/// super-critical trajectory.
NonlinearMass nonlinear_mass(const semilinear::Trajectory& traj);

struct ProfileReport {
    double order = 2.0;
    std::vector<double> times;
    std::vector<double> scaled_error;  // t^{(n/2s)(1-1/m)} ||w - profile||_m
    std::vector<double> main_term;     // same scaling applied to the profile itself
    double p_mass = 0.0;               // eps * P_{u0+v0}
    double nl_mass = 0.0;              // computed P_{u^p+v^q}
    double nl_mass_tail = 0.0;
};

/// Distance to the asymptotic profile gamma/(mu+nu) G(t)(eps P + P_nl),
/// evaluated at the stored snapshot times (no interpolation).
ProfileReport profile_error(const semilinear::Trajectory& traj, FieldChoice which, double m);

/// Median of the scaled error over [lo, hi] (by snapshot time).
double median_scaled_error(const ProfileReport& report, double lo, double hi);

struct L2TwoSided {
    bool degenerate = false;
    double combined_mass = 0.0;  // eps P + P_nl
    std::vector<double> times;
    std::vector<double> measured_scaled;   // ||w(t)||_2 t^{n/(4s)}
    std::vector<double> predicted_scaled;  // gamma/(mu+nu) |combined| ||G(t)||_2 t^{n/(4s)}
};

/// Measured versus predicted scaled L^2 size; degenerate when the combined
/// mass is indistinguishable from zero at the quadrature accuracy.
L2TwoSided l2_two_sided(const semilinear::Trajectory& traj, FieldChoice which);

}  // namespace frex::analysis
