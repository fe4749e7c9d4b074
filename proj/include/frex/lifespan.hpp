#pragma once

#include <vector>

#include "frex/analysis.hpp"
#include "frex/semilinear.hpp"

// Epsilon sweeps with blow-up detection and the lifespan scaling fits:
// sub-critical lifespans follow a power law in epsilon, critical ones an
// exponential law, super-critical data never blows up for small epsilon.

namespace frex::lifespan {

enum class Branch { subcritical, critical, supercritical };

struct Theory {
    Branch branch = Branch::supercritical;
    double exponent = 0.0;  // valid on the sub-critical branch only
};

double fujita_exponent(int n, double sigma);

/// Classifies min{p,q} against the Fujita threshold 1 + 2*sigma/n and, on
/// the sub-critical branch, evaluates the lifespan exponent
/// -(min{p,q}-1) / (1 - n/(2*sigma)(min{p,q}-1)).
Theory theory_exponent(int n, double sigma, double p, double q);

enum class EntryStatus { blowup, censored, unreliable };

struct LifespanEntry {
    double epsilon = 0.0;
    double lifespan = 0.0;  // +inf marker for censored entries
    EntryStatus status = EntryStatus::censored;
    double dt_used = 0.0;
    bool refinement_agreed = true;
    double t_cap = 0.0;  // horizon the run was allowed
};

struct LifespanTable {
    semilinear::SemilinearParams params;  // epsilon field ignored
    int dim = 1;                          // spatial dimension of the swept runs
    Theory theory;
    std::vector<LifespanEntry> entries;
};

/// Runs one simulation per epsilon (strictly decreasing list). The first
/// entry runs alone and calibrates the horizon prior; the remaining entries
/// run concurrently on up to `workers` threads. Horizons grow with the
/// predicted lifespan and are capped at hard_cap; runs that reach their cap
/// are censored.
LifespanTable sweep(const semilinear::SemilinearParams& params,
                    const semilinear::SolverConfig& config, const RealField& u0,
                    const RealField& v0, const std::vector<double>& epsilons, int workers,
                    double hard_cap);

/// log T against log eps over the uncensored entries. Requires at least 4
/// of them spanning a factor >= 4 in epsilon.
analysis::FitResult fit_lifespan_subcritical(const LifespanTable& table);

/// log T against eps^(-2*sigma/n); the slope estimates the constant in the
/// critical law. Requires the critical branch exactly.
analysis::FitResult fit_lifespan_critical(const LifespanTable& table);

}  // namespace frex::lifespan
