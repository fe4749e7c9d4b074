#include "frex/semilinear.hpp"

#include <cmath>
#include <limits>

#include "frex/errors.hpp"
#include "frex/field_ops.hpp"
#include "frex/kernels.hpp"
#include "frex/spectral.hpp"

namespace frex::semilinear {

namespace {

using exchanger::KernelFactors;
using exchanger::StatePair;
using kernels::cdouble;

bool near_integer(double r) { return std::abs(r - std::round(r)) < 1e-12; }

struct StepStatus {
    bool ok = true;
    bool overflow = false;
};

// Spectral-state stepper. Keeps (u_hat, v_hat) as the primary unknowns and
// physical mirrors for norms and the pointwise nonlinearity; one advance()
// costs 6 transforms plus 4 more when dealiasing of integer powers is on.
class Stepper {
public:
    Stepper(const GridSpec& grid, const SemilinearParams& params, const SolverConfig& config,
            double dt, const RealField& u_init, const RealField& v_init)
        : grid_(grid), params_(params), config_(config), dt_(dt) {
        heat_ = spectral::heat_multiplier(grid, params.exchanger.sigma, dt);
        factors_ = exchanger::kernel_factors(dt, params.exchanger);
        if (config.dealias) mask_ = spectral::dealias_mask(grid);
        u_ = u_init;
        v_ = v_init;
        uh_ = spectral::forward_transform(u_).coeffs;
        vh_ = spectral::forward_transform(v_).coeffs;
        t_ = 0.0;
        const std::size_t n = grid.total_points();
        su_.resize(n);
        sv_.resize(n);
        nu_hat_.resize(n);
        nv_hat_.resize(n);
        pu_.resize(n);
        pv_.resize(n);
        work_.values.resize(n);
        work_.grid = grid;
    }

    double time() const { return t_; }
    const RealField& u() const { return u_; }
    const RealField& v() const { return v_; }
    std::span<const cdouble> u_hat() const { return uh_; }
    std::span<const cdouble> v_hat() const { return vh_; }

    StepStatus advance(std::size_t step_index) {
        const auto& f = factors_;
        kernels::exchanger_combine(su_, sv_, uh_, vh_, heat_, f.a0u, f.a1u, f.a0v, f.a1v);

        if (!config_.nonlinearity_enabled) {
            uh_ = su_;
            vh_ = sv_;
            return refresh_physical(step_index);
        }

        // N(U) from the current state, S(dt)N(U), predictor, N(predictor).
        if (!eval_nonlinearity(uh_, vh_, nu_hat_, nv_hat_)) return StepStatus{false, true};
        kernels::exchanger_combine(nu_hat_, nv_hat_, nu_hat_, nv_hat_, heat_, f.a0u, f.a1u,
                                   f.a0v, f.a1v);
        kernels::axpy(pu_, su_, nu_hat_, dt_);
        kernels::axpy(pv_, sv_, nv_hat_, dt_);
        if (!eval_nonlinearity(pu_, pv_, pu_, pv_)) return StepStatus{false, true};
        kernels::axpy2(uh_, su_, nu_hat_, pu_, 0.5 * dt_);
        kernels::axpy2(vh_, sv_, nv_hat_, pv_, 0.5 * dt_);
        return refresh_physical(step_index);
    }

private:
    // out_u/out_v = transforms of u^p, v^q evaluated from the spectral pair
    // (in_u, in_v). Integer exponents get the two-thirds truncation both on
    // the way in and on the way out; non-integer powers are evaluated on the
    // untruncated field and only the product is truncated.
    bool eval_nonlinearity(std::span<const cdouble> in_u, std::span<const cdouble> in_v,
                           std::vector<cdouble>& out_u, std::vector<cdouble>& out_v) {
        if (!to_physical(in_u, params_.p, work_)) return false;
        if (!pointwise_power(work_, params_.p)) return false;
        out_u = spectral::forward_transform(work_).coeffs;
        if (!to_physical(in_v, params_.q, work_)) return false;
        if (!pointwise_power(work_, params_.q)) return false;
        out_v = spectral::forward_transform(work_).coeffs;
        if (config_.dealias) {
            kernels::apply_mask(out_u, mask_);
            kernels::apply_mask(out_v, mask_);
        }
        return true;
    }

    bool to_physical(std::span<const cdouble> coeffs, double r, RealField& out) {
        SpectralField tmp(grid_);
        tmp.coeffs.assign(coeffs.begin(), coeffs.end());
        if (config_.dealias && near_integer(r)) kernels::apply_mask(tmp.coeffs, mask_);
        out = spectral::inverse_transform(tmp);
        return true;
    }

    bool pointwise_power(RealField& w, double r) {
        if (params_.convention == Nonlin::plain_power) {
            bool negative = false;
            bool ok = kernels::pow_plain(w.values, w.values, r, negative);
            if (negative)
                throw std::domain_error(
                    "nonlinearity: plain_power applied to a field with negative entries");
            return ok;
        }
        return kernels::pow_signed(w.values, w.values, r);
    }

    StepStatus refresh_physical(std::size_t step_index) {
        SpectralField tmp(grid_);
        tmp.coeffs = uh_;
        u_ = spectral::inverse_transform(tmp);
        tmp.coeffs = vh_;
        v_ = spectral::inverse_transform(tmp);
        t_ = static_cast<double>(step_index) * dt_;
        return StepStatus{};
    }

    GridSpec grid_;
    SemilinearParams params_;
    SolverConfig config_;
    double dt_;
    double t_ = 0.0;
    std::vector<double> heat_;
    KernelFactors factors_{};
    std::vector<unsigned char> mask_;
    std::vector<cdouble> uh_, vh_, su_, sv_, nu_hat_, nv_hat_, pu_, pv_;
    RealField u_, v_, work_;
};

struct RunResult {
    bool blowup = false;
    bool aborted = false;
    bool underresolved = false;
    double detect_time = 0.0;
    std::string abort_reason;
};

double spectral_tail_ratio(std::span<const cdouble> uh, std::span<const cdouble> vh,
                           std::span<const unsigned char> keep_mask) {
    double peak = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < uh.size(); ++i) {
        double a = std::max(std::abs(uh[i]), std::abs(vh[i]));
        peak = std::max(peak, a);
        if (!keep_mask[i]) tail = std::max(tail, a);
    }
    return peak > 0.0 ? tail / peak : 0.0;
}

// One integration pass at a fixed dt. When record is false only the
// detection machinery runs (used by the dt-refinement passes).
RunResult run_once(const SemilinearParams& params, const SolverConfig& config, double dt,
                   const RealField& u0, const RealField& v0, bool record, Trajectory* traj) {
    RunResult res;
    const GridSpec& grid = u0.grid;
    RealField ui = fields::scaled(u0, params.epsilon);
    RealField vi = fields::scaled(v0, params.epsilon);
    Stepper st(grid, params, config, dt, ui, vi);
    auto tail_mask = spectral::dealias_mask(grid);  // top third = tail probe

    auto record_norms = [&](double t, const RealField& u, const RealField& v) {
        if (!record) return;
        const GridSpec& g = u.grid;
        traj->norms.record(t, spectral::lm_norm_raw(g, u.values, 1.0),
                           spectral::lm_norm_raw(g, u.values, 2.0),
                           spectral::lm_norm_raw(g, u.values,
                                                 std::numeric_limits<double>::infinity()),
                           spectral::lm_norm_raw(g, v.values, 1.0),
                           spectral::lm_norm_raw(g, v.values, 2.0),
                           spectral::lm_norm_raw(g, v.values,
                                                 std::numeric_limits<double>::infinity()),
                           spectral::mass(u), spectral::mass(v));
    };

    record_norms(0.0, st.u(), st.v());
    if (record) traj->snapshots.push_back(exchanger::StatePair{0.0, st.u(), st.v()});

    const double amp0 =
        kernels::max_abs(st.u().values) + kernels::max_abs(st.v().values);
    bool checkpoint_done = amp0 == 0.0;  // zero data never grows
    const std::size_t steps =
        static_cast<std::size_t>(std::ceil(config.t_max / dt - 1e-9));

    for (std::size_t k = 1; k <= steps; ++k) {
        StepStatus status;
        try {
            status = st.advance(k);
        } catch (const SymmetryError& e) {
            res.aborted = true;
            res.abort_reason = e.what();
            return res;
        } catch (const SymbolError& e) {
            res.aborted = true;
            res.abort_reason = e.what();
            return res;
        } catch (const std::domain_error& e) {
            // plain_power meeting a negative state mid-run
            res.aborted = true;
            res.abort_reason = e.what();
            return res;
        }
        const double t = static_cast<double>(k) * dt;
        if (status.overflow || !kernels::all_finite(st.u().values) ||
            !kernels::all_finite(st.v().values)) {
            res.blowup = true;
            res.detect_time = t;
            return res;
        }
        record_norms(t, st.u(), st.v());
        double amp = kernels::max_abs(st.u().values) + kernels::max_abs(st.v().values);
        if (!checkpoint_done && amp >= 10.0 * amp0) {
            res.underresolved =
                spectral_tail_ratio(st.u_hat(), st.v_hat(), tail_mask) > 1e-3;
            checkpoint_done = true;
        }
        if (amp > config.blowup_threshold) {
            res.blowup = true;
            res.detect_time = t;
            if (record)
                traj->snapshots.push_back(exchanger::StatePair{t, st.u(), st.v()});
            return res;
        }
        if (record && k % static_cast<std::size_t>(config.snapshot_stride) == 0)
            traj->snapshots.push_back(exchanger::StatePair{t, st.u(), st.v()});
    }
    if (record && traj->snapshots.back().t < static_cast<double>(steps) * dt)
        traj->snapshots.push_back(
            exchanger::StatePair{static_cast<double>(steps) * dt, st.u(), st.v()});
    return res;
}

}  // namespace

RealField nonlinearity(const RealField& w, double r, Nonlin convention) {
    if (w.diverged || !kernels::all_finite(w.values))
        throw DivergedInputError("nonlinearity: field contains non-finite values");
    RealField out(w.grid);
    if (convention == Nonlin::plain_power) {
        bool negative = false;
        bool ok = kernels::pow_plain(out.values, w.values, r, negative);
        if (negative)
            throw std::domain_error(
                "nonlinearity: plain_power requires a nonnegative field");
        out.diverged = !ok;
    } else {
        out.diverged = !kernels::pow_signed(out.values, w.values, r);
    }
    return out;
}

exchanger::StatePair step(const exchanger::StatePair& state, double dt,
                          const SemilinearParams& params, const SolverConfig& config) {
    params.validate();
    if (!(dt > 0.0)) throw std::domain_error("step: dt must be > 0");
    if (state.diverged()) throw DivergedInputError("step: state is diverged");
    fields::require_same_grid(state.u, state.v, "step");

    Stepper st(state.u.grid, params, config, dt, state.u, state.v);
    StepStatus status = st.advance(1);
    exchanger::StatePair next;
    next.t = state.t + dt;
    next.u = st.u();
    next.v = st.v();
    if (status.overflow) {
        next.u.diverged = true;
        next.v.diverged = true;
    }
    return next;
}

Trajectory simulate(const SemilinearParams& params, const SolverConfig& config,
                    const RealField& u0, const RealField& v0) {
    params.validate();
    config.validate();
    u0.grid.validate();
    fields::require_same_grid(u0, v0, "simulate");
    if (!kernels::all_finite(u0.values) || !kernels::all_finite(v0.values))
        throw DivergedInputError("simulate: initial data contains non-finite values");

    Trajectory traj;
    traj.params = params;
    traj.config = config;
    traj.dt_used = config.dt;

    RunResult base = run_once(params, config, config.dt, u0, v0, true, &traj);
    traj.underresolved = base.underresolved;
    if (base.aborted) {
        traj.outcome = Outcome::aborted;
        traj.abort_reason = base.abort_reason;
        return traj;
    }
    if (!base.blowup) {
        traj.outcome = Outcome::completed;
        return traj;
    }

    traj.outcome = Outcome::blowup;
    traj.blowup_time_base = base.detect_time;
    RunResult half = run_once(params, config, config.dt / 2.0, u0, v0, false, nullptr);
    RunResult quarter = run_once(params, config, config.dt / 4.0, u0, v0, false, nullptr);
    if (half.blowup && quarter.blowup) {
        traj.blowup_time = quarter.detect_time;
        traj.dt_used = config.dt / 4.0;
        traj.refinement_agreed =
            std::abs(half.detect_time - quarter.detect_time) <= 0.02 * quarter.detect_time;
        traj.underresolved = traj.underresolved || quarter.underresolved;
    } else {
        // refinement escaped the horizon; keep the base detection but say so
        traj.blowup_time = base.detect_time;
        traj.refinement_agreed = false;
    }
    return traj;
}

double duhamel_residual(const Trajectory& traj, FieldChoice which, double m) {
    if (traj.outcome != Outcome::completed)
        throw std::invalid_argument("duhamel_residual: trajectory did not complete");
    const double interval = traj.config.dt * traj.config.snapshot_stride;
    if (interval > 0.1 + 1e-12)
        throw InsufficientDataError(
            "duhamel_residual: snapshot interval " + std::to_string(interval) +
            " too coarse; need stride*dt <= 0.1");
    const auto& snaps = traj.snapshots;
    if (snaps.size() < 2)
        throw InsufficientDataError("duhamel_residual: need at least two snapshots");

    const GridSpec& grid = snaps[0].u.grid;
    const auto& ex = traj.params.exchanger;
    const std::size_t npts = grid.total_points();
    const std::size_t count = snaps.size();

    auto xi2 = spectral::xi_squared_table(grid);
    std::vector<double> sym(npts);
    for (std::size_t i = 0; i < npts; ++i)
        sym[i] = xi2[i] == 0.0 ? 0.0 : std::pow(xi2[i], ex.sigma);

    SpectralField u0h = spectral::forward_transform(snaps[0].u);
    SpectralField v0h = spectral::forward_transform(snaps[0].v);

    // transforms of u^p, v^q at every snapshot (zero under the linear hook)
    std::vector<std::vector<cdouble>> fp(count), gq(count);
    if (traj.config.nonlinearity_enabled) {
        for (std::size_t j = 0; j < count; ++j) {
            fp[j] = spectral::forward_transform(
                        nonlinearity(snaps[j].u, traj.params.p, traj.params.convention))
                        .coeffs;
            gq[j] = spectral::forward_transform(
                        nonlinearity(snaps[j].v, traj.params.q, traj.params.convention))
                        .coeffs;
        }
    }

    const bool want_u = which == FieldChoice::u;
    double worst = 0.0;
    std::vector<cdouble> accum(npts);
    for (std::size_t k = 1; k < count; ++k) {
        const double t = snaps[k].t;
        KernelFactors fk = exchanger::kernel_factors(t, ex);
        double a0 = want_u ? fk.a0u : fk.a0v;
        double a1 = want_u ? fk.a1u : fk.a1v;
        for (std::size_t i = 0; i < npts; ++i) {
            double h = std::exp(-sym[i] * t);
            accum[i] = h * (a0 * u0h.coeffs[i] + a1 * v0h.coeffs[i]);
        }
        if (traj.config.nonlinearity_enabled) {
            for (std::size_t j = 0; j <= k; ++j) {
                double w_lo = j > 0 ? snaps[j].t - snaps[j - 1].t : 0.0;
                double w_hi = j < k ? snaps[j + 1].t - snaps[j].t : 0.0;
                double weight = 0.5 * (w_lo + w_hi);
                double lag = t - snaps[j].t;
                KernelFactors fj = exchanger::kernel_factors(lag, ex);
                double b0 = want_u ? fj.a0u : fj.a0v;
                double b1 = want_u ? fj.a1u : fj.a1v;
                for (std::size_t i = 0; i < npts; ++i) {
                    double h = std::exp(-sym[i] * lag);
                    accum[i] += weight * h * (b0 * fp[j][i] + b1 * gq[j][i]);
                }
            }
        }
        SpectralField rec(grid);
        rec.coeffs = accum;
        RealField reconstructed = spectral::inverse_transform(rec);
        const RealField& actual = want_u ? snaps[k].u : snaps[k].v;
        worst = std::max(worst,
                         spectral::lm_norm(fields::difference(actual, reconstructed), m));
    }
    return worst;
}

}  // namespace frex::semilinear
