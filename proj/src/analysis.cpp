#include "frex/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "frex/errors.hpp"
#include "frex/field_ops.hpp"
#include "frex/spectral.hpp"

namespace frex::analysis {

namespace {

double fujita(double n, double sigma) { return 1.0 + 2.0 * sigma / n; }

void require_completed_supercritical(const semilinear::Trajectory& traj, const char* what) {
    if (traj.outcome != semilinear::Outcome::completed)
        throw std::invalid_argument(std::string(what) + ": trajectory did not complete");
    const auto& p = traj.params;
    double n = traj.snapshots.empty() ? 1.0 : traj.snapshots[0].u.grid.dim;
    if (std::min(p.p, p.q) <= fujita(n, p.exchanger.sigma))
        throw std::domain_error(std::string(what) +
                                ": requires min{p,q} above the critical exponent");
}

double decay_scaling(double n, double sigma, double m) {
    return n / (2.0 * sigma) * (std::isinf(m) ? 1.0 : 1.0 - 1.0 / m);
}

}  // namespace

FitResult fit_linear(std::span<const double> x, std::span<const double> y) {
    FitResult r;
    const std::size_t n = x.size();
    if (n < 2) throw InsufficientDataError("fit_linear: need at least 2 points");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw InsufficientDataError("fit_linear: degenerate abscissa");
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    double ssr = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double e = y[i] - (r.intercept + r.slope * x[i]);
        ssr += e * e;
    }
    r.r_squared = syy > 0.0 ? std::max(0.0, 1.0 - ssr / syy) : 1.0;
    r.stderr_slope = n > 2 ? std::sqrt(ssr / (n - 2) / sxx) : 0.0;
    r.points = static_cast<int>(n);
    r.window_lo = *std::min_element(x.begin(), x.end());
    r.window_hi = *std::max_element(x.begin(), x.end());
    return r;
}

FitResult fit_decay_rate(const NormSeries& series, FieldChoice which, double m,
                         double t_lo, double t_hi) {
    const auto& values = series.column(which, m);
    std::vector<double> lx, ly;
    int filtered = 0;
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        double t = series.times[i];
        if (t < t_lo || t > t_hi || t < 1.0) continue;
        if (!(values[i] > 0.0)) {
            ++filtered;
            continue;
        }
        lx.push_back(std::log(t));
        ly.push_back(std::log(values[i]));
    }
    if (lx.size() < 8)
        throw InsufficientDataError("fit_decay_rate: fewer than 8 samples with t >= 1 in [" +
                                    std::to_string(t_lo) + ", " + std::to_string(t_hi) + "]");
    FitResult r = fit_linear(lx, ly);
    r.window_lo = t_lo;
    r.window_hi = t_hi;
    r.filtered = filtered;
    return r;
}

double trapezoid(std::span<const double> t, std::span<const double> y) {
    double acc = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i)
        acc += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
    return acc;
}

double powerlaw_tail(double y_last, double t_last, double beta) {
    if (!(beta > 1.0)) throw std::domain_error("powerlaw_tail: beta must exceed 1");
    return std::abs(y_last) * t_last / (beta - 1.0);
}

NonlinearMass nonlinear_mass(const semilinear::Trajectory& traj) {
    require_completed_supercritical(traj, "nonlinear_mass");
    if (!traj.config.nonlinearity_enabled) return NonlinearMass{};  // hooked run integrates none
    const auto& p = traj.params;
    std::vector<double> times, rates;
    for (const auto& s : traj.snapshots) {
        RealField fu = semilinear::nonlinearity(s.u, p.p, p.convention);
        RealField fv = semilinear::nonlinearity(s.v, p.q, p.convention);
        times.push_back(s.t);
        rates.push_back(spectral::mass(fu) + spectral::mass(fv));
    }
    NonlinearMass out;
    out.value = trapezoid(times, rates);
    const double n = traj.snapshots[0].u.grid.dim;
    const double beta = n / (2.0 * p.exchanger.sigma) * (std::min(p.p, p.q) - 1.0);
    out.tail_bound = times.back() > 0.0 ? powerlaw_tail(rates.back(), times.back(), beta) : 0.0;
    return out;
}

ProfileReport profile_error(const semilinear::Trajectory& traj, FieldChoice which, double m) {
    require_completed_supercritical(traj, "profile_error");
    NonlinearMass nl = nonlinear_mass(traj);

    ProfileReport rep;
    rep.order = m;
    rep.nl_mass = nl.value;
    rep.nl_mass_tail = nl.tail_bound;
    const auto& first = traj.snapshots.front();
    rep.p_mass = spectral::mass(first.u) + spectral::mass(first.v);

    const auto& ex = traj.params.exchanger;
    const GridSpec& grid = first.u.grid;
    const double gamma = which == FieldChoice::u ? ex.nu : ex.mu;
    const double coef = gamma / (ex.mu + ex.nu) * (rep.p_mass + rep.nl_mass);
    const double rate = decay_scaling(grid.dim, ex.sigma, m);

    for (const auto& s : traj.snapshots) {
        if (!(s.t > 0.0)) continue;
        RealField kernel = spectral::heat_kernel_field(s.t, grid, ex.sigma);
        const RealField& w = which == FieldChoice::u ? s.u : s.v;
        double err = spectral::lm_norm(fields::linear_combo(1.0, w, -coef, kernel), m);
        double scale = std::pow(s.t, rate);
        rep.times.push_back(s.t);
        rep.scaled_error.push_back(scale * err);
        rep.main_term.push_back(scale * std::abs(coef) * spectral::lm_norm(kernel, m));
    }
    return rep;
}

double median_scaled_error(const ProfileReport& report, double lo, double hi) {
    std::vector<double> vals;
    for (std::size_t i = 0; i < report.times.size(); ++i)
        if (report.times[i] >= lo && report.times[i] <= hi)
            vals.push_back(report.scaled_error[i]);
    if (vals.empty())
        throw InsufficientDataError("median_scaled_error: no snapshots in window");
    std::sort(vals.begin(), vals.end());
    std::size_t n = vals.size();
    return n % 2 ? vals[n / 2] : 0.5 * (vals[n / 2 - 1] + vals[n / 2]);
}

L2TwoSided l2_two_sided(const semilinear::Trajectory& traj, FieldChoice which) {
    require_completed_supercritical(traj, "l2_two_sided");
    NonlinearMass nl = nonlinear_mass(traj);

    L2TwoSided out;
    const auto& first = traj.snapshots.front();
    double p_mass = spectral::mass(first.u) + spectral::mass(first.v);
    out.combined_mass = p_mass + nl.value;
    double scale = std::max({1.0, std::abs(p_mass), std::abs(nl.value)});
    if (std::abs(out.combined_mass) <= nl.tail_bound + 1e-12 * scale) {
        out.degenerate = true;
        return out;
    }

    const auto& ex = traj.params.exchanger;
    const GridSpec& grid = first.u.grid;
    const double gamma = which == FieldChoice::u ? ex.nu : ex.mu;
    const double coef = gamma / (ex.mu + ex.nu) * std::abs(out.combined_mass);
    const double rate = grid.dim / (4.0 * ex.sigma);

    for (const auto& s : traj.snapshots) {
        if (!(s.t > 0.0)) continue;
        const RealField& w = which == FieldChoice::u ? s.u : s.v;
        double ts = std::pow(s.t, rate);
        RealField kernel = spectral::heat_kernel_field(s.t, grid, ex.sigma);
        out.times.push_back(s.t);
        out.measured_scaled.push_back(ts * spectral::lm_norm(w, 2.0));
        out.predicted_scaled.push_back(ts * coef * spectral::lm_norm(kernel, 2.0));
    }
    return out;
}

}  // namespace frex::analysis
