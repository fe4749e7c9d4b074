// Acceptance suite: one function per criterion, one PASS/FAIL line each.
// Usage: acceptance [criterion ...]; no arguments runs everything.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "frex/analysis.hpp"
#include "frex/field_ops.hpp"
#include "frex/lifespan.hpp"
#include "frex/spectral.hpp"

namespace sp = frex::spectral;
namespace ex = frex::exchanger;
namespace sl = frex::semilinear;
namespace an = frex::analysis;
namespace lf = frex::lifespan;
using frex::FieldChoice;
using frex::GridSpec;
using frex::RealField;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Result {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? " ok" : " FAILED");
    }
};

RealField gaussian(const GridSpec& g, double width = 1.0, double amp = 1.0) {
    RealField f(g);
    frex::for_each_index(g, [&](std::size_t i, const std::array<int, 3>& idx) {
        double r2 = 0.0;
        for (int d = 0; d < g.dim; ++d) {
            double x = g.coordinate(idx[d]);
            r2 += x * x;
        }
        f.values[i] = amp * std::exp(-r2 / (width * width));
    });
    return f;
}

RealField constant(const GridSpec& g, double c) {
    RealField f(g);
    for (double& v : f.values) v = c;
    return f;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---- criterion 1: exact single-mode propagation --------------------------

Result criterion1() {
    Result r;
    GridSpec g{1, 64, kPi};
    ex::ExchangerParams params{1.0, 2.0, 1.0};
    RealField u0(g), v0(g);
    for (int j = 0; j < g.points_per_axis; ++j) u0.values[j] = std::cos(g.coordinate(j));

    for (double t : {0.1, 1.0, 10.0}) {
        auto s = ex::linear_propagate(ex::StatePair{0.0, u0, v0}, t, params);
        auto uh = sp::forward_transform(s.u);
        auto vh = sp::forward_transform(s.v);
        double heat = std::exp(-t);  // |xi| = 1 at mode 1
        double decay = std::exp(-3.0 * t);
        double expect_u = heat * (1.0 + 2.0 * decay) / 3.0 * g.half_length;
        double expect_v = heat * (2.0 - 2.0 * decay) / 3.0 * g.half_length;
        double eu = std::abs(uh.coeffs[1].real() - expect_u) / std::abs(expect_u);
        double ev = std::abs(vh.coeffs[1].real() - expect_v) / std::abs(expect_v);
        r.require(eu <= 1e-10 && ev <= 1e-10,
                  "t=" + fmt(t) + " rel err (" + fmt(eu) + ", " + fmt(ev) + ") <= 1e-10");
    }
    return r;
}

// ---- criterion 2: conservation laws ---------------------------------------

Result criterion2() {
    Result r;
    GridSpec g{1, 512, 40.0};
    ex::ExchangerParams params{1.0, 2.0, 1.0};
    RealField u0 = gaussian(g);
    RealField v0 = gaussian(g, 1.5, 0.5);
    double mass0 = sp::mass(u0) + sp::mass(v0);
    double skew0 = params.mu * sp::mass(u0) - params.nu * sp::mass(v0);

    ex::StatePair s{0.0, u0, v0};
    double worst_mass = 0.0, worst_skew = 0.0;
    for (int k = 0; k < 40; ++k) {
        s = ex::linear_propagate(s, 0.25, params);
        double m = sp::mass(s.u) + sp::mass(s.v);
        double skew = params.mu * sp::mass(s.u) - params.nu * sp::mass(s.v);
        worst_mass = std::max(worst_mass, std::abs(m - mass0) / std::abs(mass0));
        double expect = std::exp(-(params.mu + params.nu) * s.t) * skew0;
        worst_skew = std::max(worst_skew, std::abs(skew - expect) / std::abs(skew0));
    }
    r.require(worst_mass <= 1e-10, "mass drift " + fmt(worst_mass) + " <= 1e-10");
    r.require(worst_skew <= 1e-8, "skew error " + fmt(worst_skew) + " <= 1e-8");
    return r;
}

// ---- criterion 3: kernel scaling table ------------------------------------

Result criterion3() {
    Result r;
    GridSpec g{1, 8192, 1000.0};
    double worst = 0.0;
    for (double sigma : {0.5, 1.0, 1.5}) {
        double t = std::pow(8.0 * g.spacing(), 2.0 * sigma);
        for (double s : {0.0, 2.0 * sigma}) {
            for (double m : {1.0, 2.0, kInf}) {
                auto res = sp::kernel_scaling_ratio(s, sigma, m, t, 4.0, g);
                worst = std::max(worst, std::abs(res.ratio / res.predicted - 1.0));
            }
        }
    }
    r.require(worst <= 0.02, "worst scaling deviation " + fmt(worst) + " <= 2%");
    return r;
}

// ---- criterion 4: closed-form kernels -------------------------------------

Result criterion4() {
    Result r;
    {
        GridSpec g{1, 2048, 40.0};
        RealField G = sp::heat_kernel_field(1.0, g, 1.0);
        double worst = 0.0;
        for (int j = 0; j < g.points_per_axis; ++j) {
            double x = g.coordinate(j);
            double exact = std::exp(-x * x / 4.0) / std::sqrt(4.0 * kPi);
            worst = std::max(worst, std::abs(G.values[j] - exact));
        }
        r.require(worst <= 1e-6, "gaussian kernel max error " + fmt(worst) + " <= 1e-6");
    }
    {
        GridSpec g{1, 8192, 200.0};
        RealField P = sp::heat_kernel_field(1.0, g, 0.5);
        double worst = 0.0;
        for (int j = 0; j < g.points_per_axis; ++j) {
            double x = g.coordinate(j);
            if (std::abs(x) > g.half_length / 2) continue;
            double exact = (1.0 / kPi) / (1.0 + x * x);
            worst = std::max(worst, std::abs(P.values[j] - exact));
        }
        r.require(worst <= 1e-4, "poisson kernel max error " + fmt(worst) + " <= 1e-4");
    }
    return r;
}

// ---- criterion 5: ODE blow-up oracle --------------------------------------

Result criterion5() {
    Result r;
    GridSpec g{1, 32, 2.0};
    sl::SemilinearParams params;
    params.exchanger = ex::ExchangerParams{1.0, 1.0, 1.0};
    params.p = 2;
    params.q = 2;
    params.epsilon = 1.0;
    sl::SolverConfig cfg;
    cfg.dt = 0.01;
    cfg.t_max = 4.0;
    auto traj = sl::simulate(params, cfg, constant(g, 1.0), constant(g, 1.0));
    r.require(traj.outcome == sl::Outcome::blowup, "blow-up detected");
    if (traj.outcome == sl::Outcome::blowup) {
        double err = std::abs(traj.blowup_time - 1.0);
        r.require(err <= 0.02, "detected T " + fmt(traj.blowup_time) + " within 2% of 1.0");
        r.require(traj.refinement_agreed, "dt refinements agree within 2%");
    }
    return r;
}

// ---- criteria 6-8 share one super-critical reference run ------------------

struct ReferenceRun {
    sl::Trajectory traj;
    GridSpec grid;
};

const ReferenceRun& reference_run() {
    static ReferenceRun run = [] {
        ReferenceRun rr;
        rr.grid = GridSpec{1, 8192, 256.0};
        sl::SemilinearParams params;
        params.exchanger = ex::ExchangerParams{1.0, 1.0, 1.0};
        params.p = 4;
        params.q = 4;
        params.epsilon = 0.1;
        sl::SolverConfig cfg;
        cfg.dt = 0.05;
        cfg.t_max = 500.0;
        cfg.snapshot_stride = 50;  // snapshot every 2.5 time units
        rr.traj = sl::simulate(params, cfg, gaussian(rr.grid), gaussian(rr.grid));
        return rr;
    }();
    return run;
}

Result criterion6() {
    Result r;
    const auto& rr = reference_run();
    r.require(rr.traj.outcome == sl::Outcome::completed, "run completed");
    if (rr.traj.outcome != sl::Outcome::completed) return r;

    auto fit_inf = an::fit_decay_rate(rr.traj.norms, FieldChoice::u, kInf, 50.0, 500.0);
    auto fit_l2 = an::fit_decay_rate(rr.traj.norms, FieldChoice::u, 2.0, 50.0, 500.0);
    auto fit_l1 = an::fit_decay_rate(rr.traj.norms, FieldChoice::u, 1.0, 50.0, 500.0);
    r.require(std::abs(fit_inf.slope - (-0.5)) <= 0.05,
              "Linf slope " + fmt(fit_inf.slope) + " = -0.5 +- 10%");
    r.require(std::abs(fit_l2.slope - (-0.25)) <= 0.025,
              "L2 slope " + fmt(fit_l2.slope) + " = -0.25 +- 10%");
    r.require(std::abs(fit_l1.slope) <= 0.05, "L1 slope " + fmt(fit_l1.slope) + " = 0 +- 0.05");
    return r;
}

Result criterion7() {
    Result r;
    const auto& rr = reference_run();
    r.require(rr.traj.outcome == sl::Outcome::completed, "run completed");
    if (rr.traj.outcome != sl::Outcome::completed) return r;

    auto rep = an::profile_error(rr.traj, FieldChoice::u, kInf);
    double mid = an::median_scaled_error(rep, 25.0, 125.0);
    double late = an::median_scaled_error(rep, 125.0, 500.0);
    r.require(late < 0.5 * mid,
              "late median " + fmt(late) + " < 0.5 * " + fmt(mid));
    r.require(rep.nl_mass_tail < 0.1 * std::abs(rep.nl_mass),
              "tail bound " + fmt(rep.nl_mass_tail) + " < 10% of P " + fmt(rep.nl_mass));
    return r;
}

Result criterion8() {
    Result r;
    const auto& rr = reference_run();
    r.require(rr.traj.outcome == sl::Outcome::completed, "run completed");
    if (rr.traj.outcome != sl::Outcome::completed) return r;

    auto ts = an::l2_two_sided(rr.traj, FieldChoice::u);
    r.require(!ts.degenerate, "combined mass nonzero");
    double lo = kInf, hi = 0.0;
    for (std::size_t i = 0; i < ts.times.size(); ++i) {
        if (ts.times[i] < 100.0) continue;
        double ratio = ts.measured_scaled[i] / ts.predicted_scaled[i];
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    r.require(lo >= 0.9 && hi <= 1.1,
              "scaled L2 ratio in [" + fmt(lo) + ", " + fmt(hi) + "] for t >= 100");
    return r;
}

// ---- criterion 9: Duhamel residual second order ----------------------------

Result criterion9() {
    Result r;
    GridSpec g{1, 256, 32.0};
    sl::SemilinearParams params;
    params.exchanger = ex::ExchangerParams{1.0, 1.0, 1.0};
    params.p = 4;
    params.q = 4;
    params.epsilon = 0.5;
    sl::SolverConfig coarse;
    coarse.dt = 0.02;
    coarse.t_max = 1.0;
    coarse.snapshot_stride = 5;
    RealField u0 = gaussian(g), v0 = gaussian(g, 1.4, 0.6);
    auto t1 = sl::simulate(params, coarse, u0, v0);
    sl::SolverConfig fine = coarse;  // same stride: the snapshot interval halves too
    fine.dt = coarse.dt / 2;
    auto t2 = sl::simulate(params, fine, u0, v0);
    double r1 = std::max(sl::duhamel_residual(t1, FieldChoice::u, 2.0),
                         sl::duhamel_residual(t1, FieldChoice::v, 2.0));
    double r2 = std::max(sl::duhamel_residual(t2, FieldChoice::u, 2.0),
                         sl::duhamel_residual(t2, FieldChoice::v, 2.0));
    double ratio = r2 / r1;
    r.require(ratio >= 0.2 && ratio <= 0.35,
              "residual ratio " + fmt(ratio) + " in [0.2, 0.35] (r1 " + fmt(r1) + ")");
    return r;
}

// ---- criterion 10: sub-critical lifespan law -------------------------------

Result criterion10() {
    Result r;
    GridSpec g{1, 2048, 256.0};
    sl::SemilinearParams params;
    params.exchanger = ex::ExchangerParams{1.0, 1.0, 1.0};
    params.p = 2;
    params.q = 2;
    sl::SolverConfig cfg;
    cfg.dt = 0.2;
    cfg.t_max = 100.0;
    std::vector<double> eps = {0.2, 0.1, 0.05, 0.025, 0.0125};
    auto table = lf::sweep(params, cfg, gaussian(g), gaussian(g), eps, 4, 2e5);
    std::string lifespans;
    for (const auto& e : table.entries) {
        lifespans += " " + fmt(e.lifespan);
        r.require(e.status != lf::EntryStatus::censored,
                  "eps " + fmt(e.epsilon) + " blow-up detected");
    }
    auto fit = lf::fit_lifespan_subcritical(table);
    r.require(std::abs(fit.slope - (-2.0)) <= 0.3,
              "slope " + fmt(fit.slope) + " = -2 +- 15% (T:" + lifespans + ")");
    r.require(fit.r_squared >= 0.98, "r2 " + fmt(fit.r_squared) + " >= 0.98");
    return r;
}

// ---- criterion 11: critical lifespan law -----------------------------------

Result criterion11() {
    Result r;
    GridSpec g{1, 2048, 256.0};
    sl::SemilinearParams params;
    params.exchanger = ex::ExchangerParams{1.0, 1.0, 1.0};
    params.p = 3;
    params.q = 3;
    sl::SolverConfig cfg;
    cfg.dt = 0.025;  // the largest eps blows up near t = 1.3; refinement needs headroom
    cfg.t_max = 50.0;
    std::vector<double> eps = {0.6, 0.48, 0.4, 0.34, 0.3};
    auto table = lf::sweep(params, cfg, gaussian(g, 1.0, 2.0), gaussian(g, 1.0, 2.0), eps, 4, 2e4);
    std::string lifespans;
    for (const auto& e : table.entries) {
        lifespans += " " + fmt(e.lifespan);
        r.require(e.status != lf::EntryStatus::censored,
                  "eps " + fmt(e.epsilon) + " blow-up detected");
    }
    auto fit = lf::fit_lifespan_critical(table);
    r.require(fit.slope > 0.0, "slope " + fmt(fit.slope) + " > 0 (T:" + lifespans + ")");
    r.require(fit.r_squared >= 0.9, "r2 " + fmt(fit.r_squared) + " >= 0.9");
    return r;
}

// ---- criterion 12: vanishing linear profile error --------------------------

Result criterion12() {
    Result r;
    GridSpec g{1, 256, 30.0};
    ex::ExchangerParams params{1.0, 2.0, 1.0};
    RealField u0 = gaussian(g);
    RealField v0 = frex::fields::scaled(u0, 2.0);  // mu u0 = nu v0

    std::vector<ex::StatePair> states{ex::StatePair{0.0, u0, v0}};
    for (int k = 0; k < 10; ++k)
        states.push_back(ex::linear_propagate(states.back(), 0.5, params));
    auto series = ex::error_vs_profile(states, kInf, params, u0, v0);
    double worst = 0.0;
    for (std::size_t i = 0; i < series.times.size(); ++i)
        worst = std::max({worst, series.err_u[i], series.err_v[i]});
    r.require(worst <= 1e-8, "max profile error " + fmt(worst) + " <= 1e-8");
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    const std::map<int, std::pair<const char*, std::function<Result()>>> criteria = {
        {1, {"exact linear oracle", criterion1}},
        {2, {"conservation suite", criterion2}},
        {3, {"kernel scaling", criterion3}},
        {4, {"closed-form kernels", criterion4}},
        {5, {"ODE blow-up oracle", criterion5}},
        {6, {"super-critical decay rates", criterion6}},
        {7, {"profile convergence", criterion7}},
        {8, {"two-sided L2", criterion8}},
        {9, {"Duhamel residual order", criterion9}},
        {10, {"sub-critical lifespan law", criterion10}},
        {11, {"critical lifespan law", criterion11}},
        {12, {"vanishing linear profile", criterion12}},
    };

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    if (selected.empty())
        for (const auto& [num, _] : criteria) selected.push_back(num);

    bool all_ok = true;
    for (int num : selected) {
        auto it = criteria.find(num);
        if (it == criteria.end()) {
            std::printf("FAIL criterion %d: unknown criterion\n", num);
            all_ok = false;
            continue;
        }
        Result res = it->second.second();
        std::printf("%s criterion %d: %s: %s\n", res.pass ? "PASS" : "FAIL", num,
                    it->second.first, res.detail.c_str());
        all_ok = all_ok && res.pass;
    }
    return all_ok ? 0 : 1;
}
