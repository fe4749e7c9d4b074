#include "frex/lifespan.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "frex/errors.hpp"
#include "frex/exec.hpp"

namespace frex::lifespan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Temporarily force serial kernels while sweep workers own the cores.
struct SerialScope {
    Exec saved;
    explicit SerialScope(bool activate) : saved(default_exec()) {
        if (activate) set_default_exec(Exec::Serial);
    }
    ~SerialScope() { set_default_exec(saved); }
};

LifespanEntry run_entry(const semilinear::SemilinearParams& base,
                        const semilinear::SolverConfig& config, const RealField& u0,
                        const RealField& v0, double eps, double t_hint, double hard_cap) {
    LifespanEntry entry;
    entry.epsilon = eps;

    semilinear::SemilinearParams params = base;
    params.epsilon = eps;
    semilinear::SolverConfig cfg = config;
    cfg.snapshot_stride = std::numeric_limits<int>::max();  // norms only
    cfg.t_max = std::min(std::max(t_hint, config.t_max), hard_cap);

    while (true) {
        semilinear::Trajectory traj = semilinear::simulate(params, cfg, u0, v0);
        entry.t_cap = cfg.t_max;
        if (traj.outcome == semilinear::Outcome::blowup) {
            entry.lifespan = traj.blowup_time;
            entry.dt_used = traj.dt_used;
            entry.refinement_agreed = traj.refinement_agreed;
            entry.status = traj.underresolved ? EntryStatus::unreliable : EntryStatus::blowup;
            return entry;
        }
        if (traj.outcome == semilinear::Outcome::aborted)
            throw std::runtime_error("sweep: simulation aborted: " + traj.abort_reason);
        if (cfg.t_max >= hard_cap) {
            entry.lifespan = kInf;
            entry.dt_used = config.dt;
            entry.status = EntryStatus::censored;
            return entry;
        }
        cfg.t_max = std::min(2.0 * cfg.t_max, hard_cap);
    }
}

}  // namespace

double fujita_exponent(int n, double sigma) { return 1.0 + 2.0 * sigma / n; }

Theory theory_exponent(int n, double sigma, double p, double q) {
    if (!(p > 1.0) || !(q > 1.0))
        throw std::domain_error("theory_exponent: p and q must exceed 1");
    if (!(sigma > 0.0)) throw std::domain_error("theory_exponent: sigma must be > 0");
    const double pmin = std::min(p, q);
    const double pfuj = fujita_exponent(n, sigma);
    Theory t;
    if (std::abs(pmin - pfuj) <= 1e-12 * std::max(1.0, pfuj)) {
        t.branch = Branch::critical;
    } else if (pmin > pfuj) {
        t.branch = Branch::supercritical;
    } else {
        t.branch = Branch::subcritical;
        t.exponent = -(pmin - 1.0) / (1.0 - n / (2.0 * sigma) * (pmin - 1.0));
    }
    return t;
}

LifespanTable sweep(const semilinear::SemilinearParams& params,
                    const semilinear::SolverConfig& config, const RealField& u0,
                    const RealField& v0, const std::vector<double>& epsilons, int workers,
                    double hard_cap) {
    if (epsilons.empty()) throw InsufficientDataError("sweep: empty epsilon list");
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0)) throw std::domain_error("sweep: epsilons must be > 0");
        if (i > 0 && !(epsilons[i] < epsilons[i - 1]))
            throw std::domain_error("sweep: epsilons must be strictly decreasing");
    }
    if (workers < 1) workers = 1;
    if (!(hard_cap > 0.0)) throw std::domain_error("sweep: hard_cap must be > 0");

    LifespanTable table;
    table.params = params;
    const GridSpec& grid = u0.grid;
    table.dim = grid.dim;
    table.theory =
        theory_exponent(grid.dim, params.exchanger.sigma, params.p, params.q);
    table.entries.resize(epsilons.size());

    // The largest epsilon calibrates the horizon prior for the rest.
    table.entries[0] =
        run_entry(params, config, u0, v0, epsilons[0], config.t_max, hard_cap);
    const double t0 = table.entries[0].lifespan;
    const double eps0 = epsilons[0];
    const double n = grid.dim;
    const double sigma = params.exchanger.sigma;

    auto predict = [&](double eps) {
        if (!std::isfinite(t0)) return hard_cap;
        switch (table.theory.branch) {
            case Branch::subcritical:
                return t0 * std::pow(eps / eps0, table.theory.exponent);
            case Branch::critical: {
                double c = std::log(std::max(t0, 2.0)) * std::pow(eps0, 2.0 * sigma / n);
                return std::exp(c * std::pow(eps, -2.0 * sigma / n));
            }
            case Branch::supercritical:
                return config.t_max;
        }
        return config.t_max;
    };

    std::atomic<std::size_t> next{1};
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= epsilons.size()) return;
            double hint = std::min(50.0 * predict(epsilons[i]), hard_cap);
            table.entries[i] =
                run_entry(params, config, u0, v0, epsilons[i], hint, hard_cap);
        }
    };

    int nthreads = std::min<int>(workers, static_cast<int>(epsilons.size()) - 1);
    if (nthreads <= 1) {
        worker();
    } else {
        SerialScope scope(true);
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return table;
}

namespace {

std::vector<const LifespanEntry*> fit_eligible(const LifespanTable& table) {
    std::vector<const LifespanEntry*> out;
    for (const auto& e : table.entries)
        if (e.status != EntryStatus::censored && std::isfinite(e.lifespan)) out.push_back(&e);
    return out;
}

}  // namespace

analysis::FitResult fit_lifespan_subcritical(const LifespanTable& table) {
    if (table.theory.branch != Branch::subcritical)
        throw std::invalid_argument("fit_lifespan_subcritical: table is not sub-critical");
    auto entries = fit_eligible(table);
    if (entries.size() < 4)
        throw InsufficientDataError("fit_lifespan_subcritical: need >= 4 uncensored entries");
    double emax = 0.0, emin = kInf;
    for (auto* e : entries) {
        emax = std::max(emax, e->epsilon);
        emin = std::min(emin, e->epsilon);
    }
    if (emax / emin < 4.0 * (1.0 - 1e-12))
        throw InsufficientDataError(
            "fit_lifespan_subcritical: epsilons must span at least two dyadic decades");
    std::vector<double> lx, ly;
    for (auto* e : entries) {
        lx.push_back(std::log(e->epsilon));
        ly.push_back(std::log(e->lifespan));
    }
    return analysis::fit_linear(lx, ly);
}

analysis::FitResult fit_lifespan_critical(const LifespanTable& table) {
    if (table.theory.branch != Branch::critical)
        throw std::invalid_argument("fit_lifespan_critical: table is not critical");
    auto entries = fit_eligible(table);
    if (entries.size() < 4)
        throw InsufficientDataError("fit_lifespan_critical: need >= 4 uncensored entries");
    std::vector<double> x, y;
    const double expo = -2.0 * table.params.exchanger.sigma / static_cast<double>(table.dim);
    for (auto* e : entries) {
        x.push_back(std::pow(e->epsilon, expo));
        y.push_back(std::log(e->lifespan));
    }
    return analysis::fit_linear(x, y);
}

}  // namespace frex::lifespan
