#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "frex/errors.hpp"
#include "frex/lifespan.hpp"
#include "frex/spectral.hpp"
#include "oracles.hpp"

namespace lf = frex::lifespan;
namespace sl = frex::semilinear;
namespace ex = frex::exchanger;
using frex::GridSpec;
using frex::RealField;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

RealField constant(const GridSpec& g, double c) {
    RealField f(g);
    for (double& v : f.values) v = c;
    return f;
}

RealField gaussian(const GridSpec& g) {
    RealField f(g);
    for (int j = 0; j < g.points_per_axis; ++j) {
        double x = g.coordinate(j);
        f.values[j] = std::exp(-x * x);
    }
    return f;
}

lf::LifespanTable synthetic_table(lf::Branch branch, double (*law)(double),
                                  std::vector<double> epsilons, int dim = 1) {
    lf::LifespanTable t;
    t.params.p = branch == lf::Branch::critical ? 3.0 : 2.0;
    t.params.q = t.params.p;
    t.params.exchanger.sigma = 1.0;
    t.dim = dim;
    t.theory = lf::theory_exponent(dim, 1.0, t.params.p, t.params.q);
    for (double e : epsilons)
        t.entries.push_back(
            lf::LifespanEntry{e, law(e), lf::EntryStatus::blowup, 0.01, true, 0.0});
    return t;
}

}  // namespace

TEST_CASE("theory exponent: sub-critical value, critical and super-critical markers") {
    auto sub = lf::theory_exponent(1, 1.0, 2.0, 2.0);
    CHECK(sub.branch == lf::Branch::subcritical);
    CHECK(sub.exponent == doctest::Approx(-2.0).epsilon(1e-14));

    auto crit = lf::theory_exponent(1, 1.0, 3.0, 3.0);
    CHECK(crit.branch == lf::Branch::critical);

    auto super = lf::theory_exponent(2, 1.0, 4.0, 5.0);
    CHECK(super.branch == lf::Branch::supercritical);

    CHECK_THROWS_AS(lf::theory_exponent(1, 1.0, 1.0, 2.0), std::domain_error);
}

TEST_CASE("theory exponent: diagonal case equals the single-equation law") {
    // for p = q the coupled exponent -(p-1)/(1 - n/(2s)(p-1)) is the scalar one
    for (double p : {1.5, 2.0, 2.5}) {
        auto t = lf::theory_exponent(1, 1.0, p, p);
        REQUIRE(t.branch == lf::Branch::subcritical);
        double scalar = -(p - 1.0) / (1.0 - 0.5 * (p - 1.0));
        CHECK(t.exponent == doctest::Approx(scalar).epsilon(1e-14));
    }
}

TEST_CASE("theory exponent diverges approaching the critical set") {
    auto near = lf::theory_exponent(1, 1.0, 2.999, 2.999);
    REQUIRE(near.branch == lf::Branch::subcritical);
    CHECK(near.exponent < -1000.0);
}

TEST_CASE("synthetic sub-critical fits") {
    auto exact = synthetic_table(
        lf::Branch::subcritical, [](double e) { return std::pow(e, -2.0); },
        {0.4, 0.2, 0.1, 0.05, 0.025});
    auto fit = lf::fit_lifespan_subcritical(exact);
    CHECK(fit.slope == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(fit.stderr_slope < 1e-12);

    auto perturbed = synthetic_table(
        lf::Branch::subcritical, [](double e) { return 5.0 * std::pow(e, -2.0) * (1 + e); },
        {0.05, 0.025, 0.0125, 0.00625, 0.003125});
    auto fit2 = lf::fit_lifespan_subcritical(perturbed);
    CHECK(std::abs(fit2.slope - (-2.0)) < 0.05);
}

TEST_CASE("synthetic critical fit recovers the exponential constant") {
    auto table = synthetic_table(
        lf::Branch::critical, [](double e) { return std::exp(3.0 / (e * e)); },
        {1.0, 0.8, 0.6, 0.5, 0.4});
    auto fit = lf::fit_lifespan_critical(table);
    CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(fit.r_squared == doctest::Approx(1.0));
}

TEST_CASE("fit preconditions") {
    auto sub = synthetic_table(
        lf::Branch::subcritical, [](double e) { return std::pow(e, -2.0); },
        {0.4, 0.2, 0.1, 0.05});
    CHECK_THROWS_AS(lf::fit_lifespan_critical(sub), std::invalid_argument);

    auto narrow = synthetic_table(
        lf::Branch::subcritical, [](double e) { return std::pow(e, -2.0); },
        {0.4, 0.35, 0.3, 0.25});
    CHECK_THROWS_AS(lf::fit_lifespan_subcritical(narrow), frex::InsufficientDataError);

    auto censored = synthetic_table(
        lf::Branch::subcritical, [](double e) { return std::pow(e, -2.0); },
        {0.4, 0.2, 0.1, 0.05});
    censored.entries[1].status = lf::EntryStatus::censored;
    censored.entries[1].lifespan = kInf;
    CHECK_THROWS_AS(lf::fit_lifespan_subcritical(censored), frex::InsufficientDataError);
}

TEST_CASE("censored entries never participate in fits") {
    auto table = synthetic_table(
        lf::Branch::subcritical, [](double e) { return std::pow(e, -2.0); },
        {0.8, 0.4, 0.2, 0.1, 0.05});
    // poison a censored entry; the fit must ignore it entirely
    table.entries.push_back(
        lf::LifespanEntry{0.025, kInf, lf::EntryStatus::censored, 0.01, true, 0.0});
    auto fit = lf::fit_lifespan_subcritical(table);
    CHECK(fit.slope == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(fit.points == 5);
}

TEST_CASE("constant-data sweep matches the ODE lifespan scaling") {
    GridSpec g{1, 32, 2.0};
    sl::SemilinearParams params;
    params.exchanger = ex::ExchangerParams{1.0, 1.0, 1.0};
    params.p = 2;
    params.q = 2;
    sl::SolverConfig cfg;
    cfg.dt = 0.01;
    cfg.t_max = 10.0;
    std::vector<double> eps = {1.0, 0.5, 0.25};
    auto table = lf::sweep(params, cfg, constant(g, 1.0), constant(g, 1.0), eps, 1, 500.0);
    REQUIRE(table.entries.size() == 3);
    for (const auto& e : table.entries) {
        REQUIRE(e.status != lf::EntryStatus::censored);
        double expect = 1.0 / e.epsilon;  // T = (eps c)^{1-p}/(p-1), c = 1, p = 2
        CAPTURE(e.epsilon);
        CHECK(std::abs(e.lifespan - expect) <= 0.02 * expect);
        CHECK(e.refinement_agreed);
    }
    // monotone: smaller eps lives longer
    CHECK(table.entries[1].lifespan > table.entries[0].lifespan);
    CHECK(table.entries[2].lifespan > table.entries[1].lifespan);
}

TEST_CASE("super-critical sweep censors every entry") {
    GridSpec g{1, 128, 16.0};
    sl::SemilinearParams params;
    params.exchanger = ex::ExchangerParams{1.0, 1.0, 1.0};
    params.p = 4;
    params.q = 4;
    sl::SolverConfig cfg;
    cfg.dt = 0.05;
    cfg.t_max = 5.0;
    std::vector<double> eps = {0.1, 0.05};
    auto table = lf::sweep(params, cfg, gaussian(g), gaussian(g), eps, 1, 5.0);
    for (const auto& e : table.entries) {
        CHECK(e.status == lf::EntryStatus::censored);
        CHECK(std::isinf(e.lifespan));
    }
}

TEST_CASE("sweep rejects bad epsilon lists") {
    GridSpec g{1, 32, 2.0};
    sl::SemilinearParams params;
    params.p = 2;
    params.q = 2;
    sl::SolverConfig cfg;
    cfg.dt = 0.01;
    cfg.t_max = 1.0;
    RealField c = constant(g, 1.0);
    CHECK_THROWS_AS(lf::sweep(params, cfg, c, c, {0.1, 0.2}, 1, 10.0), std::domain_error);
    CHECK_THROWS_AS(lf::sweep(params, cfg, c, c, {}, 1, 10.0), frex::InsufficientDataError);
}

TEST_CASE("worker count does not change the table") {
    GridSpec g{1, 32, 2.0};
    sl::SemilinearParams params;
    params.exchanger = ex::ExchangerParams{1.0, 1.0, 1.0};
    params.p = 2;
    params.q = 2;
    sl::SolverConfig cfg;
    cfg.dt = 0.01;
    cfg.t_max = 20.0;
    std::vector<double> eps = {1.0, 0.7, 0.5, 0.35};
    RealField c = constant(g, 1.0);
    auto a = lf::sweep(params, cfg, c, c, eps, 1, 100.0);
    auto b = lf::sweep(params, cfg, c, c, eps, 4, 100.0);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].lifespan == b.entries[i].lifespan);
        CHECK(a.entries[i].status == b.entries[i].status);
    }
}
