#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dirac/jost.hpp"
#include "dirac/nlsflow.hpp"
#include "oracles.hpp"

using namespace dirac;

namespace {

ZeroSet oracle_resonances(double R)
{
    ZeroSet s;
    s.region = {-R - 0.5, R + 0.5, -12.0, 0.0};
    for (cplx z : oracle::const_resonances(1.0, 1.0, -R - 0.5, R + 0.5, -12.0, -1e-3))
        s.zeros.push_back({z});
    sort_zeros(s.zeros);
    return s;
}

}  // namespace

TEST_CASE("action of the zero potential")
{
    Evaluator one = [](cplx) { return cplx(1.0); };
    auto k = linspace(-5.0, 5.0, 11);
    for (double v : action_direct(one, k))
        CHECK(v == 0.0);
    ActionSeries s = action_series(ZeroSet{}, 0.0, k, 10.0, 1.0);
    for (double v : s.corrected)
        CHECK(v == 0.0);
}

TEST_CASE("action series against log|a| for the constant potential")
{
    Evaluator a = [](cplx k) { return oracle::a_const(1.0, 1.0, k); };
    auto k = linspace(-5.0, 5.0, 201);
    auto direct = action_direct(a, k);
    ZeroSet res = oracle_resonances(60.0);
    ActionSeries s = action_series(res, std::log(std::cosh(1.0)), k, 60.0, 1.0);
    CHECK_FALSE(s.insufficient_radius);
    double raw = 0.0, corr = 0.0;
    for (std::size_t j = 0; j < k.size(); ++j) {
        CHECK(direct[j] == doctest::Approx(std::log(std::abs(a(k[j]))) / kPi));
        raw = std::max(raw, std::abs(s.series[j] - direct[j]));
        corr = std::max(corr, std::abs(s.corrected[j] - direct[j]));
    }
    MESSAGE("action series: raw " << raw << ", corrected " << corr);
    CHECK(corr < 1e-3);
    CHECK(corr < 0.1 * raw);
    CHECK(s.tail_estimate > 0.0);
}

TEST_CASE("angle of the constant potential")
{
    Evaluator b = [](cplx k) { return oracle::b_const(1.0, 1.0, k); };
    ZeroSet zs;
    for (double z : oracle::b_const_zeros(1.0, 1.0, 40.0))
        zs.zeros.push_back({cplx(z)});
    XiSequence xi = xi_of(b, zs);
    auto k = linspace(-10.0, 10.0, 2001);
    AngleProfile p = angle(xi, k, 0.0, 1.0, 0.0, 40.0, b);
    REQUIRE(p.direct.size() == k.size());
    // Jumps of pi at the real zeros of b inside the grid.
    CHECK(p.jumps.size() == oracle::b_const_zeros(1.0, 1.0, 10.0).size());
    double worst = 0.0;
    for (std::size_t j = 0; j < k.size(); ++j)
        if (p.valid[j])
            worst = std::max(worst, std::abs(std::remainder(p.formula[j] - p.direct[j], 2.0 * kPi)));
    CHECK(worst < 1e-3);

    // The flow adds 4 k^2 t.
    AngleProfile moved = angle(xi, k, 0.25, 1.0, 0.0, 40.0, b);
    for (std::size_t j = 0; j < k.size(); j += 100)
        CHECK(moved.formula[j] - p.formula[j] == doctest::Approx(k[j] * k[j]));
}

TEST_CASE("energy of simple profiles")
{
    // q = 1 on [0, 2]: int |q|^4 = 2.
    CHECK(nls_energy(generate(PotentialKind::Constant, 2.0, 101, {{"c_re", 1.0}})) ==
          doctest::Approx(2.0).epsilon(1e-6));
    CHECK(nls_energy(generate(PotentialKind::Zero, 1.0, 11)) == 0.0);
}

TEST_CASE("evolve rejects slowly decaying reflection")
{
    Potential q = generate(PotentialKind::Constant, 1.0, 128, {{"c_re", 1.0}});
    CHECK_THROWS_AS(evolve(q, 0.01), Error);
}

TEST_CASE("evolve keeps the action")
{
    Potential q = generate(PotentialKind::Bump, 1.0, 256, {{"amplitude", 1.0}, {"width", 0.1}});
    EvolveResult r = evolve(q, 0.01);
    CHECK(r.tail_ratio < 1e-6);
    CHECK(r.window_lo < q.lo());
    CHECK(r.window_hi > q.hi());
    auto k = linspace(-8.0, 8.0, 33);
    auto before = transition_coefficients(q, k);
    auto after = transition_coefficients(r.q, k);
    double worst = 0.0;
    for (std::size_t j = 0; j < k.size(); ++j)
        worst = std::max(worst, std::abs(std::log(std::abs(before.a[j])) - std::log(std::abs(after.a[j]))) / kPi);
    CHECK(worst < 1e-6);
    // Reverse flow from the wider window lands back on q.
    EvolveResult back = evolve(r.q, -0.01);
    CHECK(l2_distance(back.q, q) / q.l2_norm() < 1e-3);
}
