#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dirac/jost.hpp"
#include "dirac/resonances.hpp"
#include "oracles.hpp"

using namespace dirac;

TEST_CASE("winding count of polynomials")
{
    Evaluator p = [](cplx z) { return (z - 0.5) * (z - 0.5) * (z + cplx(0.2, 0.3)) * (z - 3.0); };
    CHECK(winding_count(p, {-1.0, 1.0, -1.0, 1.0}) == 3);
    CHECK(winding_count(p, {0.0, 1.0, -0.5, 0.5}) == 2);
    CHECK(winding_count(p, {-2.0, 4.0, -1.0, 1.0}) == 4);
    CHECK(winding_count(p, {1.0, 2.0, -1.0, 1.0}) == 0);
}

TEST_CASE("find_zeros on a polynomial with a double root")
{
    Evaluator p = [](cplx z) { return (z - cplx(1.0, -1.0)) * (z - cplx(1.0, -1.0)) * (z + cplx(2.0, 0.5)); };
    ZeroSet s = find_zeros(p, {-3.01, 3.02, -2.03, 1.04});
    REQUIRE(s.zeros.size() == 2);
    CHECK(s.total_multiplicity() == 3);
    for (const auto& z : s.zeros) {
        if (z.multiplicity == 2)
            CHECK(std::abs(z.location - cplx(1.0, -1.0)) < 1e-6);
        else
            CHECK(std::abs(z.location - cplx(-2.0, -0.5)) < 1e-10);
    }
}

TEST_CASE("sort order is modulus first")
{
    std::vector<Zero> z{{cplx(3.0, 0.0)}, {cplx(0.0, -1.0)}, {cplx(-2.0, 0.0)}};
    sort_zeros(z);
    CHECK(z[0].location == cplx(0.0, -1.0));
    CHECK(z[1].location == cplx(-2.0, 0.0));
    CHECK(z[2].location == cplx(3.0, 0.0));
}

TEST_CASE("resonances of a constant potential")
{
    double g = 1.0;
    cplx c(1.0);
    Potential q = generate(PotentialKind::Constant, g, 64, {{"c_re", 1.0}});
    auto tc = transition_coefficients(q, {0.0}, 1e-12);
    Rect region{-10.0 - 0.0173, 10.0 + 0.0119, -6.0, -0.0207};
    ZeroSet s = find_zeros(tc.eval_a, region, tc.eval_a_d);
    auto expected = oracle::const_resonances(c, g, region.re_lo, region.re_hi, region.im_lo, region.im_hi);
    REQUIRE(!expected.empty());
    CHECK(s.total_multiplicity() == static_cast<int>(expected.size()));
    double worst = 0.0;
    for (const auto& z : s.zeros)
        worst = std::max(worst, oracle::nearest(expected, z.location));
    CHECK(worst < 1e-6);
    // Resonance pairs are symmetric: k and -conj k.
    for (const auto& z : s.zeros) {
        double d = 1e300;
        for (const auto& w : s.zeros)
            d = std::min(d, std::abs(w.location + std::conj(z.location)));
        CHECK(d < 1e-6);
    }
}

TEST_CASE("no zeros of a in the closed upper half-plane")
{
    Potential q = generate(PotentialKind::Bump, 1.0, 257, {{"amplitude", 3.0}});
    auto tc = transition_coefficients(q, {0.0});
    CHECK(winding_count(tc.eval_a, {-20.0 - 0.0173, 20.0 + 0.0119, -0.0311, 5.0}) == 0);
}

TEST_CASE("counting function")
{
    ZeroSet s;
    s.region = {-50.0, 50.0, -5.0, 0.0};
    // Lattice k = n pi/2 - i: slope of N(r) is 1/pi per side.
    for (int n = -30; n <= 30; ++n)
        s.zeros.push_back({cplx(n * kPi / 2.0, -1.0)});
    std::vector<double> radii{10.0, 20.0, 30.0, 40.0};
    auto rep = counting_function(s, radii, 0.0);
    CHECK(rep.fitted_slope == doctest::Approx(2.0 / kPi).epsilon(0.05));
    CHECK(rep.counts_plus[0] == 7);
    CHECK(rep.counts_minus[0] == 7);
    // Every lattice point except n = 0 sits at small |arg| or close to pi.
    auto sector = counting_function(s, radii, kPi / 3.0);
    CHECK(sector.counts_plus[3] == 1);
    CHECK_THROWS_AS(counting_function(s, {60.0}, 0.0), Error);
    CHECK_THROWS_AS(counting_function(s, radii, 2.0), Error);
}

TEST_CASE("forbidden domain fit")
{
    double g = 1.0, eps = 0.1;
    ZeroSet s;
    s.zeros = {{cplx(2.0, -0.5)}, {cplx(-2.0, -0.5)}, {cplx(10.0, -1.0)}};
    auto fit = forbidden_fit(s, g, eps, {0.6, 2.0});
    double C = std::max(std::hypot(2.0, 0.5) * (std::exp(-1.0) - eps), std::hypot(10.0, 1.0) * (std::exp(-2.0) - eps));
    CHECK(fit.C == doctest::Approx(C));
    CHECK(fit.violations.empty());
    CHECK(fit.strip_counts == std::vector<int>{2, 3});
    s.zeros.push_back({cplx(1.0, 0.1)});
    CHECK_THROWS_AS(forbidden_fit(s, g, eps), Error);
    CHECK_THROWS_AS(forbidden_fit(ZeroSet{}, g, eps), Error);
}
