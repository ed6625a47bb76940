#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dirac/fourier.hpp"

#include <cmath>

using namespace dirac;

namespace {

Profile gaussian_profile(double half, int n)
{
    Profile g;
    g.s0 = -half;
    g.ds = 2.0 * half / (n - 1);
    g.values.resize(n);
    for (int j = 0; j < n; ++j)
        g.values[j] = std::exp(-g.s(j) * g.s(j));
    return g;
}

}  // namespace

TEST_CASE("forward transform of a Gaussian")
{
    // int e^{-s^2} e^{2iks} ds = sqrt(pi) e^{-k^2}
    Profile g = gaussian_profile(8.0, 1025);
    SpectralGrid f = forward_transform(g, -6.0, 0.05, 241);
    double worst = 0.0;
    for (int j = 0; j < f.size(); ++j)
        worst = std::max(worst, std::abs(f.values[j] - std::sqrt(kPi) * std::exp(-f.k(j) * f.k(j))));
    CHECK(worst < 1e-12);
}

TEST_CASE("forward transform of a shifted box")
{
    // indicator of [1, 2]: (e^{4ik} - e^{2ik}) / (2ik)
    int n = 3001;
    Profile g;
    g.s0 = 0.0;
    g.ds = 3.0 / (n - 1);
    g.values.resize(n);
    for (int j = 0; j < n; ++j) {
        double s = g.s(j);
        g.values[j] = (s > 1.0 - 1e-9 && s < 2.0 + 1e-9) ? 1.0 : 0.0;
    }
    // Trapezoid weights at the jumps: halve the end samples of the box.
    g.values[1000] = 0.5;
    g.values[2000] = 0.5;
    SpectralGrid f = forward_transform(g, -5.0, 0.1, 101);
    double worst = 0.0;
    for (int j = 0; j < f.size(); ++j) {
        double k = f.k(j);
        cplx exact = std::abs(k) < 1e-12 ? cplx(1.0)
                                         : (std::exp(4.0 * kI * k) - std::exp(2.0 * kI * k)) / (2.0 * kI * k);
        worst = std::max(worst, std::abs(f.values[j] - exact));
    }
    CHECK(worst < 1e-5);
}

TEST_CASE("inverse transform recovers the Gaussian")
{
    SpectralGrid f = make_grid(12.0, 961);
    for (int j = 0; j < f.size(); ++j)
        f.values[j] = std::sqrt(kPi) * std::exp(-f.k(j) * f.k(j));
    InverseResult r = inverse_transform(f);
    CHECK_FALSE(r.tail_warning);
    double worst = 0.0;
    for (int j = 0; j < r.profile.size(); ++j) {
        double s = r.profile.s(j);
        if (std::abs(s) < 5.0)
            worst = std::max(worst, std::abs(r.profile.values[j] - std::exp(-s * s)));
    }
    CHECK(worst < 1e-12);

    Profile d = inverse_transform_at(f, -2.0, 0.01, 401);
    worst = 0.0;
    for (int j = 0; j < d.size(); ++j)
        worst = std::max(worst, std::abs(d.values[j] - std::exp(-d.s(j) * d.s(j))));
    CHECK(worst < 1e-12);
}

TEST_CASE("inverse transform flags truncated spectra")
{
    SpectralGrid f = make_grid(5.0, 201);
    for (int j = 0; j < f.size(); ++j)
        f.values[j] = 1.0 / (f.k(j) + kI);
    InverseResult r = inverse_transform(f);
    CHECK(r.tail_warning);
    CHECK(r.tail_ratio > 0.1);
}

TEST_CASE("edge model improves a jump spectrum")
{
    // F of the indicator of [0, 1]: (e^{2ik} - 1) / (2ik). The inverse is 1 on
    // (0, 1); plain summation converges like 1/kmax near the jumps.
    SpectralGrid f = make_grid(40.0, 2561);
    for (int j = 0; j < f.size(); ++j) {
        double k = f.k(j);
        f.values[j] = std::abs(k) < 1e-12 ? cplx(1.0) : (std::exp(2.0 * kI * k) - 1.0) / (2.0 * kI * k);
    }
    EdgeModel m;
    m.starts = {0.0};
    m.ends = {1.0};
    Profile plain = inverse_transform_at(f, 0.1, 0.01, 81);
    Profile corrected = inverse_transform_at(f, 0.1, 0.01, 81, m);
    double ep = 0.0, ec = 0.0;
    for (int j = 0; j < plain.size(); ++j) {
        ep = std::max(ep, std::abs(plain.values[j] - 1.0));
        ec = std::max(ec, std::abs(corrected.values[j] - 1.0));
    }
    CHECK(ec < 0.1 * ep);
    CHECK(ec < 1e-4);
}

TEST_CASE("Riesz projection splits upper and lower analytic parts")
{
    // 1/(k+i)^2 is analytic above the line, so its inverse transform lives on
    // s > 0 and the projection keeps it; 1/(k-i)^2 is removed.
    SpectralGrid f = make_grid(400.0, 16001);
    SpectralGrid up = f, down = f, mix = f;
    for (int j = 0; j < f.size(); ++j) {
        double k = f.k(j);
        up.values[j] = 1.0 / ((k + kI) * (k + kI));
        down.values[j] = 1.0 / ((k - kI) * (k - kI));
        mix.values[j] = up.values[j] + down.values[j];
    }
    SpectralGrid p = hardy_project(mix, 2);
    double worst = 0.0;
    for (int j = 0; j < f.size(); ++j)
        if (std::abs(f.k(j)) < 20.0)
            worst = std::max(worst, std::abs(p.values[j] - up.values[j]));
    CHECK(worst < 1e-3);
}

TEST_CASE("analytic completion of the real part of 1/(k+i)^2")
{
    SpectralGrid u = make_grid(400.0, 16001);
    for (int j = 0; j < u.size(); ++j) {
        double k = u.k(j);
        u.values[j] = (k * k - 1.0) / ((k * k + 1.0) * (k * k + 1.0));
    }
    SpectralGrid c = analytic_completion(u);
    double worst = 0.0;
    for (int j = 0; j < c.size(); ++j)
        if (std::abs(c.k(j)) < 20.0)
            worst = std::max(worst, std::abs(c.values[j] - 1.0 / ((c.k(j) + kI) * (c.k(j) + kI))));
    CHECK(worst < 1e-3);
}

TEST_CASE("exponential types and support hull")
{
    // F of the indicator of [a, b] grows like e^{2b y}/y along +i and e^{-2a y}
    // along -i, so the types give the hull back.
    double a = -0.3, b = 0.8;
    Evaluator box = [&](cplx k) {
        if (std::abs(k) < 1e-12)
            return cplx(b - a);
        return (std::exp(2.0 * kI * k * b) - std::exp(2.0 * kI * k * a)) / (2.0 * kI * k);
    };
    SpectralGrid f = sample(box, make_grid(60.0, 4801));
    SupportEstimate h = support_hull(f, 1e-6, box);
    CHECK(h.has_types);
    CHECK(h.inf_supp == doctest::Approx(a).epsilon(0.05));
    CHECK(h.sup_supp == doctest::Approx(b).epsilon(0.05));
}

TEST_CASE("grid checks")
{
    Profile g = gaussian_profile(8.0, 257);
    // window 16 needs dk <= pi / 32
    CHECK_THROWS_AS(forward_transform(g, -5.0, 0.2, 51), Error);
    CHECK_NOTHROW(forward_transform(g, -5.0, 0.05, 201));
    CHECK_THROWS_AS(make_grid(-1.0, 11), Error);
    CHECK_THROWS_AS(make_grid(1.0, 1), Error);
    SpectralGrid s = make_grid_spacing(3.0, 0.1);
    CHECK(s.dk <= 0.1 + 1e-15);
    CHECK(s.kmax() == doctest::Approx(3.0));
    CHECK(l2_norm(g) == doctest::Approx(std::pow(kPi / 2.0, 0.25)).epsilon(1e-8));
}
