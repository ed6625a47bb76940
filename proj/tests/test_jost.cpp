#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dirac/jost.hpp"
#include "oracles.hpp"

using namespace dirac;

namespace {

Potential bump(double amp = 2.0) { return generate(PotentialKind::Bump, 1.0, 257, {{"amplitude", amp}}); }

Potential random_complex(std::uint64_t seed)
{
    Potential q = generate(PotentialKind::RandomBandlimited, 1.0, 257, {{"bands", 5.0}}, seed);
    Potential p = generate(PotentialKind::RandomBandlimited, 1.0, 257, {{"bands", 5.0}}, seed + 100);
    for (int j = 0; j < q.n(); ++j)
        q.samples[j] += kI * p.samples[j];
    return q;
}

}  // namespace

TEST_CASE("zero potential gives a = 1, b = 0")
{
    Potential z = generate(PotentialKind::Zero, 1.0, 16);
    for (double k : {-3.0, 0.0, 2.5}) {
        Transition t = transition(z, k);
        CHECK(std::abs(t.a - 1.0) < 1e-14);
        CHECK(std::abs(t.b) < 1e-14);
    }
}

TEST_CASE("constant potential matches the closed form")
{
    for (cplx c : {cplx(1.0), cplx(0.7, -1.2), cplx(3.0)}) {
        for (double g : {1.0, 2.0}) {
            Potential q = generate(PotentialKind::Constant, g, 64, {{"c_re", c.real()}, {"c_im", c.imag()}});
            double worst = 0.0;
            for (cplx k : {cplx(-7.3), cplx(-1.0), cplx(0.0), cplx(0.4), cplx(5.0), cplx(2.0, 0.7),
                           cplx(-1.5, -2.0), cplx(0.3, 3.0)}) {
                Transition t = transition(q, k, 1e-12);
                cplx ea = oracle::a_const(c, g, k), eb = oracle::b_const(c, g, k);
                double scale = std::max(1.0, std::max(std::abs(ea), std::abs(eb)));
                worst = std::max(worst, std::abs(t.a - ea) / scale);
                worst = std::max(worst, std::abs(t.b - eb) / scale);
            }
            CHECK(worst < 1e-9);
        }
    }
}

TEST_CASE("unitarity on the real line and det = 1")
{
    for (std::uint64_t seed : {1u, 2u}) {
        Potential q = random_complex(seed);
        auto k = linspace(-20.0, 20.0, 201);
        auto tc = transition_coefficients(q, k);
        double worst = 0.0;
        for (std::size_t j = 0; j < k.size(); ++j)
            worst = std::max(worst, std::abs(std::norm(tc.a[j]) - std::norm(tc.b[j]) - 1.0));
        CHECK(worst < 1e-8);
        for (cplx kk : {cplx(1.0, 1.0), cplx(-2.0, -0.5)})
            CHECK(std::abs(transition_matrix(q, kk).det() - 1.0) < 1e-8);
    }
}

TEST_CASE("propagation composes")
{
    Potential q = bump();
    cplx k(1.3, 0.2);
    Mat2 full = propagate(q, k, q.lo(), q.hi(), Mat2::identity(), 1e-12);
    Mat2 half = propagate(q, k, q.lo(), 0.37, Mat2::identity(), 1e-12);
    Mat2 both = propagate(q, k, 0.37, q.hi(), half, 1e-12);
    CHECK(full.max_abs_diff(both) < 1e-9);
}

TEST_CASE("k-derivatives agree with central differences")
{
    Potential q = random_complex(3);
    for (cplx k : {cplx(0.8), cplx(-2.0, 0.5)}) {
        TransitionD d = transition_with_derivative(q, k, 1e-12);
        double h = 1e-5;
        Transition p = transition(q, k + h, 1e-12), m = transition(q, k - h, 1e-12);
        CHECK(std::abs(d.da - (p.a - m.a) / (2.0 * h)) < 1e-6);
        CHECK(std::abs(d.db - (p.b - m.b) / (2.0 * h)) < 1e-6);
    }
}

TEST_CASE("scattering matrix is unitary")
{
    Potential q = random_complex(4);
    for (double k : {-4.0, 0.5, 3.0}) {
        auto s = scattering_matrix(q, k);
        const Mat2& m = s.matrix;
        cplx p11 = std::norm(m.m11) + std::norm(m.m21);
        cplx p12 = std::conj(m.m11) * m.m12 + std::conj(m.m21) * m.m22;
        cplx p22 = std::norm(m.m12) + std::norm(m.m22);
        CHECK(std::abs(p11 - 1.0) < 1e-8);
        CHECK(std::abs(p12) < 1e-8);
        CHECK(std::abs(p22 - 1.0) < 1e-8);
        CHECK(std::abs(std::norm(s.transmission) + std::norm(s.r_minus) - 1.0) < 1e-8);
    }
}

TEST_CASE("covariance of a and b under the transforms")
{
    Potential q = random_complex(5);
    double alpha = 0.8, s = 0.3, m = 0.6;
    auto mod = transform(q, TransformKind::Modulate, m);
    auto sh = transform(q, TransformKind::Shift, s);
    auto ph = transform(q, TransformKind::Phase, alpha);
    auto cj = transform(q, TransformKind::Conjugate);
    auto rf = transform(q, TransformKind::Reflect);
    double worst = 0.0;
    auto upd = [&](cplx x, cplx y) { worst = std::max(worst, std::abs(x - y)); };
    for (double k : {-3.1, -0.4, 0.0, 1.7, 5.2}) {
        Transition t = transition(q, k, 1e-12), tm = transition(q, -k, 1e-12),
                   tsh = transition(q, k - m, 1e-12);
        Transition a = transition(ph, k, 1e-12);
        upd(a.a, t.a);
        upd(a.b, std::polar(1.0, -alpha) * t.b);
        a = transition(cj, k, 1e-12);
        upd(a.a, std::conj(tm.a));
        upd(a.b, std::conj(tm.b));
        a = transition(sh, k, 1e-12);
        upd(a.a, t.a);
        upd(a.b, std::exp(-2.0 * kI * k * s) * t.b);
        a = transition(mod, k, 1e-12);
        upd(a.a, tsh.a);
        upd(a.b, tsh.b);
        a = transition(rf, k, 1e-12);
        upd(a.a, std::conj(tm.a));
        upd(a.b, tm.b);
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("class residuals of b")
{
    auto k = linspace(-10.0, 10.0, 101);
    auto residuals = [&](const Potential& q) {
        auto tc = transition_coefficients(q, {0.0});
        return b_class_residuals(tc.eval_b, k, q.gamma + 2.0 * q.offset);
    };
    auto even = residuals(bump());
    CHECK(even.even < 1e-9);
    CHECK(even.odd > 0.1);
    CHECK(even.real < 1e-9);

    Potential odd = from_function([](double x) { return cplx(std::sin(6.0 * (x - 0.5))); }, 1.0, 257);
    auto o = residuals(odd);
    CHECK(o.odd < 1e-9);
    CHECK(o.even > 0.1);
    CHECK(o.real < 1e-9);

    auto r = residuals(random_complex(6));
    CHECK(r.even > 1e-3);
    CHECK(r.odd > 1e-3);
    CHECK(r.real > 1e-3);

    // Off the origin the functional equation picks up the offset.
    auto shifted = residuals(transform(bump(), TransformKind::Shift, -0.7));
    CHECK(shifted.even < 1e-9);
}
