#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dirac/glm.hpp"
#include "oracles.hpp"

using namespace dirac;

namespace {

double max_diff(const Potential& p, const Potential& q)
{
    auto a = p.node_values(), b = q.node_values();
    REQUIRE(a.size() == b.size());
    double d = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        d = std::max(d, std::abs(a[j] - b[j]));
    return d;
}

SpectralGrid reflection_of(const Potential& q, Side side)
{
    ForwardGrid fg = forward_grid(q, default_inversion_grid(q.gamma));
    return reflection_from_ab(fg.a, fg.b, side);
}

}  // namespace

TEST_CASE("reflection coefficients from a and b")
{
    SpectralGrid a = make_grid(1.0, 3), b = a;
    b.values = {cplx(1.0), cplx(0.0, 1.0), cplx(-1.0, 2.0)};
    for (int j = 0; j < 3; ++j)
        a.values[j] = std::polar(std::sqrt(1.0 + std::norm(b.values[j])), 0.4 * j);
    auto rp = reflection_from_ab(a, b, Side::Right);
    auto rm = reflection_from_ab(a, b, Side::Left);
    for (int j = 0; j < 3; ++j) {
        CHECK(std::abs(rp.values[j] + std::conj(b.values[j]) / a.values[j]) < 1e-15);
        CHECK(std::abs(rm.values[j] - b.values[j] / a.values[j]) < 1e-15);
    }
    CHECK(parse_side("left") == Side::Left);
    CHECK(parse_side("right") == Side::Right);
    CHECK_THROWS_AS(parse_side("up"), Error);
}

TEST_CASE("zero reflection gives the zero potential")
{
    SpectralGrid r = make_grid(96.0, 1957);
    for (auto& v : r.values)
        v = 0.0;
    Potential q = invert_reflection(r, Side::Left, 1.0, 128);
    CHECK(q.max_abs() == 0.0);
}

TEST_CASE("left and right reflection coefficients are linked")
{
    Potential q = generate(PotentialKind::RandomBandlimited, 1.0, 257, {{"bands", 4.0}}, 3);
    SpectralGrid rp = reflection_of(q, Side::Right), rm = reflection_of(q, Side::Left);
    SpectralGrid from_p = left_right(rp, Side::Right);
    double worst = 0.0;
    for (int j = 0; j < rm.size(); ++j)
        if (std::abs(rm.k(j)) < 20.0)
            worst = std::max(worst, std::abs(from_p.values[j] - rm.values[j]));
    CHECK(worst < 1e-4);
}

TEST_CASE("round trip through the GLM equation")
{
    std::vector<Potential> cases{
        generate(PotentialKind::Constant, 1.0, 256, {{"c_re", 1.0}}),
        generate(PotentialKind::Bump, 1.0, 256, {{"amplitude", 2.0}}),
        generate(PotentialKind::RandomBandlimited, 1.0, 256, {{"bands", 4.0}}, 11),
    };
    for (const auto& q : cases)
        for (Side side : {Side::Left, Side::Right}) {
            double cond = 0.0;
            Potential p = invert_reflection(reflection_of(q, side), side, q.gamma, q.n(), 0.0, &cond);
            CHECK(max_diff(p, q) / q.max_abs() < 1e-3);
            CHECK(cond >= 1.0);
        }
}

TEST_CASE("off-origin support")
{
    Potential q = transform(generate(PotentialKind::Bump, 1.0, 256, {{"amplitude", 2.0}}),
                            TransformKind::Shift, -0.5);
    Potential p = invert_reflection(reflection_of(q, Side::Left), Side::Left, 1.0, 256, 0.5);
    CHECK(p.lo() == doctest::Approx(0.5));
    CHECK(max_diff(p, q) / q.max_abs() < 1e-3);
}

TEST_CASE("inversion from b alone")
{
    Evaluator b = [](cplx k) { return oracle::b_const(1.0, 1.0, k); };
    InvertReport rep = invert_from_b(b, 1.0, 256);
    CHECK(rep.class_p);
    CHECK(rep.hull_lo > -2.0 / 255.0);
    CHECK(rep.hull_hi < 1.0 + 2.0 / 255.0);
    double worst = 0.0;
    for (int j = 0; j < rep.q.n(); ++j)
        worst = std::max(worst, std::abs(rep.q.value_at_node(j) - 1.0));
    CHECK(worst < 1e-3);
}
