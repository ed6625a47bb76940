#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dirac/canonical.hpp"

using namespace dirac;

namespace {

Potential smooth(int n = 257)
{
    return from_function([](double x) { return cplx(std::sin(4.0 * x), 0.5 * std::cos(3.0 * x)); }, 1.0, n);
}

}  // namespace

TEST_CASE("zero potential gives the identity Hamiltonian")
{
    Hamiltonian h = hamiltonian_of(generate(PotentialKind::Zero, 1.0, 33));
    for (int j = 0; j < h.n(); ++j) {
        CHECK(std::abs(h.h11[j] - 1.0) < 1e-14);
        CHECK(std::abs(h.h12[j]) < 1e-14);
        CHECK(std::abs(h.h22[j] - 1.0) < 1e-14);
    }
    CHECK(h.is_normalized());
}

TEST_CASE("Hamiltonian of a potential is normalized")
{
    Hamiltonian h = hamiltonian_of(smooth());
    CHECK(h.is_normalized(1e-10));
    CHECK_NOTHROW(h.validate());
}

TEST_CASE("constant real potential has a closed form")
{
    // q = c real: q1 = 0, q2 = -c, V = [[0, -c], [-c, 0]], J V = diag(-c, c),
    // so M = diag(e^{-cx}, e^{cx}) and h = M^T M = diag(e^{-2cx}, e^{2cx}).
    double c = 0.8;
    Hamiltonian h = hamiltonian_of(generate(PotentialKind::Constant, 1.0, 65, {{"c_re", c}}));
    double worst = 0.0;
    for (int j = 0; j < h.n(); ++j) {
        double x = h.x[j];
        worst = std::max(worst, std::abs(h.h11[j] - std::exp(-2.0 * c * x)));
        worst = std::max(worst, std::abs(h.h12[j]));
        worst = std::max(worst, std::abs(h.h22[j] - std::exp(2.0 * c * x)));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("potential_of inverts hamiltonian_of")
{
    Potential q = smooth();
    Potential p = potential_of(hamiltonian_of(q));
    double worst = 0.0;
    for (int j = 2; j + 2 < q.n(); ++j)
        worst = std::max(worst, std::abs(p.value_at_node(j) - q.value_at_node(j)));
    CHECK(worst < 1e-5);
}

TEST_CASE("normalize and reassemble")
{
    Hamiltonian h = hamiltonian_of(smooth(129));
    // A non-normalized Hamiltonian: rho(x) C^T h C with a non-trivial C.
    Hamiltonian g = h;
    double a = 1.3, b = 0.4, d = 0.7;
    for (int j = 0; j < g.n(); ++j) {
        double rho = 1.0 + 0.5 * std::sin(2.0 * g.x[j]);
        double h11 = h.h11[j], h12 = h.h12[j], h22 = h.h22[j];
        // C = [[a, b], [0, d]]
        g.h11[j] = rho * a * a * h11;
        g.h12[j] = rho * (a * b * h11 + a * d * h12);
        g.h22[j] = rho * (b * b * h11 + 2.0 * b * d * h12 + d * d * h22);
    }
    Normalized n = normalize(g);
    CHECK(n.h0.is_normalized(1e-8));
    Hamiltonian back = reassemble(n);
    double worst = 0.0;
    for (int j = 0; j < g.n(); ++j) {
        worst = std::max(worst, std::abs(back.h11[j] - g.h11[j]));
        worst = std::max(worst, std::abs(back.h12[j] - g.h12[j]));
        worst = std::max(worst, std::abs(back.h22[j] - g.h22[j]));
    }
    CHECK(worst < 1e-8);
    // theta is the running integral of sqrt(det h).
    CHECK(n.data.theta.front() == 0.0);
    for (std::size_t j = 1; j < n.data.theta.size(); ++j)
        CHECK(n.data.theta[j] > n.data.theta[j - 1]);
}

TEST_CASE("scattering of a Hamiltonian matches the potential")
{
    Potential q = smooth();
    Hamiltonian h = hamiltonian_of(q);
    std::vector<double> k{-3.0, -0.5, 0.0, 1.2, 4.0};
    auto hs = scattering_of_hamiltonian(h, k);
    REQUIRE(hs.s.size() == k.size());
    for (std::size_t j = 0; j < k.size(); ++j) {
        auto direct = scattering_matrix(q, k[j]);
        CHECK(std::abs(hs.s[j].transmission - direct.transmission) < 1e-6);
        CHECK(std::abs(hs.s[j].r_minus - direct.r_minus) < 1e-6);
    }
}

TEST_CASE("non positive-definite input is rejected")
{
    Hamiltonian h = hamiltonian_of(smooth(33));
    h.h11[10] = -1.0;
    CHECK_THROWS_AS(h.validate(), Error);
    CHECK_THROWS_AS(normalize(h), Error);
    Hamiltonian g = hamiltonian_of(smooth(33));
    std::swap(g.x[3], g.x[4]);
    CHECK_THROWS_AS(g.validate(), Error);
}
