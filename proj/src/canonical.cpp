#include "dirac/canonical.hpp"

#include <array>
#include <cmath>

// The installed pchip header calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

namespace dirac {

namespace {

using M2 = std::array<double, 4>;  // row-major 2x2

M2 mul(const M2& a, const M2& b)
{
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

// J V for V = [[q1, q2], [q2, -q1]].
M2 jv(cplx q)
{
    double q1 = q.imag(), q2 = -q.real();
    return {q2, -q1, -q1, -q2};
}

// Fourth-order first derivative on a uniform grid.
std::vector<double> derivative(const std::vector<double>& f, double h)
{
    int n = static_cast<int>(f.size());
    std::vector<double> d(n);
    for (int j = 2; j < n - 2; ++j)
        d[j] = (f[j - 2] - 8.0 * f[j - 1] + 8.0 * f[j + 1] - f[j + 2]) / (12.0 * h);
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h);
    d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] +
                3.0 * f[n - 5]) /
               (12.0 * h);
    d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) /
               (12.0 * h);
    return d;
}

// Cumulative trapezoid with Kahan compensation.
std::vector<double> cumulative(const std::vector<double>& x, const std::vector<double>& f)
{
    std::vector<double> out(f.size(), 0.0);
    double sum = 0.0, c = 0.0;
    for (std::size_t j = 1; j < f.size(); ++j) {
        double term = 0.5 * (x[j] - x[j - 1]) * (f[j] + f[j - 1]) - c;
        double t = sum + term;
        c = (t - sum) - term;
        sum = t;
        out[j] = sum;
    }
    return out;
}

// Cumulative integral on a uniform grid, fourth-order cell rule with
// one-sided end cells and Kahan compensation.
std::vector<double> cumulative4(const std::vector<double>& f, double h)
{
    int n = static_cast<int>(f.size());
    std::vector<double> out(n, 0.0);
    double sum = 0.0, c = 0.0;
    for (int j = 0; j + 1 < n; ++j) {
        double cell;
        if (j == 0)
            cell = 9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3];
        else if (j == n - 2)
            cell = 9.0 * f[n - 1] + 19.0 * f[n - 2] - 5.0 * f[n - 3] + f[n - 4];
        else
            cell = -f[j - 1] + 13.0 * f[j] + 13.0 * f[j + 1] - f[j + 2];
        double term = h / 24.0 * cell - c;
        double t = sum + term;
        c = (t - sum) - term;
        sum = t;
        out[j + 1] = sum;
    }
    return out;
}

std::vector<double> pchip_at(const std::vector<double>& x, const std::vector<double>& y,
                             const std::vector<double>& at)
{
    std::vector<double> xs = x, ys = y;
    boost::math::interpolators::pchip<std::vector<double>> p(std::move(xs), std::move(ys));
    std::vector<double> out(at.size());
    for (std::size_t i = 0; i < at.size(); ++i)
        out[i] = p(std::clamp(at[i], x.front(), x.back()));
    return out;
}

}  // namespace

void Hamiltonian::validate() const
{
    int m = n();
    if (m < 5 || static_cast<int>(h11.size()) != m || static_cast<int>(h12.size()) != m ||
        static_cast<int>(h22.size()) != m)
        throw Error(ErrorKind::Parameter, "hamiltonian: need at least 5 nodes and matching entries");
    for (int j = 0; j < m; ++j) {
        if (j > 0 && !(x[j] > x[j - 1]))
            throw Error(ErrorKind::Parameter, "hamiltonian: grid must be strictly increasing");
        if (!(h11[j] > 0.0) || !(det(j) > 0.0) || !std::isfinite(det(j)))
            throw Error(ErrorKind::Class, "hamiltonian: not positive definite at node " +
                                              std::to_string(j));
    }
}

bool Hamiltonian::is_normalized(double tol) const
{
    for (int j = 0; j < n(); ++j)
        if (std::abs(det(j) - 1.0) > tol)
            return false;
    return std::abs(h11[0] - 1.0) <= 1e-10 && std::abs(h12[0]) <= 1e-10 &&
           std::abs(h22[0] - 1.0) <= 1e-10;
}

Hamiltonian hamiltonian_of(const Potential& q, int substeps)
{
    q.validate();
    int n = q.n();
    double h = q.step() / substeps;
    Hamiltonian H;
    H.x.resize(n);
    H.h11.resize(n);
    H.h12.resize(n);
    H.h22.resize(n);
    M2 M = {1.0, 0.0, 0.0, 1.0};
    auto store = [&](int j) {
        // r^T r with r = M
        H.x[j] = q.node(j);
        H.h11[j] = M[0] * M[0] + M[2] * M[2];
        H.h12[j] = M[0] * M[1] + M[2] * M[3];
        H.h22[j] = M[1] * M[1] + M[3] * M[3];
    };
    store(0);
    for (int j = 0; j + 1 < n; ++j) {
        for (int s = 0; s < substeps; ++s) {
            double x = q.node(j) + s * h;
            // Inside the cell, evaluate the interpolant directly; the right end
            // uses the node value so that the last cell stays inside the support.
            auto qat = [&](double t) {
                return t >= q.hi() ? q.value_at_node(n - 1) : q(t);
            };
            M2 A1 = jv(qat(x)), A2 = jv(qat(x + 0.5 * h)), A3 = jv(qat(x + h));
            M2 k1 = mul(A1, M);
            M2 t1, t2, t3;
            for (int i = 0; i < 4; ++i)
                t1[i] = M[i] + 0.5 * h * k1[i];
            M2 k2 = mul(A2, t1);
            for (int i = 0; i < 4; ++i)
                t2[i] = M[i] + 0.5 * h * k2[i];
            M2 k3 = mul(A2, t2);
            for (int i = 0; i < 4; ++i)
                t3[i] = M[i] + h * k3[i];
            M2 k4 = mul(A3, t3);
            for (int i = 0; i < 4; ++i)
                M[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        store(j + 1);
    }
    H.normalized = true;
    return H;
}

Potential potential_of(const Hamiltonian& h)
{
    h.validate();
    if (!h.is_normalized())
        throw Error(ErrorKind::Precondition,
                    "potential_of: Hamiltonian is not normalized (det = 1, h(x0) = I); run "
                    "normalize first");
    int n = h.n();
    double step = (h.x.back() - h.x.front()) / (n - 1);
    for (int j = 0; j < n; ++j)
        if (std::abs(h.x[j] - (h.x.front() + j * step)) > 1e-9 * step)
            throw Error(ErrorKind::Parameter, "potential_of: grid must be uniform");
    std::vector<double> dp = derivative(h.h11, step), dq = derivative(h.h12, step);
    std::vector<double> nu(n), mu(n);
    for (int j = 0; j < n; ++j) {
        nu[j] = dp[j] / h.h11[j];
        mu[j] = (h.h11[j] * dq[j] - dp[j] * h.h12[j]) / h.h11[j];
    }
    std::vector<double> theta = cumulative4(mu, step);
    Potential q;
    q.offset = h.x.front();
    q.gamma = h.x.back() - h.x.front();
    q.samples.resize(n);
    for (int j = 0; j < n; ++j) {
        double c = std::cos(theta[j]), s = std::sin(theta[j]);
        double q1 = -0.5 * (mu[j] * c + nu[j] * s);
        double q2 = 0.5 * (nu[j] * c - mu[j] * s);
        q.samples[j] = cplx(-q2, q1);
    }
    // Differences of h see the cell averages of the piecewise-linear q.
    q.samples = samples_from_point_values(q.samples);
    return q;
}

Normalized normalize(const Hamiltonian& h)
{
    h.validate();
    int n = h.n();
    Normalized out;
    NormalizationData& d = out.data;
    d.x = h.x;
    d.rho.resize(n);
    for (int j = 0; j < n; ++j)
        d.rho[j] = std::sqrt(h.det(j));
    d.theta = cumulative(h.x, d.rho);
    for (int j = 1; j < n; ++j)
        if (!(d.theta[j] > d.theta[j - 1]))
            throw Error(ErrorKind::Numerical, "normalize: time change is not strictly increasing");
    double m11 = h.h11[0] / d.rho[0], m12 = h.h12[0] / d.rho[0], m22 = h.h22[0] / d.rho[0];
    d.c11 = std::sqrt(m11);
    d.c12 = m12 / d.c11;
    d.c22 = std::sqrt(m22 - d.c12 * d.c12);
    // C^{-1} = [[i11, i12], [0, i22]]
    double i11 = 1.0 / d.c11, i12 = -d.c12 / (d.c11 * d.c22), i22 = 1.0 / d.c22;
    auto conj_by = [&](double a, double b, double c, double& o11, double& o12, double& o22) {
        // C^{-T} [[a, b], [b, c]] C^{-1}
        o11 = i11 * i11 * a;
        o12 = i11 * (a * i12 + b * i22);
        o22 = i12 * i12 * a + 2.0 * i12 * i22 * b + i22 * i22 * c;
    };
    Hamiltonian& hn = d.h0_at_nodes;
    hn.x.resize(n);
    hn.h11.resize(n);
    hn.h12.resize(n);
    hn.h22.resize(n);
    for (int j = 0; j < n; ++j) {
        hn.x[j] = h.x.front() + d.theta[j];
        conj_by(h.h11[j] / d.rho[j], h.h12[j] / d.rho[j], h.h22[j] / d.rho[j], hn.h11[j], hn.h12[j],
                hn.h22[j]);
    }
    hn.normalized = true;

    Hamiltonian& h0 = out.h0;
    h0.x = linspace(hn.x.front(), hn.x.back(), n);
    bool uniform = true;
    for (int j = 0; j < n; ++j)
        uniform = uniform && std::abs(h0.x[j] - hn.x[j]) <= 1e-12 * std::max(1.0, d.theta.back());
    if (uniform) {
        h0.h11 = hn.h11;
        h0.h12 = hn.h12;
        h0.h22 = hn.h22;
    } else {
        h0.h11 = pchip_at(hn.x, hn.h11, h0.x);
        h0.h12 = pchip_at(hn.x, hn.h12, h0.x);
        h0.h22 = pchip_at(hn.x, hn.h22, h0.x);
    }
    // Entrywise interpolation does not keep det = 1 exactly.
    for (int j = 0; j < n; ++j) {
        double s = std::sqrt(h0.det(j));
        h0.h11[j] /= s;
        h0.h12[j] /= s;
        h0.h22[j] /= s;
    }
    h0.normalized = true;
    return out;
}

Hamiltonian reassemble(const Normalized& nz, bool exact_nodes)
{
    const NormalizationData& d = nz.data;
    int n = static_cast<int>(d.x.size());
    std::vector<double> a, b, c;
    if (exact_nodes) {
        a = d.h0_at_nodes.h11;
        b = d.h0_at_nodes.h12;
        c = d.h0_at_nodes.h22;
    } else {
        std::vector<double> at(n);
        for (int j = 0; j < n; ++j)
            at[j] = nz.h0.x.front() + d.theta[j];
        a = pchip_at(nz.h0.x, nz.h0.h11, at);
        b = pchip_at(nz.h0.x, nz.h0.h12, at);
        c = pchip_at(nz.h0.x, nz.h0.h22, at);
    }
    Hamiltonian h;
    h.x = d.x;
    h.h11.resize(n);
    h.h12.resize(n);
    h.h22.resize(n);
    for (int j = 0; j < n; ++j) {
        // rho C^T [[a, b], [b, c]] C
        double r = d.rho[j];
        h.h11[j] = r * d.c11 * d.c11 * a[j];
        h.h12[j] = r * d.c11 * (a[j] * d.c12 + b[j] * d.c22);
        h.h22[j] = r * (d.c12 * d.c12 * a[j] + 2.0 * d.c12 * d.c22 * b[j] + d.c22 * d.c22 * c[j]);
    }
    return h;
}

HamiltonianScattering scattering_of_hamiltonian(const Hamiltonian& h, const std::vector<double>& k,
                                                double tol)
{
    Normalized nz = normalize(h);
    HamiltonianScattering out;
    out.h0_11 = h.h11[0];
    out.h0_12 = h.h12[0];
    out.h0_22 = h.h22[0];
    out.det.resize(h.n());
    for (int j = 0; j < h.n(); ++j)
        out.det[j] = h.det(j);
    out.q = potential_of(nz.h0);
    out.s.resize(k.size());
    parallel_for(k.size(), [&](std::size_t i) { out.s[i] = scattering_matrix(out.q, k[i], tol); });
    return out;
}

}  // namespace dirac
