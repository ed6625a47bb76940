#include "dirac/glm.hpp"

#include "dirac/factor.hpp"
#include "fft.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace dirac {

Side parse_side(const std::string& name)
{
    if (name == "left")
        return Side::Left;
    if (name == "right")
        return Side::Right;
    throw Error(ErrorKind::Parameter, "side must be left or right");
}

SpectralGrid reflection_from_ab(const SpectralGrid& a, const SpectralGrid& b, Side side)
{
    if (a.size() != b.size())
        throw Error(ErrorKind::Parameter, "reflection: a and b grids differ");
    SpectralGrid r = b;
    for (int j = 0; j < r.size(); ++j) {
        r.values[j] = side == Side::Left ? b.values[j] / a.values[j]
                                         : -std::conj(b.values[j]) / a.values[j];
        if (!(std::abs(r.values[j]) < 1.0))
            throw Error(ErrorKind::Class, "reflection: |r| >= 1 on the grid");
    }
    return r;
}

ReflectionData make_reflection_data(const SpectralGrid& r, Side side, double support_lo,
                                    double gamma, int n, bool edge_model)
{
    for (const auto& v : r.values)
        if (!(std::abs(v) < 1.0))
            throw Error(ErrorKind::Class, "reflection data: |r| >= 1 on the grid");
    ReflectionData rd;
    rd.side = side;
    rd.r = r;
    double h = gamma / (n - 1);
    double lo = side == Side::Right ? -(support_lo + gamma) : support_lo;
    std::optional<EdgeModel> em;
    if (edge_model) {
        EdgeModel m;
        m.starts = {lo};
        m.ends = {lo + gamma};
        m.mu = 4.0 / gamma;
        em = m;
    }
    rd.kernel = inverse_transform_at(r, lo, h, n, em);
    double peak = 0.0;
    for (const auto& v : r.values)
        peak = std::max(peak, std::abs(v));
    double edge = std::max(std::abs(r.values.front()), std::abs(r.values.back()));
    double K = std::max(std::abs(r.k(0)), std::abs(r.kmax()));
    // Without the edge model the L2 tail beyond K of a c/k decay is c / sqrt(K).
    rd.truncation_estimate = edge_model ? edge / (K * K) : edge * std::sqrt(K / kPi);
    (void)peak;
    return rd;
}

OmegaKernel glm_kernel(const ReflectionData& r)
{
    OmegaKernel om;
    om.side = r.side;
    om.h = r.kernel.ds;
    int n = r.kernel.size();
    om.omega12.resize(n);
    if (r.side == Side::Right) {
        // u = -v, so reverse the kernel grid.
        om.u0 = -r.kernel.s(n - 1);
        for (int p = 0; p < n; ++p)
            om.omega12[p] = r.kernel.values[n - 1 - p];
    } else {
        om.u0 = r.kernel.s0;
        for (int p = 0; p < n; ++p)
            om.omega12[p] = std::conj(r.kernel.values[p]);
    }
    return om;
}

namespace {

using detail::fft_inplace;
using detail::good_fft_size;

// Hankel operator v -> sum_l psi_{j+l} v_l (psi zero beyond its length), with
// the antidiagonal half weight already folded into psi.
class Hankel {
public:
    explicit Hankel(const std::vector<cplx>& psi) : m_(static_cast<int>(psi.size()))
    {
        L_ = good_fft_size(2 * m_ - 1);
        spec_.assign(L_, 0.0);
        std::copy(psi.begin(), psi.end(), spec_.begin());
        fft_inplace(spec_, -1);
    }

    void apply(const std::vector<cplx>& v, std::vector<cplx>& out) const
    {
        std::vector<cplx> w(L_, 0.0);
        for (int l = 0; l < m_; ++l)
            w[l] = v[m_ - 1 - l];
        fft_inplace(w, -1);
        for (int i = 0; i < L_; ++i)
            w[i] *= spec_[i];
        fft_inplace(w, +1);
        out.resize(m_);
        for (int j = 0; j < m_; ++j)
            out[j] = w[j + m_ - 1] / static_cast<double>(L_);
    }

private:
    int m_;
    int L_;
    std::vector<cplx> spec_;
};

struct LocalSolve {
    std::vector<cplx> y;  // Gamma12 on the window
    std::vector<cplx> z;  // Gamma11 on the window
    double condition = 1.0;
};

// psi_p = Omega_12 at the p-th kernel argument, p = 0..m-1.
LocalSolve solve_window(const std::vector<cplx>& psi, double h, bool want_condition,
                        bool want_z)
{
    int m = static_cast<int>(psi.size());
    LocalSolve out;
    std::vector<double> d(m), sd(m);
    for (int l = 0; l < m; ++l) {
        d[l] = h * (l == 0 ? 0.5 : 1.0);
        sd[l] = std::sqrt(d[l]);
    }
    std::vector<cplx> pt = psi;
    pt[m - 1] *= 0.5;
    std::vector<cplx> rhs(m);
    for (int j = 0; j < m; ++j)
        rhs[j] = -sd[j] * psi[j];
    std::vector<cplx> yt;
    const int dense_limit = 96;
    if (m <= dense_limit) {
        Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(m, m);
        for (int j = 0; j < m; ++j)
            for (int l = 0; l + j < m; ++l)
                G(j, l) = sd[j] * pt[j + l] * sd[l];
        Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(m, m) - G * G.conjugate();
        Eigen::VectorXcd b(m);
        for (int j = 0; j < m; ++j)
            b(j) = rhs[j];
        Eigen::LLT<Eigen::MatrixXcd> llt(M);
        if (llt.info() != Eigen::Success)
            throw Error(ErrorKind::Class, "glm: Nystrom matrix not positive definite (|r| >= 1?)");
        Eigen::VectorXcd sol = llt.solve(b);
        yt.assign(sol.data(), sol.data() + m);
        if (want_condition) {
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G);
            double s = svd.singularValues()(0);
            out.condition = s < 1.0 ? 1.0 / (1.0 - s * s) : 1e300;
        }
    } else {
        Hankel H(pt);
        std::vector<cplx> tmp(m), tmp2(m);
        auto applyG = [&](const std::vector<cplx>& v, std::vector<cplx>& o) {
            for (int l = 0; l < m; ++l)
                tmp[l] = sd[l] * v[l];
            H.apply(tmp, o);
            for (int j = 0; j < m; ++j)
                o[j] *= sd[j];
        };
        auto applyM = [&](const std::vector<cplx>& v, std::vector<cplx>& o) {
            // conj(G) v = conj(G conj(v))
            for (int l = 0; l < m; ++l)
                tmp2[l] = std::conj(v[l]);
            std::vector<cplx> gv;
            applyG(tmp2, gv);
            for (int l = 0; l < m; ++l)
                gv[l] = std::conj(gv[l]);
            std::vector<cplx> ggv;
            applyG(gv, ggv);
            o.resize(m);
            for (int j = 0; j < m; ++j)
                o[j] = v[j] - ggv[j];
        };
        // Conjugate gradients on the Hermitian positive definite system.
        yt.assign(m, 0.0);
        std::vector<cplx> r = rhs, p = rhs, Ap;
        double rr = 0.0, bnorm = 0.0;
        for (int j = 0; j < m; ++j)
            rr += std::norm(r[j]);
        bnorm = std::sqrt(rr);
        int it = 0;
        while (std::sqrt(rr) > 1e-14 * bnorm && it < 2000) {
            applyM(p, Ap);
            cplx pAp = 0.0;
            for (int j = 0; j < m; ++j)
                pAp += std::conj(p[j]) * Ap[j];
            if (!(pAp.real() > 0.0))
                throw Error(ErrorKind::Class,
                            "glm: Nystrom matrix not positive definite (|r| >= 1?)");
            double alpha = rr / pAp.real();
            double rr_new = 0.0;
            for (int j = 0; j < m; ++j) {
                yt[j] += alpha * p[j];
                r[j] -= alpha * Ap[j];
                rr_new += std::norm(r[j]);
            }
            double beta = rr_new / rr;
            for (int j = 0; j < m; ++j)
                p[j] = r[j] + beta * p[j];
            rr = rr_new;
            ++it;
        }
        if (it >= 2000)
            throw Error(ErrorKind::Numerical, "glm: conjugate gradients did not converge");
        if (want_condition) {
            // Power iteration for ||G||^2 = largest eigenvalue of G G^H.
            std::vector<cplx> v(m, 1.0 / std::sqrt(static_cast<double>(m))), w;
            double lam = 0.0;
            for (int k = 0; k < 60; ++k) {
                applyM(v, w);
                double nrm = 0.0;
                cplx ray = 0.0;
                for (int j = 0; j < m; ++j) {
                    w[j] = v[j] - w[j];
                    ray += std::conj(v[j]) * w[j];
                    nrm += std::norm(w[j]);
                }
                lam = ray.real();
                nrm = std::sqrt(nrm);
                if (nrm == 0.0)
                    break;
                for (int j = 0; j < m; ++j)
                    v[j] = w[j] / nrm;
            }
            out.condition = lam < 1.0 ? 1.0 / (1.0 - lam) : 1e300;
        }
    }
    out.y.resize(m);
    for (int j = 0; j < m; ++j)
        out.y[j] = yt[j] / sd[j];
    if (want_z) {
        // Gamma11 = -conj(Phi) D y
        out.z.assign(m, 0.0);
        for (int j = 0; j < m; ++j) {
            cplx acc = 0.0;
            for (int l = 0; l + j < m; ++l)
                acc += std::conj(pt[j + l]) * d[l] * out.y[l];
            out.z[j] = -acc;
        }
    }
    return out;
}

}  // namespace

GlmSolution solve_glm(const OmegaKernel& om, bool keep_kernels)
{
    int P = om.size();
    GlmSolution sol;
    sol.x.resize(P);
    sol.q.resize(P);
    if (keep_kernels)
        sol.kernels.resize(P);
    std::vector<double> conds(P, 1.0);
    parallel_for(P, [&](std::size_t ii) {
        int i = static_cast<int>(ii);
        double x = om.u0 + i * om.h;
        // Window length in nodes and the kernel arguments u = x +- s.
        int m = om.side == Side::Right ? P - i : i + 1;
        std::vector<cplx> psi(m);
        for (int p = 0; p < m; ++p)
            psi[p] = om.side == Side::Right ? om.omega12[i + p] : om.omega12[i - p];
        bool want_cond = (i % 32 == 0) || m > P / 2;
        LocalSolve ls = solve_window(psi, om.h, want_cond && (i % 8 == 0), keep_kernels);
        conds[i] = ls.condition;
        sol.x[i] = x;
        sol.q[i] = om.side == Side::Right ? -ls.y[0] : ls.y[0];
        if (keep_kernels) {
            TransformationKernel& tk = sol.kernels[i];
            tk.x = x;
            tk.s.resize(m);
            for (int p = 0; p < m; ++p)
                tk.s[p] = om.side == Side::Right ? p * om.h : -p * om.h;
            tk.g12 = ls.y;
            tk.g11 = ls.z;
        }
    });
    sol.max_condition = *std::max_element(conds.begin(), conds.end());
    if (sol.max_condition > 1e12)
        throw Error(ErrorKind::Class, "glm: ill-conditioned system, data inconsistent with |r| < 1");
    return sol;
}

InversionGrid default_inversion_grid(double gamma)
{
    InversionGrid g;
    g.kmax = 96.0 / gamma;
    g.dk = kPi / (32.0 * gamma);
    return g;
}

SpectralGrid left_right(const SpectralGrid& r, Side from)
{
    (void)from;
    SpectralGrid u = r;
    for (int j = 0; j < r.size(); ++j) {
        double m2 = std::norm(r.values[j]);
        if (!(m2 < 1.0))
            throw Error(ErrorKind::Class, "left_right: |r| >= 1 on the grid");
        u.values[j] = -0.5 * std::log1p(-m2);
    }
    SpectralGrid a = outer_from_log_modulus(u);
    SpectralGrid out = r;
    for (int j = 0; j < r.size(); ++j)
        out.values[j] = -std::conj(r.values[j]) * std::conj(a.values[j]) / a.values[j];
    return out;
}

Potential invert_reflection(const SpectralGrid& r, Side side, double gamma, int n,
                            double support_lo, double* condition, bool extrapolate, bool edge_model)
{
    if (n < 2 || !(gamma > 0.0))
        throw Error(ErrorKind::Parameter, "invert: invalid n or gamma");
    Potential q;
    q.gamma = gamma;
    q.offset = support_lo;
    if (!extrapolate) {
        OmegaKernel om = glm_kernel(make_reflection_data(r, side, support_lo, gamma, n, edge_model));
        GlmSolution sol = solve_glm(om);
        if (condition)
            *condition = sol.max_condition;
        q.samples = samples_from_point_values(sol.q);
        return q;
    }
    // Richardson step on the h^2 error of the trapezoid rule: one kernel on
    // 2n - 1 nodes, solved at full and at every second node.
    OmegaKernel fine = glm_kernel(make_reflection_data(r, side, support_lo, gamma, 2 * n - 1, edge_model));
    OmegaKernel coarse = fine;
    coarse.h = 2.0 * fine.h;
    coarse.omega12.clear();
    for (int p = 0; p < fine.size(); p += 2)
        coarse.omega12.push_back(fine.omega12[p]);
    GlmSolution sf = solve_glm(fine);
    GlmSolution sc = solve_glm(coarse);
    if (condition)
        *condition = std::max(sf.max_condition, sc.max_condition);
    q.samples.resize(n);
    for (int i = 0; i < n; ++i)
        q.samples[i] = (4.0 * sf.q[2 * i] - sc.q[i]) / 3.0;
    q.samples = samples_from_point_values(q.samples);
    return q;
}

ForwardGrid forward_grid(const Potential& q, const InversionGrid& grid, double tol)
{
    SpectralGrid shape = make_grid_spacing(grid.kmax, grid.dk);
    ForwardGrid fg;
    fg.a = shape;
    fg.b = shape;
    parallel_for(shape.values.size(), [&](std::size_t j) {
        Transition t = transition(q, cplx(shape.k(static_cast<int>(j)), 0.0), tol);
        fg.a.values[j] = t.a;
        fg.b.values[j] = t.b;
    });
    return fg;
}

InvertReport invert_from_b(const Evaluator& b, double gamma, int n, Side side, const Evaluator& a,
                           std::optional<InversionGrid> grid)
{
    InversionGrid g = grid ? *grid : default_inversion_grid(gamma);
    SpectralGrid bg = sample(b, make_grid_spacing(g.kmax, g.dk));
    SpectralGrid ag = a ? sample(a, bg) : a_from_b_grid(bg);
    SpectralGrid r = reflection_from_ab(ag, bg, side);
    InvertReport rep;
    rep.q = invert_reflection(r, side, gamma, n, 0.0, &rep.condition);
    bool nonzero = false;
    for (const auto& v : bg.values)
        nonzero = nonzero || std::abs(v) > 0.0;
    if (nonzero) {
        SupportEstimate est = support_hull(bg, 1e-6, b, gamma);
        rep.hull_lo = est.inf_supp;
        rep.hull_hi = est.sup_supp;
        double cell = gamma / (n - 1);
        rep.class_p = std::abs(est.inf_supp) <= cell && std::abs(est.sup_supp - gamma) <= cell;
    } else {
        rep.class_p = false;
    }
    return rep;
}

}  // namespace dirac
