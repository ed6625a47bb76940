#include "dirac/fourier.hpp"

#include "fft.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace dirac {

using detail::fft_inplace;
using detail::good_fft_size;

std::vector<double> SpectralGrid::k_values() const
{
    std::vector<double> out(values.size());
    for (int j = 0; j < size(); ++j)
        out[j] = k(j);
    return out;
}

SpectralGrid make_grid(double kmax, int nk)
{
    if (nk < 2 || !(kmax > 0.0))
        throw Error(ErrorKind::Parameter, "spectral grid: need kmax > 0 and nk >= 2");
    SpectralGrid g;
    g.k0 = -kmax;
    g.dk = 2.0 * kmax / (nk - 1);
    g.values.assign(nk, 0.0);
    return g;
}

SpectralGrid make_grid_spacing(double kmax, double dk)
{
    int half = static_cast<int>(std::ceil(kmax / dk - 1e-9));
    SpectralGrid g;
    g.dk = dk;
    g.k0 = -half * dk;
    g.values.assign(2 * half + 1, 0.0);
    return g;
}

SpectralGrid sample(const Evaluator& f, const SpectralGrid& shape)
{
    SpectralGrid g = shape;
    parallel_for(g.values.size(), [&](std::size_t j) { g.values[j] = f(cplx(g.k(j), 0.0)); });
    return g;
}

namespace {

double trap_weight(int j, int n) { return (j == 0 || j == n - 1) ? 0.5 : 1.0; }

}  // namespace

SpectralGrid forward_transform(const Profile& g, double k0, double dk, int nk)
{
    int ns = g.size();
    if (ns < 2 || nk < 1 || !(dk > 0.0) || !(g.ds > 0.0))
        throw Error(ErrorKind::Parameter, "forward_transform: invalid grids");
    double window = (ns - 1) * g.ds;
    if (dk > kPi / (2.0 * window) * (1.0 + 1e-12))
        throw Error(ErrorKind::Parameter,
                    "forward_transform: aliasing guard, dk exceeds pi/(2 window)");
    SpectralGrid out;
    out.k0 = k0;
    out.dk = dk;
    out.values.assign(nk, 0.0);
    double Mr = kPi / (dk * g.ds);
    long M = std::lround(Mr);
    bool fft_ok = std::abs(Mr - M) < 1e-9 * Mr && M >= std::max(ns, nk) && M <= (1L << 24);
    if (fft_ok) {
        std::vector<cplx> x(M, 0.0);
        for (int m = 0; m < ns; ++m)
            x[m] = trap_weight(m, ns) * g.values[m] * std::polar(1.0, 2.0 * k0 * m * g.ds);
        fft_inplace(x, +1);
        for (int i = 0; i < nk; ++i)
            out.values[i] = g.ds * std::polar(1.0, 2.0 * out.k(i) * g.s0) * x[i];
        return out;
    }
    parallel_for(nk, [&](std::size_t i) {
        double k = out.k(static_cast<int>(i));
        cplx acc = 0.0;
        cplx rot = std::polar(1.0, 2.0 * k * g.ds);
        cplx e = std::polar(1.0, 2.0 * k * g.s0);
        for (int m = 0; m < ns; ++m) {
            acc += trap_weight(m, ns) * g.values[m] * e;
            e *= rot;
        }
        out.values[i] = g.ds * acc;
    });
    return out;
}

InverseResult inverse_transform(const SpectralGrid& f, int pad)
{
    int n = f.size();
    if (n < 2)
        throw Error(ErrorKind::Parameter, "inverse_transform: need at least 2 nodes");
    int M = good_fft_size(std::max(2, pad) * n);
    if (M % 2)
        M = good_fft_size(M + 1);
    double ds = kPi / (M * f.dk);
    std::vector<cplx> x(M, 0.0);
    for (int j = 0; j < n; ++j)
        x[j] = trap_weight(j, n) * f.values[j] * ((j % 2) ? -1.0 : 1.0);
    fft_inplace(x, -1);
    InverseResult r;
    r.profile.s0 = -(M / 2) * ds;
    r.profile.ds = ds;
    r.profile.values.resize(M);
    for (int m = 0; m < M; ++m) {
        double s = r.profile.s(m);
        r.profile.values[m] = f.dk / kPi * std::polar(1.0, -2.0 * f.k0 * s) * x[m];
    }
    double peak = 0.0;
    for (const auto& v : f.values)
        peak = std::max(peak, std::abs(v));
    double edge = std::max(std::abs(f.values.front()), std::abs(f.values.back()));
    r.tail_ratio = peak > 0.0 ? edge / peak : 0.0;
    r.tail_warning = r.tail_ratio > 1e-6;
    return r;
}

namespace {

double factorial(int n)
{
    double f = 1.0;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

struct ModelTerm {
    double point;
    bool start;
    int order;  // 1 = jump, 2 = kink, ...
    cplx coef;

    cplx spectral(double k, double mu) const
    {
        cplx den = start ? cplx(mu, -2.0 * k) : cplx(mu, 2.0 * k);
        return std::polar(1.0, 2.0 * k * point) / std::pow(den, order);
    }

    double profile_basis(double s, double mu) const
    {
        double d = start ? s - point : point - s;
        if (d < 0.0)
            return 0.0;
        return std::pow(d, order - 1) / factorial(order - 1) * std::exp(-mu * d);
    }
};

std::vector<ModelTerm> fit_model(const SpectralGrid& f, const EdgeModel& em)
{
    std::vector<ModelTerm> terms;
    for (double a : em.starts)
        for (int o = 1; o <= em.orders; ++o)
            terms.push_back({a, true, o, 0.0});
    for (double b : em.ends)
        for (int o = 1; o <= em.orders; ++o)
            terms.push_back({b, false, o, 0.0});
    if (terms.empty())
        return terms;
    double K = std::min(std::abs(f.k(0)), std::abs(f.kmax()));
    std::vector<int> rows;
    for (int j = 0; j < f.size(); ++j) {
        double ak = std::abs(f.k(j));
        if (ak >= em.band_lo * K && ak <= em.band_hi * K)
            rows.push_back(j);
    }
    if (rows.size() < 2 * terms.size())
        throw Error(ErrorKind::Numerical, "inverse_transform: fitting band too small");
    Eigen::MatrixXcd A(rows.size(), terms.size());
    Eigen::VectorXcd rhs(rows.size());
    Eigen::VectorXd colscale(terms.size());
    for (std::size_t c = 0; c < terms.size(); ++c)
        colscale(c) = std::pow(2.0 * K, terms[c].order);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        double k = f.k(rows[r]);
        for (std::size_t c = 0; c < terms.size(); ++c)
            A(r, c) = terms[c].spectral(k, em.mu) * colscale(c);
        rhs(r) = f.values[rows[r]];
    }
    Eigen::VectorXcd sol = A.colPivHouseholderQr().solve(rhs);
    for (std::size_t c = 0; c < terms.size(); ++c)
        terms[c].coef = sol(c) * colscale(c);
    return terms;
}

}  // namespace

Profile inverse_transform_at(const SpectralGrid& f, double s0, double ds, int ns,
                             const std::optional<EdgeModel>& model)
{
    int n = f.size();
    std::vector<cplx> rem = f.values;
    std::vector<ModelTerm> terms;
    if (model) {
        terms = fit_model(f, *model);
        for (int j = 0; j < n; ++j) {
            cplx m = 0.0;
            for (const auto& t : terms)
                m += t.coef * t.spectral(f.k(j), model->mu);
            rem[j] -= m;
        }
    }
    for (int j = 0; j < n; ++j)
        rem[j] *= trap_weight(j, n);
    Profile out;
    out.s0 = s0;
    out.ds = ds;
    out.values.resize(ns);
    parallel_for(ns, [&](std::size_t i) {
        double s = s0 + static_cast<double>(i) * ds;
        cplx rot = std::polar(1.0, -2.0 * f.dk * s);
        cplx e = std::polar(1.0, -2.0 * f.k0 * s);
        cplx acc = 0.0;
        for (int j = 0; j < n; ++j) {
            acc += rem[j] * e;
            e *= rot;
            if ((j & 255) == 255)
                e = std::polar(1.0, -2.0 * f.k(j + 1) * s);
        }
        cplx v = f.dk / kPi * acc;
        for (const auto& t : terms)
            v += t.coef * t.profile_basis(s, model->mu);
        out.values[i] = v;
    });
    return out;
}

namespace {

// Masked round trip through the s-domain. mask(m, M) multiplies the DFT bin.
SpectralGrid masked(const SpectralGrid& f, int M, const std::function<double(int, int)>& mask)
{
    int n = f.size();
    std::vector<cplx> x(M, 0.0);
    std::copy(f.values.begin(), f.values.end(), x.begin());
    fft_inplace(x, -1);
    for (int m = 0; m < M; ++m)
        x[m] *= mask(m, M);
    fft_inplace(x, +1);
    SpectralGrid out = f;
    for (int j = 0; j < n; ++j)
        out.values[j] = x[j] / static_cast<double>(M);
    return out;
}

}  // namespace

SpectralGrid hardy_project(const SpectralGrid& f, int pad)
{
    int n = f.size();
    int M = pad <= 1 ? n : good_fft_size(pad * n);
    return masked(f, M, [](int m, int Mm) {
        if (m == 0)
            return 1.0;
        if (2 * m == Mm)
            return 0.0;
        return 2 * m < Mm ? 1.0 : 0.0;
    });
}

SpectralGrid analytic_completion(const SpectralGrid& u, int pad)
{
    int n = u.size();
    int M = good_fft_size(std::max(1, pad) * n);
    if (M % 2)
        M = good_fft_size(M + 1);
    return masked(u, M, [](int m, int Mm) {
        if (m == 0 || 2 * m == Mm)
            return 1.0;
        return 2 * m < Mm ? 2.0 : 0.0;
    });
}

std::pair<double, double> exponential_types(const Evaluator& f, double scale)
{
    const int J = 16;
    Eigen::MatrixXd A(J, 4);
    Eigen::VectorXd up(J), down(J);
    for (int j = 0; j < J; ++j) {
        double y = (10.0 + 30.0 * j / (J - 1)) / scale;
        A(j, 0) = y;
        A(j, 1) = std::log(y);
        A(j, 2) = 1.0;
        A(j, 3) = 1.0 / y;
        double fu = std::abs(f(cplx(0.0, y)));
        double fd = std::abs(f(cplx(0.0, -y)));
        if (!(fu > 0.0) || !(fd > 0.0) || !std::isfinite(fu) || !std::isfinite(fd))
            throw Error(ErrorKind::Numerical, "support_hull: degenerate or non-decaying input");
        up(j) = std::log(fu);
        down(j) = std::log(fd);
    }
    auto qr = A.colPivHouseholderQr();
    Eigen::VectorXd cu = qr.solve(up);
    Eigen::VectorXd cd = qr.solve(down);
    return {cu(0), cd(0)};
}

SupportEstimate support_hull(const SpectralGrid& f, double threshold, const Evaluator& off_axis,
                             double scale)
{
    if (!(threshold > 0.0))
        throw Error(ErrorKind::Parameter, "support_hull: threshold must be positive");
    double peak = 0.0;
    for (const auto& v : f.values)
        peak = std::max(peak, std::abs(v));
    if (peak == 0.0)
        throw Error(ErrorKind::Numerical, "support_hull: zero input has empty support");
    SupportEstimate est;
    if (off_axis) {
        auto [tp, tm] = exponential_types(off_axis, scale);
        est.tau_plus = tp;
        est.tau_minus = tm;
        est.inf_supp = -tp / 2.0;
        est.sup_supp = tm / 2.0;
        est.has_types = true;
        return est;
    }
    double edge = std::max(std::abs(f.values.front()), std::abs(f.values.back()));
    if (edge > 1e-2 * peak)
        throw Error(ErrorKind::Numerical, "support_hull: input does not decay at grid edges");
    SpectralGrid tapered = f;
    double K = std::max(std::abs(f.k(0)), std::abs(f.kmax()));
    for (int j = 0; j < f.size(); ++j) {
        double c = std::cos(0.5 * kPi * f.k(j) / K);
        tapered.values[j] *= c * c;
    }
    auto inv = inverse_transform(tapered, 4).profile;
    double gmax = 0.0;
    for (const auto& v : inv.values)
        gmax = std::max(gmax, std::abs(v));
    int first = -1, last = -1;
    for (int m = 0; m < inv.size(); ++m) {
        if (std::abs(inv.values[m]) > threshold * gmax) {
            if (first < 0)
                first = m;
            last = m;
        }
    }
    est.inf_supp = inv.s(first);
    est.sup_supp = inv.s(last);
    return est;
}

double l2_norm(const SpectralGrid& f)
{
    double acc = 0.0;
    for (int j = 0; j < f.size(); ++j)
        acc += trap_weight(j, f.size()) * std::norm(f.values[j]);
    return std::sqrt(acc * f.dk);
}

double l2_norm(const Profile& g)
{
    double acc = 0.0;
    for (int j = 0; j < g.size(); ++j)
        acc += trap_weight(j, g.size()) * std::norm(g.values[j]);
    return std::sqrt(acc * g.ds);
}

}  // namespace dirac
