#include "dirac/nlsflow.hpp"

#include <boost/math/special_functions/trigamma.hpp>

#include <algorithm>
#include <cmath>

namespace dirac {

std::vector<double> action_direct(const Evaluator& a, const std::vector<double>& k)
{
    std::vector<double> out(k.size());
    parallel_for(k.size(), [&](std::size_t i) {
        out[i] = std::log(std::abs(a(cplx(k[i], 0.0)))) / kPi;
    });
    return out;
}

ActionSeries action_series(const ZeroSet& res, double log_abs_a0, const std::vector<double>& k,
                           double R, double gamma)
{
    if (!(R > 0.0) || !(gamma > 0.0))
        throw Error(ErrorKind::Parameter, "action_series: R and gamma must be positive");
    ActionSeries out;
    out.k = k;
    out.radius = R;
    const Rect& reg = res.region;
    out.insufficient_radius = reg.re_lo > -R || reg.re_hi < R;
    double zp = 0.0, zm = 0.0;
    for (const auto& z : res.zeros) {
        double m = std::abs(z.location);
        if (m > R)
            continue;
        if (z.location.real() >= 0)
            zp = std::max(zp, m);
        else
            zm = std::max(zm, m);
    }
    double zN = (zp > 0 && zm > 0) ? 0.5 * (zp + zm) : std::max(std::max(zp, zm), R);
    double delta = kPi / gamma;
    // No resonances at all (a = 1): nothing to extrapolate.
    double S2 = (zp == 0.0 && zm == 0.0) ? 0.0
                                         : boost::math::trigamma(1.0 + zN / delta) / (delta * delta);
    out.series.resize(k.size());
    out.series_half.resize(k.size());
    out.corrected.resize(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
        double s = log_abs_a0, sh = log_abs_a0;
        for (const auto& z : res.zeros) {
            double m = std::abs(z.location);
            if (m > R)
                continue;
            double term = z.multiplicity * std::log(std::abs(1.0 - k[i] / z.location));
            s += term;
            if (m <= 0.5 * R)
                sh += term;
        }
        out.series[i] = s / kPi;
        out.series_half[i] = sh / kPi;
        out.corrected[i] = (s - k[i] * k[i] * S2) / kPi;
        out.tail_estimate = std::max(out.tail_estimate, std::abs(out.series[i] - out.series_half[i]));
    }
    return out;
}

AngleProfile angle(const XiSequence& xi, const std::vector<double>& k, double t, double gamma,
                   double support_lo, double R, const Evaluator& b)
{
    if (!xi.defined)
        throw Error(ErrorKind::Precondition, "angle: sign data not defined");
    if (!std::is_sorted(k.begin(), k.end()))
        throw Error(ErrorKind::Parameter, "angle: k grid must be increasing");
    AngleProfile out;
    out.k = k;
    out.t = t;
    std::vector<double> real_zeros;
    std::vector<std::pair<cplx, int>> complex_zeros;
    double tail_sum = 0.0;
    for (std::size_t n = 0; n < xi.zeros.size(); ++n) {
        cplx z = xi.zeros[n];
        if (xi.signs[n] == 0) {
            real_zeros.push_back(z.real());
        } else if (std::abs(z) <= R) {
            complex_zeros.push_back({z, xi.signs[n]});
            tail_sum += std::abs(z.imag()) / std::norm(z);
        }
    }
    std::sort(real_zeros.begin(), real_zeros.end());
    double kmax = 0.0;
    for (double v : k)
        kmax = std::max(kmax, std::abs(v));
    if (R < 1e299 && R > kmax)
        out.tail_bound = (kmax + R) / ((R - kmax) * (R - kmax)) * tail_sum;
    double slope = gamma + 2.0 * support_lo;
    double base = std::arg(xi.xi0);
    double tol = 1e-12 * std::max(1.0, kmax);
    out.formula.resize(k.size());
    out.valid.assign(k.size(), 1);
    for (std::size_t i = 0; i < k.size(); ++i) {
        double kk = k[i];
        // I(k): real zeros in (0, k), or minus those in (k, 0] with the zero at 0.
        int count = 0;
        for (double z : real_zeros) {
            if (std::abs(z - kk) <= tol)
                out.valid[i] = 0;
            if (kk > 0 && z > 0 && z < kk)
                ++count;
            if (kk < 0 && z < 0 && z > kk)
                --count;
        }
        if (kk < 0)
            count -= xi.p;
        if (kk == 0.0 && xi.p > 0)
            out.valid[i] = 0;
        double w = 0.0;
        for (auto [z, s] : complex_zeros) {
            double y = std::abs(z.imag());
            w += s * (std::atan((kk - z.real()) / y) + std::atan(z.real() / y));
        }
        out.formula[i] = base + slope * kk - kPi * count + w + 4.0 * kk * kk * t;
    }
    for (double z : real_zeros)
        if (z >= k.front() && z <= k.back())
            out.jumps.push_back(z);
    if (!b)
        return out;

    // Direct unwrapped arg b, anchored at the node nearest 0 with the branch
    // of arg xi0, and the -pi n rule at each real zero.
    std::vector<cplx> v(k.size());
    parallel_for(k.size(), [&](std::size_t i) { v[i] = b(cplx(k[i], 0.0)); });
    std::size_t i0 = 0;
    for (std::size_t i = 0; i < k.size(); ++i)
        if (std::abs(k[i]) < std::abs(k[i0]))
            i0 = i;
    out.direct.assign(k.size(), 0.0);
    auto jump_between = [&](double lo, double hi) {
        int m = 0;
        for (double z : real_zeros)
            if (z > lo && z < hi)
                ++m;
        if (lo < 0.0 && hi > 0.0)
            m += xi.p;
        return m;
    };
    auto principal = [](double x) { return std::remainder(x, 2.0 * kPi); };
    out.direct[i0] = base + principal(std::arg(v[i0]) - base);
    for (std::size_t i = i0 + 1; i < k.size(); ++i) {
        double jump = -kPi * jump_between(k[i - 1], k[i]);
        out.direct[i] = out.direct[i - 1] + jump + principal(std::arg(v[i] / v[i - 1]) - jump);
    }
    for (std::size_t i = i0; i-- > 0;) {
        double jump = kPi * jump_between(k[i], k[i + 1]);
        out.direct[i] = out.direct[i + 1] + jump + principal(std::arg(v[i] / v[i + 1]) - jump);
    }
    for (std::size_t i = 0; i < k.size(); ++i)
        out.direct[i] += 4.0 * k[i] * k[i] * t;
    return out;
}

double nls_energy(const Potential& q)
{
    q.validate();
    std::vector<cplx> v = q.node_values();
    double h = q.step();
    double e = 0.0;
    for (int j = 0; j + 1 < q.n(); ++j) {
        cplx d = (v[j + 1] - v[j]) / h;
        double m4 = 0.5 * (std::pow(std::norm(v[j]), 2) + std::pow(std::norm(v[j + 1]), 2));
        e += h * (std::norm(d) + m4);
    }
    return e;
}

EvolveResult evolve(const Potential& q, double t, std::optional<InversionGrid> grid)
{
    q.validate();
    InversionGrid g = grid ? *grid : default_inversion_grid(q.gamma);
    ForwardGrid fg = forward_grid(q, g);
    SpectralGrid r = reflection_from_ab(fg.a, fg.b, Side::Left);
    double rmax = 0.0, redge = 0.0;
    auto measure = [&] {
        rmax = redge = 0.0;
        for (int j = 0; j < r.size(); ++j) {
            rmax = std::max(rmax, std::abs(r.values[j]));
            if (j < 4 || j >= r.size() - 4)
                redge = std::max(redge, std::abs(r.values[j]));
        }
    };
    measure();
    // |r| is invariant under the flow but the default grid scales with 1/gamma,
    // so an evolved (wider) potential may need a wider k-window. Probe |b/a| near
    // m*kmax at a few points before paying for a full grid.
    if (!grid && rmax > 0.0 && redge > 1e-6 * rmax) {
        for (double m : {2.0, 4.0, 8.0, 16.0}) {
            double K = m * g.kmax, probe = 0.0;
            for (int j = 0; j < 4; ++j)
                for (double sgn : {-1.0, 1.0}) {
                    Transition tr = transition(q, sgn * (K - j * g.dk));
                    probe = std::max(probe, std::abs(tr.b / tr.a));
                }
            if (probe <= 1e-6 * rmax) {
                g.kmax = K;
                fg = forward_grid(q, g);
                r = reflection_from_ab(fg.a, fg.b, Side::Left);
                measure();
                break;
            }
        }
    }
    if (rmax > 0.0 && redge > 1e-6 * rmax)
        throw Error(ErrorKind::Precondition,
                    "evolve: reflection data does not decay inside the k-window; the chirped "
                    "kernel would not fit any truncation window");
    for (int j = 0; j < r.size(); ++j) {
        double k = r.k(j);
        r.values[j] *= std::polar(1.0, 4.0 * t * k * k);
    }
    EvolveResult out;
    if (rmax == 0.0) {
        out.q = q;
        return out;
    }
    InverseResult probe = inverse_transform(r, 2);
    const Profile& F = probe.profile;
    double fmax = 0.0;
    for (const auto& v : F.values)
        fmax = std::max(fmax, std::abs(v));
    int guard = std::max(2, F.size() / 20);
    double edge = 0.0;
    for (int j = 0; j < F.size(); ++j)
        if (j < guard || j >= F.size() - guard)
            edge = std::max(edge, std::abs(F.values[j]));
    if (edge > 1e-6 * fmax)
        throw Error(ErrorKind::Numerical,
                    "evolve: kernel is " + std::to_string(edge / fmax) +
                        " of its maximum at the period edge; reduce |t| or refine dk");
    // Truncation window: everything outside stays below 1e-6 of the maximum.
    int lo = F.size(), hi = -1;
    for (int j = 0; j < F.size(); ++j)
        if (std::abs(F.values[j]) >= 1e-6 * fmax) {
            lo = std::min(lo, j);
            hi = std::max(hi, j);
        }
    double outside = 0.0;
    for (int j = 0; j < F.size(); ++j)
        if (j < lo || j > hi)
            outside = std::max(outside, std::abs(F.values[j]));
    out.tail_ratio = outside / fmax;
    double h = q.step();
    double w_lo = F.s(lo) - 4.0 * h, w_hi = F.s(hi) + 4.0 * h;
    // Keep the original support inside the window.
    w_lo = std::min(w_lo, q.lo());
    w_hi = std::max(w_hi, q.hi());
    int n = static_cast<int>(std::ceil((w_hi - w_lo) / h)) + 1;
    double gamma = (n - 1) * h;
    out.window_lo = w_lo;
    out.window_hi = w_lo + gamma;
    out.q = invert_reflection(r, Side::Left, gamma, n, w_lo, &out.condition, true, false);
    return out;
}

}  // namespace dirac
