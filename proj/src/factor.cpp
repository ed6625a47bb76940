#include "dirac/factor.hpp"

#include <boost/math/special_functions/trigamma.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace dirac {

namespace {

bool is_real_zero(cplx z, double tol) { return std::abs(z.imag()) <= tol * std::max(1.0, std::abs(z)); }

// int_{|t| > K} (alpha+ / t^2 on t > K, alpha- / t^2 on t < -K) / (k - t) dt.
cplx tail_hilbert(cplx k, double K, double ap, double am)
{
    cplx x = k / K;
    cplx ip, im;
    if (std::abs(x) < 1e-3) {
        double K2 = K * K;
        ip = -1.0 / (2.0 * K2) - x / (3.0 * K2) - x * x / (4.0 * K2);
        im = 1.0 / (2.0 * K2) - x / (3.0 * K2) + x * x / (4.0 * K2);
    } else {
        cplx k2 = k * k;
        ip = 1.0 / (k * K) + std::log(1.0 - x) / k2;
        im = 1.0 / (k * K) - std::log(1.0 + x) / k2;
    }
    return ap * ip + am * im;
}

struct TailFit {
    double K = 0.0, ap = 0.0, am = 0.0;
};

// u ~ alpha / k^2 on each side, fitted over K/2 <= |k| <= K.
TailFit fit_tail(const SpectralGrid& u)
{
    TailFit t;
    t.K = std::max(std::abs(u.k0), std::abs(u.kmax())) + 0.5 * u.dk;
    double sp = 0.0, wp = 0.0, sm = 0.0, wm = 0.0;
    for (int j = 0; j < u.size(); ++j) {
        double k = u.k(j);
        if (std::abs(k) < 0.5 * t.K)
            continue;
        double g = 1.0 / (k * k);
        if (k > 0) {
            sp += g * u.values[j].real();
            wp += g * g;
        } else {
            sm += g * u.values[j].real();
            wm += g * g;
        }
    }
    t.ap = wp > 0 ? sp / wp : 0.0;
    t.am = wm > 0 ? sm / wm : 0.0;
    return t;
}

// Cauchy integral (1/(pi i)) int u(t)/(t - k) dt for Im k >= 0 by the midpoint
// rule on the grid cells, with a linear subtraction near the line.
cplx cauchy_log(const SpectralGrid& u, const TailFit& tail, cplx k)
{
    int n = u.size();
    double x = k.real(), y = k.imag();
    double lo = u.k0, hi = u.kmax();
    bool near = y < 8.0 * u.dk && x > lo && x < hi;
    double u0 = 0.0, u1 = 0.0;
    if (near) {
        int j = std::clamp(static_cast<int>(std::floor((x - lo) / u.dk)) - 1, 0, n - 4);
        double t = (x - u.k(j)) / u.dk;
        double v[4];
        for (int i = 0; i < 4; ++i)
            v[i] = u.values[j + i].real();
        // Cubic Lagrange value and slope.
        double l0 = -(t - 1) * (t - 2) * (t - 3) / 6.0, l1 = t * (t - 2) * (t - 3) / 2.0,
               l2 = -t * (t - 1) * (t - 3) / 2.0, l3 = t * (t - 1) * (t - 2) / 6.0;
        u0 = l0 * v[0] + l1 * v[1] + l2 * v[2] + l3 * v[3];
        double d0 = -((t - 2) * (t - 3) + (t - 1) * (t - 3) + (t - 1) * (t - 2)) / 6.0;
        double d1 = ((t - 2) * (t - 3) + t * (t - 3) + t * (t - 2)) / 2.0;
        double d2 = -((t - 1) * (t - 3) + t * (t - 3) + t * (t - 1)) / 2.0;
        double d3 = ((t - 1) * (t - 2) + t * (t - 2) + t * (t - 1)) / 6.0;
        u1 = (d0 * v[0] + d1 * v[1] + d2 * v[2] + d3 * v[3]) / u.dk;
    }
    cplx s = 0.0;
    for (int j = 0; j < n; ++j) {
        double t = u.k(j);
        s += (u.values[j].real() - u0 - u1 * (t - x)) / (t - k);
    }
    s *= u.dk;
    double a = lo - 0.5 * u.dk, b = hi + 0.5 * u.dk;
    if (near) {
        // int_a^b dt / (t - k), boundary value from above when y = 0.
        cplx L = std::log(cplx(b - x, -y)) - std::log(cplx(a - x, -y));
        s += u0 * L + u1 * ((b - a) + (k - x) * L);
    }
    cplx F = s / (kPi * kI);
    // Missing tail: u + i H u with H u = (1/pi) int u / (k - t).
    F += kI * tail_hilbert(k, tail.K, tail.ap, tail.am) / kPi;
    return F;
}

}  // namespace

void sort_for_xi(std::vector<cplx>& zeros)
{
    std::stable_sort(zeros.begin(), zeros.end(), [](cplx a, cplx b) {
        double ma = std::abs(a), mb = std::abs(b);
        double tol = 1e-9 * std::max(1.0, std::max(ma, mb));
        if (std::abs(ma - mb) > tol)
            return ma < mb;
        if (std::abs(a.real() - b.real()) > tol)
            return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

std::pair<int, cplx> leading_coefficient(const Evaluator& f, double radius)
{
    const int N = 64;
    std::vector<cplx> v(N);
    for (int j = 0; j < N; ++j)
        v[j] = f(std::polar(radius, 2.0 * kPi * j / N));
    if (std::all_of(v.begin(), v.end(), [](cplx z) { return z == 0.0; }))
        return {0, cplx(0.0)};
    double turn = 0.0;
    for (int j = 0; j < N; ++j) {
        if (v[j] == 0.0)
            throw Error(ErrorKind::Numerical, "leading_coefficient: zero on the contour");
        turn += std::arg(v[(j + 1) % N] / v[j]);
    }
    int p = static_cast<int>(std::lround(turn / (2.0 * kPi)));
    if (p < 0)
        throw Error(ErrorKind::Numerical, "leading_coefficient: pole inside the contour");
    cplx c = 0.0;
    for (int j = 0; j < N; ++j)
        c += v[j] * std::polar(std::pow(radius, -p), -2.0 * kPi * j * p / N);
    return {p, c / static_cast<double>(N)};
}

XiSequence xi_of(const Evaluator& b, const ZeroSet& zs, double realness_tol)
{
    XiSequence xi;
    xi.realness_tol = realness_tol;
    auto [p, c] = leading_coefficient(b, 0.1);
    if (std::abs(c) == 0.0)
        return xi;  // b identically zero: undefined marker
    xi.p = p;
    xi.xi0 = c / std::abs(c);
    std::vector<cplx> zeros;
    for (const auto& z : zs.zeros) {
        if (std::abs(z.location) < 0.1)
            continue;
        for (int m = 0; m < z.multiplicity; ++m)
            zeros.push_back(z.location);
    }
    sort_for_xi(zeros);
    xi.zeros = zeros;
    for (cplx z : zeros)
        xi.signs.push_back(is_real_zero(z, realness_tol) ? 0 : (z.imag() > 0 ? 1 : -1));
    xi.defined = true;
    return xi;
}

Evaluator modulus_function(const Evaluator& a)
{
    return [a](cplx k) { return a(k) * std::conj(a(std::conj(k))) - 1.0; };
}

SpectralGrid outer_from_log_modulus(const SpectralGrid& u, int pad)
{
    SpectralGrid F = analytic_completion(u, pad);
    TailFit tail = fit_tail(u);
    for (int j = 0; j < F.size(); ++j) {
        double k = F.k(j);
        cplx v(u.values[j].real(), F.values[j].imag());
        if (std::abs(k) < tail.K)
            v += kI * tail_hilbert(cplx(k, 0.0), tail.K, tail.ap, tail.am) / kPi;
        F.values[j] = std::exp(v);
    }
    return F;
}

SpectralGrid a_from_b_grid(const SpectralGrid& b)
{
    SpectralGrid u = b;
    for (auto& v : u.values)
        v = 0.5 * std::log1p(std::norm(v));
    return outer_from_log_modulus(u);
}

AFromB a_from_b(const SpectralGrid& b, const Evaluator& b_eval)
{
    AFromB out;
    out.a = a_from_b_grid(b);
    auto u = std::make_shared<SpectralGrid>(b);
    for (auto& v : u->values)
        v = 0.5 * std::log1p(std::norm(v));
    auto tail = std::make_shared<TailFit>(fit_tail(*u));
    Evaluator upper = [u, tail](cplx k) { return std::exp(cauchy_log(*u, *tail, k)); };
    out.eval = [upper, b_eval](cplx k) -> cplx {
        if (k.imag() >= 0.0)
            return upper(k);
        if (!b_eval)
            throw Error(ErrorKind::Precondition,
                        "a_from_b: values below the line need an evaluator for b");
        cplx kc = std::conj(k);
        return (1.0 + b_eval(k) * std::conj(b_eval(kc))) / std::conj(upper(kc));
    };
    return out;
}

cplx divide_out(const Evaluator& g, cplx z, cplx k, double radius)
{
    if (std::abs(k - z) > radius)
        return g(k) / (k - z);
    // Cauchy formula for the entire quotient on |w - z| = 2 radius.
    const int N = 32;
    double rho = 2.0 * radius;
    cplx s = 0.0;
    for (int j = 0; j < N; ++j) {
        cplx w = z + std::polar(rho, 2.0 * kPi * (j + 0.5) / N);
        s += g(w) / (w - k);
    }
    return s / static_cast<double>(N);
}

Rect b_zero_region(double gamma, double R)
{
    return Rect{-R - 0.0173, R + 0.0119, -12.0 / gamma - 0.0311, 12.0 / gamma + 0.0207};
}

ZeroSet modulus_zeros(const Evaluator& a, double gamma, double R)
{
    if (!(gamma > 0.0) || !(R > 0.0))
        throw Error(ErrorKind::Parameter, "modulus_zeros: gamma and R must be positive");
    Evaluator B = modulus_function(a);
    double lo = -R - 0.0173, hi = R + 0.0119;
    double eta = 0.05 / gamma;
    ZeroSet zs = find_zeros(B, Rect{lo, hi, eta, 12.0 / gamma});

    // Real zeros of B are double. Evaluation noise splits them into close
    // simple pairs, so they are located as minima of B on the line and
    // counted by winding on a small box.
    double dx = 0.1 / gamma;
    int m = static_cast<int>(std::ceil((hi - lo) / dx)) + 1;
    dx = (hi - lo) / (m - 1);
    std::vector<double> v(m);
    auto Br = [&B](double k) { return B(cplx(k, 0.0)).real(); };
    parallel_for(m, [&](std::size_t i) { v[i] = Br(lo + i * dx); });
    int real_count = 0;
    for (int i = 1; i + 1 < m; ++i) {
        if (!(v[i] <= v[i - 1] && v[i] < v[i + 1]))
            continue;
        auto [x, fx] = boost::math::tools::brent_find_minima(
            Br, lo + (i - 1) * dx, lo + (i + 1) * dx, std::numeric_limits<double>::digits / 2);
        (void)fx;
        double r = 0.4 * dx;
        int w = winding_count(B, Rect{x - r, x + r, -r, r});
        if (w == 0)
            continue;
        if (w % 2 != 0)
            throw Error(ErrorKind::Numerical,
                        "modulus_zeros: odd zero count of a a* - 1 near the real axis at k = " +
                            std::to_string(x));
        zs.zeros.push_back(Zero{cplx(x, 0.0), w, false});
        real_count += w;
    }
    int strip = winding_count(B, Rect{lo, hi, -eta, eta});
    if (strip != real_count)
        throw Error(ErrorKind::Numerical,
                    "modulus_zeros: " + std::to_string(strip) + " zeros of a a* - 1 near the axis, " +
                        std::to_string(real_count) + " located on it");
    std::vector<Zero> kept;
    for (const auto& z : zs.zeros)
        if (std::abs(z.location.real()) <= R)
            kept.push_back(z);
    zs.zeros = kept;
    zs.region = Rect{lo, hi, -eta, 12.0 / gamma};
    sort_zeros(zs.zeros);
    return zs;
}

BFromA b_from_a_xi(const Evaluator& a, const XiSequence& xi, const ZeroSet& zeros_B, double gamma,
                   double R, double support_lo, const std::vector<double>& check_grid)
{
    if (!(gamma > 0.0) || !(R > 0.0))
        throw Error(ErrorKind::Parameter, "b_from_a_xi: gamma and R must be positive");
    Evaluator B = modulus_function(a);
    auto [order, c] = leading_coefficient(B, 0.1);
    if (c == 0.0) {
        // a a* = 1: the only solution is b = 0.
        BFromA out;
        out.eval = out.raw = out.raw_half = [](cplx) { return cplx(0.0); };
        return out;
    }
    if (!xi.defined)
        throw Error(ErrorKind::Precondition, "b_from_a_xi: sign data not defined");
    if (order % 2 != 0)
        throw Error(ErrorKind::Class, "b_from_a_xi: a a* - 1 has an odd-order zero at 0");
    BFromA out;
    out.p = order / 2;
    out.abs_C = std::abs(c);
    if (out.p != xi.p)
        throw Error(ErrorKind::Precondition, "b_from_a_xi: order at 0 disagrees with the sign data");

    // Upper representatives of the zeros of b, multiplicity-expanded.
    std::vector<cplx> reps;
    for (const auto& z : zeros_B.zeros) {
        if (std::abs(z.location) < 0.1)
            continue;
        int m = z.multiplicity;
        if (is_real_zero(z.location, xi.realness_tol)) {
            if (m % 2 != 0)
                throw Error(ErrorKind::Numerical,
                            "b_from_a_xi: real zero of a a* - 1 with odd multiplicity");
            m /= 2;
        }
        for (int i = 0; i < m; ++i)
            reps.push_back(is_real_zero(z.location, xi.realness_tol)
                               ? cplx(z.location.real(), 0.0)
                               : z.location);
    }
    sort_for_xi(reps);
    std::vector<cplx> zeta;
    for (std::size_t n = 0; n < reps.size(); ++n) {
        if (std::abs(reps[n]) > R)
            break;
        int sign = n < xi.signs.size() ? xi.signs[n] : 0;
        zeta.push_back(sign < 0 ? std::conj(reps[n]) : reps[n]);
    }
    out.factors = static_cast<int>(zeta.size());

    // Tail of log prod over |zeta| > R, zeros spaced pi/gamma on each side.
    double delta = kPi / gamma;
    double zmax_p = 0.0, zmax_m = 0.0;
    for (cplx z : zeta) {
        if (z.real() >= 0)
            zmax_p = std::max(zmax_p, std::abs(z));
        else
            zmax_m = std::max(zmax_m, std::abs(z));
    }
    double zN = 0.5 * (zmax_p + zmax_m);
    if (zmax_p == 0.0 || zmax_m == 0.0)
        zN = std::max(zmax_p, zmax_m);
    if (zN == 0.0)
        zN = R;
    double S2 = boost::math::trigamma(1.0 + zN / delta) / (delta * delta);

    auto zs = std::make_shared<std::vector<cplx>>(zeta);
    cplx pref = xi.xi0 * std::sqrt(out.abs_C);
    int p = out.p;
    double shift = gamma + 2.0 * support_lo;
    auto product = [zs, pref, p, shift](cplx k, double limit) {
        cplx v = pref * std::pow(k, p) * std::exp(kI * shift * k);
        for (cplx z : *zs) {
            if (std::abs(z) > limit)
                break;
            v *= 1.0 - k / z;
        }
        return v;
    };
    out.raw = [product, R](cplx k) { return product(k, R); };
    out.raw_half = [product, R](cplx k) { return product(k, 0.5 * R); };
    out.eval = [product, R, S2](cplx k) { return product(k, R) * std::exp(-k * k * S2); };
    if (!check_grid.empty()) {
        double num = 0.0, den = 0.0;
        for (double k : check_grid) {
            cplx r = out.raw(k), h = out.raw_half(k);
            num = std::max(num, std::abs(r - h));
            den = std::max(den, std::abs(r));
        }
        out.convergence_estimate = den > 0 ? num / den : 0.0;
    }
    return out;
}

Evaluator iso_factor(const Evaluator& b, const ZeroSet& zeros, const std::vector<int>& flip,
                     double alpha, double realness_tol)
{
    Evaluator cur = b;
    cplx pref = std::polar(1.0, alpha);
    std::vector<cplx> targets;
    for (int idx : flip) {
        if (idx < 0 || idx >= static_cast<int>(zeros.zeros.size()))
            throw Error(ErrorKind::Parameter, "iso_factor: zero index out of range");
        const Zero& z = zeros.zeros[idx];
        if (is_real_zero(z.location, realness_tol))
            throw Error(ErrorKind::Precondition, "iso_factor: cannot flip a real zero");
        if (std::abs(z.location) < 1e-12)
            throw Error(ErrorKind::Precondition, "iso_factor: cannot flip the zero at 0");
        for (int m = 0; m < z.multiplicity; ++m) {
            cplx zz = z.location;
            Evaluator inner = cur;
            cur = [inner, zz](cplx k) { return divide_out(inner, zz, k); };
            // (1 - k/conj z)/(1 - k/z) = (z / conj z) (k - conj z)/(k - z)
            pref *= zz / std::conj(zz);
            targets.push_back(std::conj(zz));
        }
    }
    return [cur, pref, targets](cplx k) {
        cplx v = cur(k) * pref;
        for (cplx t : targets)
            v *= k - t;
        return v;
    };
}

Evaluator shift_zero(const Evaluator& b, cplx z_from, std::optional<cplx> z_to)
{
    cplx val = b(z_from);
    cplx slope = divide_out(b, z_from, z_from);
    if (std::abs(val) > 1e-6 * std::abs(slope) * std::max(1.0, std::abs(z_from)) + 1e-14)
        throw Error(ErrorKind::Precondition, "shift_zero: z_from is not a zero of b");
    return [b, z_from, z_to](cplx k) {
        cplx v = divide_out(b, z_from, k);
        return z_to ? v * (k - *z_to) : v;
    };
}

bool is_symmetric_a(const Evaluator& a, double tol)
{
    const cplx pts[] = {{-3.7, 0.0}, {-1.1, 0.0}, {0.4, 0.0}, {2.9, 0.0},
                        {1.3, 0.7},  {-0.6, -0.4}, {2.2, -1.5}};
    for (cplx k : pts) {
        cplx v = a(k), w = std::conj(a(-std::conj(k)));
        if (std::abs(v - w) > tol * std::max(1.0, std::abs(v)))
            return false;
    }
    return true;
}

bool resonance_move_admissible(cplx k_from, cplx k_to)
{
    double eps = 1e-12 * std::max(1.0, std::norm(k_from));
    return std::abs(k_to) >= std::abs(k_from) - 1e-12 * std::max(1.0, std::abs(k_from)) &&
           (k_to * k_to).real() <= (k_from * k_from).real() + eps;
}

Evaluator shift_resonance(const Evaluator& a, cplx k_from, cplx k_to)
{
    if (!(k_from.imag() < 0.0) || !(k_to.imag() < 0.0))
        throw Error(ErrorKind::Parameter, "shift_resonance: resonances lie in the lower half-plane");
    if (!is_symmetric_a(a))
        throw Error(ErrorKind::Precondition, "shift_resonance: a is not symmetric, a != a*(-k)");
    cplx val = a(k_from);
    cplx slope = divide_out(a, k_from, k_from);
    if (std::abs(val) > 1e-6 * std::abs(slope) * std::max(1.0, std::abs(k_from)) + 1e-14)
        throw Error(ErrorKind::Precondition, "shift_resonance: k_from is not a resonance");
    if (!resonance_move_admissible(k_from, k_to))
        throw Error(ErrorKind::Precondition,
                    "shift_resonance: move violates |k_to| >= |k_from|, Re k_to^2 <= Re k_from^2");
    double tol = 1e-9 * std::max(1.0, std::abs(k_from));
    if (std::abs(k_from.real()) <= tol) {
        // A resonance on the imaginary axis is its own mirror image.
        if (std::abs(k_to.real()) > tol)
            throw Error(ErrorKind::Parameter,
                        "shift_resonance: an imaginary resonance can only move along the axis");
        return [a, k_from, k_to](cplx k) { return divide_out(a, k_from, k) * (k - k_to); };
    }
    cplx m_from = -std::conj(k_from), m_to = -std::conj(k_to);
    Evaluator first = [a, k_from](cplx k) { return divide_out(a, k_from, k); };
    return [first, m_from, k_to, m_to](cplx k) {
        return divide_out(first, m_from, k) * (k - k_to) * (k - m_to);
    };
}

}  // namespace dirac
