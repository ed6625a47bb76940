#include "dirac/jost.hpp"

#include <algorithm>
#include <cmath>

namespace dirac {

double Mat2::max_abs_diff(const Mat2& o) const
{
    return std::max({std::abs(m11 - o.m11), std::abs(m12 - o.m12), std::abs(m21 - o.m21),
                     std::abs(m22 - o.m22)});
}

Mat2 free_propagator(cplx k, double x)
{
    cplx e = std::exp(kI * k * x);
    return {e, 0.0, 0.0, 1.0 / e};
}

namespace {

// Dormand-Prince 4(5) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

// Linear q on one cell: q(x) = exp(i(phase + 2 carrier x)) (q0 + slope (x - x0)).
struct Cell {
    double x0, x1;
    cplx q0, slope;
    double phase, carrier;

    cplx at(double x) const
    {
        cplx v = q0 + slope * (x - x0);
        if (phase != 0.0 || carrier != 0.0)
            v *= std::polar(1.0, phase + 2.0 * carrier * x);
        return v;
    }
};

template <int N>
using State = std::array<cplx, N>;

// Reduced-gauge right-hand side. N = 4: m only; N = 8: m and dm/dk.
template <int N>
inline void rhs(const Cell& cell, cplx k, double x, const State<N>& y, State<N>& dy)
{
    cplx q = cell.at(x);
    cplx qb = std::conj(q);
    cplx two_ik = 2.0 * kI * k;
    dy[0] = q * y[2];
    dy[1] = q * y[3] + two_ik * y[1];
    dy[2] = qb * y[0] - two_ik * y[2];
    dy[3] = qb * y[1];
    if constexpr (N == 8) {
        dy[4] = q * y[6];
        dy[5] = q * y[7] + two_ik * y[5] + 2.0 * kI * y[1];
        dy[6] = qb * y[4] - two_ik * y[6] - 2.0 * kI * y[2];
        dy[7] = qb * y[5];
    }
}

template <int N>
void integrate_cell(const Cell& cell, cplx k, double from, double to, State<N>& y, double tol,
                    double& h_guess, PropagateStats* stats)
{
    double dir = to > from ? 1.0 : -1.0;
    double len = std::abs(to - from);
    if (len == 0.0)
        return;
    double x = from;
    double h = std::min(h_guess, len);
    State<N> k1, k2, k3, k4, k5, k6, k7, yt, y5;
    rhs<N>(cell, k, x, y, k1);
    long guard = 0;
    for (;;) {
        double remaining = std::abs(to - x);
        if (remaining <= 1e-15 * (1.0 + std::abs(to)))
            break;
        bool last = h >= remaining;
        if (last)
            h = remaining;
        double hs = dir * h;
        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + hs * a21 * k1[i];
        rhs<N>(cell, k, x + c2 * hs, yt, k2);
        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
        rhs<N>(cell, k, x + c3 * hs, yt, k3);
        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs<N>(cell, k, x + c4 * hs, yt, k4);
        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs<N>(cell, k, x + c5 * hs, yt, k5);
        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                 a65 * k5[i]);
        double xn = last ? to : x + hs;
        rhs<N>(cell, k, xn, yt, k6);
        for (int i = 0; i < N; ++i)
            y5[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs<N>(cell, k, xn, y5, k7);
        double err = 0.0;
        for (int i = 0; i < N; ++i) {
            cplx e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                           e7 * k7[i]);
            double scale = std::max(1.0, std::max(std::abs(y[i]), std::abs(y5[i])));
            err = std::max(err, std::abs(e) / scale);
        }
        double allowed = tol * h;
        if (!std::isfinite(err))
            throw Error(ErrorKind::Numerical, "propagate: non-finite state");
        if (err <= allowed) {
            x = xn;
            y = y5;
            k1 = k7;
            if (stats)
                ++stats->steps;
            double fac = err == 0.0 ? 5.0 : 0.9 * std::pow(allowed / err, 0.25);
            fac = std::clamp(fac, 0.2, 5.0);
            h_guess = h * fac;
            if (last)
                break;
            h = h_guess;
        } else {
            if (stats)
                ++stats->rejected;
            double fac = 0.9 * std::pow(allowed / err, 0.25);
            h *= std::clamp(fac, 0.1, 0.9);
        }
        if (h < 1e-14 * (1.0 + std::abs(x)) || ++guard > 50000000)
            throw Error(ErrorKind::Numerical, "propagate: step size underflow");
    }
}

// Builds the linear cells of q restricted to [from, to] (either order).
std::vector<Cell> cells_between(const Potential& q, double lo, double hi)
{
    std::vector<Cell> cells;
    auto bp = q.breakpoints();
    double h = q.step();
    for (std::size_t c = 0; c + 1 < bp.size(); ++c) {
        int j0 = bp[c], j1 = bp[c + 1];
        double x0 = q.node(j0), x1 = q.node(j1);
        if (c + 2 == bp.size())
            x1 = q.hi();
        if (x1 <= lo || x0 >= hi)
            continue;
        Cell cell;
        cell.x0 = x0;
        cell.x1 = x1;
        cell.q0 = q.samples[j0];
        cell.slope = (q.samples[j0 + 1] - q.samples[j0]) / h;
        cell.phase = q.phase;
        cell.carrier = q.carrier;
        cells.push_back(cell);
    }
    return cells;
}

// Integrates the reduced state from x_from to x_to through the support.
template <int N>
void integrate_support(const Potential& q, cplx k, double x_from, double x_to, State<N>& y,
                       double tol, PropagateStats* stats)
{
    double lo = std::max(std::min(x_from, x_to), q.lo());
    double hi = std::min(std::max(x_from, x_to), q.hi());
    if (hi <= lo)
        return;
    auto cells = cells_between(q, lo, hi);
    double h_guess = std::min(q.gamma, 0.5 / (1.0 + std::abs(k) + q.max_abs()));
    if (x_to < x_from) {
        for (auto it = cells.rbegin(); it != cells.rend(); ++it) {
            double a = std::min(it->x1, hi), b = std::max(it->x0, lo);
            integrate_cell<N>(*it, k, a, b, y, tol, h_guess, stats);
        }
    } else {
        for (const auto& cell : cells) {
            double a = std::max(cell.x0, lo), b = std::min(cell.x1, hi);
            integrate_cell<N>(cell, k, a, b, y, tol, h_guess, stats);
        }
    }
}

void check_tol(double tol)
{
    if (!(tol >= 1e-13 && tol <= 1e-6))
        throw Error(ErrorKind::Parameter, "propagate: tol must lie in [1e-13, 1e-6]");
}

}  // namespace

Mat2 propagate(const Potential& q, cplx k, double x_from, double x_to, const Mat2& init, double tol,
               PropagateStats* stats)
{
    check_tol(tol);
    if (x_from == x_to)
        return init;
    // Free motion up to the support, then the reduced system across it.
    double dir = x_to > x_from ? 1.0 : -1.0;
    double enter = dir > 0 ? std::clamp(x_from, q.lo(), q.hi()) : std::clamp(x_from, q.lo(), q.hi());
    double leave = std::clamp(x_to, q.lo(), q.hi());
    bool crosses = (dir > 0) ? (x_from < q.hi() && x_to > q.lo()) : (x_from > q.lo() && x_to < q.hi());
    if (!crosses)
        return free_propagator(k, x_to - x_from) * init;
    Mat2 f = free_propagator(k, enter - x_from) * init;
    Mat2 m = f * free_propagator(k, -enter);
    State<4> y{m.m11, m.m12, m.m21, m.m22};
    integrate_support<4>(q, k, enter, leave, y, tol, stats);
    Mat2 mr{y[0], y[1], y[2], y[3]};
    Mat2 fr = mr * free_propagator(k, leave);
    return free_propagator(k, x_to - leave) * fr;
}

Mat2 transition_matrix(const Potential& q, cplx k, double tol)
{
    check_tol(tol);
    // m = I beyond the right end; A = e^{-ikd s3} m(d) e^{ikd s3} with d the left end.
    State<4> y{1.0, 0.0, 0.0, 1.0};
    integrate_support<4>(q, k, q.hi(), q.lo(), y, tol, nullptr);
    Mat2 m{y[0], y[1], y[2], y[3]};
    if (q.lo() != 0.0)
        m = free_propagator(k, -q.lo()) * m * free_propagator(k, q.lo());
    return m;
}

Transition transition(const Potential& q, cplx k, double tol)
{
    Mat2 A = transition_matrix(q, k, tol);
    return {A.m11, A.m21};
}

TransitionD transition_with_derivative(const Potential& q, cplx k, double tol)
{
    check_tol(tol);
    State<8> y{1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0};
    integrate_support<8>(q, k, q.hi(), q.lo(), y, tol, nullptr);
    TransitionD t;
    t.a = y[0];
    t.da = y[4];
    double d = q.lo();
    cplx ph = std::exp(2.0 * kI * k * d);
    t.b = ph * y[2];
    t.db = ph * (y[6] + 2.0 * kI * d * y[2]);
    return t;
}

TransitionCoefficients transition_coefficients(const Potential& q, const std::vector<double>& k,
                                               double tol)
{
    q.validate();
    check_tol(tol);
    TransitionCoefficients tc;
    tc.gamma = q.gamma;
    tc.k = k;
    tc.a.resize(k.size());
    tc.b.resize(k.size());
    parallel_for(k.size(), [&](std::size_t i) {
        Transition t = transition(q, cplx(k[i], 0.0), tol);
        tc.a[i] = t.a;
        tc.b[i] = t.b;
    });
    auto qp = std::make_shared<Potential>(q);
    tc.eval_a = [qp, tol](cplx z) { return transition(*qp, z, tol).a; };
    tc.eval_b = [qp, tol](cplx z) { return transition(*qp, z, tol).b; };
    tc.eval_a_d = [qp, tol](cplx z) {
        auto t = transition_with_derivative(*qp, z, tol);
        return std::make_pair(t.a, t.da);
    };
    tc.eval_b_d = [qp, tol](cplx z) {
        auto t = transition_with_derivative(*qp, z, tol);
        return std::make_pair(t.b, t.db);
    };
    return tc;
}

ScatteringMatrixValue scattering_matrix(const Potential& q, double k, double tol)
{
    Transition t = transition(q, cplx(k, 0.0), tol);
    ScatteringMatrixValue s;
    s.k = k;
    s.transmission = 1.0 / t.a;
    s.r_plus = -std::conj(t.b) / t.a;
    s.r_minus = t.b / t.a;
    s.matrix = {s.transmission, s.r_plus, s.r_minus, s.transmission};
    return s;
}

BClassResiduals b_class_residuals(const Evaluator& b, const std::vector<double>& k, double s)
{
    std::vector<cplx> plus(k.size()), minus(k.size());
    parallel_for(k.size(), [&](std::size_t i) {
        plus[i] = b(cplx(k[i], 0.0));
        minus[i] = b(cplx(-k[i], 0.0));
    });
    BClassResiduals r;
    double scale = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        cplx e = std::exp(2.0 * kI * s * k[i]) * minus[i];
        r.even = std::max(r.even, std::abs(plus[i] - e));
        r.odd = std::max(r.odd, std::abs(plus[i] + e));
        r.real = std::max(r.real, std::abs(plus[i] - std::conj(minus[i])));
        scale = std::max(scale, std::abs(plus[i]));
    }
    if (scale > 0.0) {
        r.even /= scale;
        r.odd /= scale;
        r.real /= scale;
    }
    return r;
}

}  // namespace dirac
