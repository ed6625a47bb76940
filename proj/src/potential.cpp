#include "dirac/potential.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace dirac {

namespace {

double param_or(const std::map<std::string, double>& p, const char* key, double fallback)
{
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

// Portable uniform draw in [-1, 1) from the raw engine output.
double uniform_pm1(std::mt19937_64& eng)
{
    return 2.0 * static_cast<double>(eng() >> 11) * 0x1.0p-53 - 1.0;
}

}  // namespace

cplx Potential::value_at_node(int j) const
{
    cplx v = samples[j];
    if (phase != 0.0 || carrier != 0.0)
        v *= std::polar(1.0, phase + 2.0 * carrier * node(j));
    return v;
}

cplx Potential::operator()(double x) const
{
    if (x < lo() || x > hi())
        return 0.0;
    double t = (x - offset) / step();
    int j = std::min(static_cast<int>(t), n() - 2);
    double f = t - j;
    cplx v = (1.0 - f) * samples[j] + f * samples[j + 1];
    if (phase != 0.0 || carrier != 0.0)
        v *= std::polar(1.0, phase + 2.0 * carrier * x);
    return v;
}

std::vector<cplx> Potential::node_values() const
{
    std::vector<cplx> out(n());
    for (int j = 0; j < n(); ++j)
        out[j] = value_at_node(j);
    return out;
}

std::vector<int> Potential::breakpoints() const
{
    std::vector<int> out{0};
    double scale = std::max(max_abs(), 1e-300);
    for (int j = 1; j + 1 < n(); ++j) {
        cplx second = samples[j + 1] - 2.0 * samples[j] + samples[j - 1];
        if (std::abs(second) > 1e-14 * scale)
            out.push_back(j);
    }
    out.push_back(n() - 1);
    return out;
}

double Potential::max_abs() const
{
    double m = 0.0;
    for (const auto& s : samples)
        m = std::max(m, std::abs(s));
    return m;
}

double Potential::l2_norm() const
{
    double acc = 0.0;
    for (int j = 0; j < n(); ++j) {
        double w = (j == 0 || j == n() - 1) ? 0.5 : 1.0;
        acc += w * std::norm(samples[j]);
    }
    return std::sqrt(acc * step());
}

void Potential::validate() const
{
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw Error(ErrorKind::Parameter, "potential: gamma must be positive");
    if (n() < 2)
        throw Error(ErrorKind::Parameter, "potential: need at least 2 samples");
    for (const auto& s : samples)
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
            throw Error(ErrorKind::Parameter, "potential: non-finite sample");
}

Potential from_function(const std::function<cplx(double)>& f, double gamma, int n)
{
    if (n < 2 || !(gamma > 0.0))
        throw Error(ErrorKind::Parameter, "potential: invalid n or gamma");
    Potential q;
    q.gamma = gamma;
    q.samples.resize(n);
    for (int j = 0; j < n; ++j)
        q.samples[j] = f(j * gamma / (n - 1));
    return q;
}

Potential generate(PotentialKind kind, double gamma, int n,
                   const std::map<std::string, double>& params, std::uint64_t seed)
{
    if (n < 2 || !(gamma > 0.0) || !std::isfinite(gamma))
        throw Error(ErrorKind::Parameter, "generate: invalid n or gamma");
    switch (kind) {
    case PotentialKind::Zero:
        return from_function([](double) { return cplx(0.0); }, gamma, n);
    case PotentialKind::Constant: {
        if (!params.count("c_re") && !params.count("c_im"))
            throw Error(ErrorKind::Parameter, "generate: constant needs parameter c");
        cplx c(param_or(params, "c_re", 0.0), param_or(params, "c_im", 0.0));
        return from_function([c](double) { return c; }, gamma, n);
    }
    case PotentialKind::Bump: {
        double amp = param_or(params, "amplitude", 1.0);
        double w = param_or(params, "width", gamma / 8.0);
        if (!(w > 0.0))
            throw Error(ErrorKind::Parameter, "generate: bump width must be positive");
        return from_function(
            [=](double x) {
                double d = (x - 0.5 * gamma) / w;
                return cplx(amp * std::exp(-0.5 * d * d));
            },
            gamma, n);
    }
    case PotentialKind::RandomBandlimited: {
        if (!params.count("bands"))
            throw Error(ErrorKind::Parameter, "generate: random_bandlimited needs a band count");
        int bands = static_cast<int>(param_or(params, "bands", 4));
        double amp = param_or(params, "amplitude", 1.0);
        if (bands < 0)
            throw Error(ErrorKind::Parameter, "generate: band count must be nonnegative");
        std::mt19937_64 eng(seed);
        std::vector<cplx> coef(2 * bands + 1);
        for (auto& c : coef) {
            double re, im;
            do {
                re = uniform_pm1(eng);
                im = uniform_pm1(eng);
            } while (re * re + im * im > 1.0);
            c = cplx(re, im) * amp / std::sqrt(2.0 * bands + 1.0);
        }
        auto f = [&](double x) {
            cplx acc = 0.0;
            for (int m = -bands; m <= bands; ++m)
                acc += coef[m + bands] * std::polar(1.0, kPi * m * x / gamma);
            return acc;
        };
        Potential q = from_function(f, gamma, n);
        // Keep both ends visibly nonzero so the hull is exactly [0, gamma].
        double floor = 0.05 * std::max(q.max_abs(), 1e-12);
        if (std::abs(q.samples.front()) < floor || std::abs(q.samples.back()) < floor) {
            for (auto& s : q.samples)
                s += cplx(3.0 * floor, 0.0);
        }
        return q;
    }
    }
    throw Error(ErrorKind::Parameter, "generate: unknown kind");
}

PotentialKind parse_potential_kind(const std::string& name)
{
    if (name == "zero")
        return PotentialKind::Zero;
    if (name == "constant")
        return PotentialKind::Constant;
    if (name == "bump")
        return PotentialKind::Bump;
    if (name == "random_bandlimited" || name == "random")
        return PotentialKind::RandomBandlimited;
    throw Error(ErrorKind::Parameter, "unknown potential kind: " + name);
}

TransformKind parse_transform_kind(const std::string& name)
{
    if (name == "reflect")
        return TransformKind::Reflect;
    if (name == "conjugate")
        return TransformKind::Conjugate;
    if (name == "phase")
        return TransformKind::Phase;
    if (name == "shift")
        return TransformKind::Shift;
    if (name == "modulate")
        return TransformKind::Modulate;
    throw Error(ErrorKind::Parameter, "unknown transform: " + name);
}

Potential transform(const Potential& q, TransformKind kind, double param)
{
    if (!std::isfinite(param))
        throw Error(ErrorKind::Parameter, "transform: parameter must be finite");
    Potential p = q;
    switch (kind) {
    case TransformKind::Reflect:
        // p(x) = q(-x): reversed samples on [-(offset+gamma), -offset].
        std::reverse(p.samples.begin(), p.samples.end());
        p.offset = -(q.offset + q.gamma);
        p.carrier = -q.carrier;
        break;
    case TransformKind::Conjugate:
        for (auto& s : p.samples)
            s = std::conj(s);
        p.phase = -q.phase;
        p.carrier = -q.carrier;
        break;
    case TransformKind::Phase:
        p.phase = q.phase + param;
        break;
    case TransformKind::Shift:
        // p(x) = q(x + s); the carrier picks up a constant phase.
        p.offset = q.offset - param;
        p.phase = q.phase + 2.0 * q.carrier * param;
        break;
    case TransformKind::Modulate:
        p.carrier = q.carrier + param;
        break;
    }
    return p;
}

Potential canonical_form(const Potential& q, double* removed_offset)
{
    Potential p;
    p.gamma = q.gamma;
    p.samples = q.node_values();
    if (removed_offset)
        *removed_offset = q.offset;
    return p;
}

SymmetryFlags classify_symmetry(const Potential& q, double tol)
{
    SymmetryFlags f;
    f.tolerance = tol;
    auto v = q.node_values();
    double scale = 0.0;
    for (const auto& s : v)
        scale = std::max(scale, std::abs(s));
    double even_dev = 0.0, odd_dev = 0.0, imag_dev = 0.0;
    int n = q.n();
    for (int j = 0; j < n; ++j) {
        even_dev = std::max(even_dev, std::abs(v[j] - v[n - 1 - j]));
        odd_dev = std::max(odd_dev, std::abs(v[j] + v[n - 1 - j]));
        imag_dev = std::max(imag_dev, std::abs(v[j].imag()));
    }
    double bound = tol * scale;
    f.real = imag_dev <= bound;
    if (scale == 0.0) {
        f.even = true;
        f.odd = false;
        return f;
    }
    f.even = even_dev <= bound;
    f.odd = odd_dev <= bound;
    return f;
}

double relative_l2(const Potential& q, const Potential& ref)
{
    if (q.n() != ref.n())
        throw Error(ErrorKind::Parameter, "relative_l2: grid mismatch");
    auto a = q.node_values();
    auto b = ref.node_values();
    double num = 0.0, den = 0.0;
    for (int j = 0; j < q.n(); ++j) {
        double w = (j == 0 || j == q.n() - 1) ? 0.5 : 1.0;
        num += w * std::norm(a[j] - b[j]);
        den += w * std::norm(b[j]);
    }
    if (den == 0.0)
        return std::sqrt(num * ref.step());
    return std::sqrt(num / den);
}

double l2_distance(const Potential& q, const Potential& p)
{
    double lo = std::min(q.lo(), p.lo());
    double hi = std::max(q.hi(), p.hi());
    double h = std::min(q.step(), p.step()) / 4.0;
    int m = static_cast<int>(std::ceil((hi - lo) / h)) + 1;
    h = (hi - lo) / (m - 1);
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
        double x = lo + j * h;
        double w = (j == 0 || j == m - 1) ? 0.5 : 1.0;
        acc += w * std::norm(q(x) - p(x));
    }
    return std::sqrt(acc * h);
}

bool satisfies_hull_convention(const Potential& q, double tol)
{
    auto v = q.node_values();
    double bound = tol * q.max_abs();
    int n = q.n();
    bool left = std::abs(v[0]) > bound || (n > 2 && std::abs(v[1]) > bound);
    bool right = std::abs(v[n - 1]) > bound || (n > 2 && std::abs(v[n - 2]) > bound);
    return left && right;
}

std::vector<cplx> samples_from_point_values(const std::vector<cplx>& g)
{
    int n = static_cast<int>(g.size());
    if (n < 4)
        return g;
    std::vector<cplx> s(n);
    for (int i = 1; i < n - 1; ++i)
        s[i] = g[i] - (g[i + 1] - 2.0 * g[i] + g[i - 1]) / 12.0;
    s[0] = g[0] - (2.0 * g[0] - 5.0 * g[1] + 4.0 * g[2] - g[3]) / 12.0;
    s[n - 1] = g[n - 1] - (2.0 * g[n - 1] - 5.0 * g[n - 2] + 4.0 * g[n - 3] - g[n - 4]) / 12.0;
    return s;
}

}  // namespace dirac
