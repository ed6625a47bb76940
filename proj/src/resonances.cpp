#include "dirac/resonances.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace dirac {

int ZeroSet::total_multiplicity() const
{
    int s = 0;
    for (const auto& z : zeros)
        s += z.multiplicity;
    return s;
}

void sort_zeros(std::vector<Zero>& zeros)
{
    std::stable_sort(zeros.begin(), zeros.end(), [](const Zero& a, const Zero& b) {
        double ma = std::abs(a.location), mb = std::abs(b.location);
        if (std::abs(ma - mb) > 1e-12 * std::max(1.0, std::max(ma, mb)))
            return ma < mb;
        return std::arg(a.location) < std::arg(b.location);
    });
}

namespace {

struct BoundaryTooClose : std::runtime_error {
    BoundaryTooClose() : std::runtime_error("winding: zero too close to the contour") {}
};

struct PointHash {
    std::size_t operator()(const std::pair<double, double>& p) const
    {
        std::size_t a = std::hash<double>()(p.first), b = std::hash<double>()(p.second);
        return a ^ (b * 0x9e3779b97f4a7c15ULL);
    }
};

// Argument bookkeeping along segments, with value and edge caches so that
// shared edges of neighbouring cells are sampled once.
class ArgTracker {
public:
    ArgTracker(const Evaluator& f, int max_refine, double max_arg, double max_segment)
        : f_(f), max_refine_(max_refine), max_arg_(max_arg), max_segment_(max_segment)
    {
    }

    cplx eval(cplx z)
    {
        auto key = std::make_pair(z.real(), z.imag());
        auto it = values_.find(key);
        if (it != values_.end())
            return it->second;
        cplx v = f_(z);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw Error(ErrorKind::Numerical, "winding: non-finite function value");
        values_.emplace(key, v);
        return v;
    }

    // Total change of arg f from A to B.
    double edge(cplx A, cplx B)
    {
        auto key = std::make_tuple(A.real(), A.imag(), B.real(), B.imag());
        auto it = edges_.find(key);
        if (it != edges_.end())
            return it->second;
        auto rkey = std::make_tuple(B.real(), B.imag(), A.real(), A.imag());
        it = edges_.find(rkey);
        if (it != edges_.end())
            return -it->second;
        double d = segment(A, B, eval(A), eval(B), 0);
        edges_.emplace(key, d);
        return d;
    }

    double contour(const Rect& r)
    {
        cplx c00(r.re_lo, r.im_lo), c10(r.re_hi, r.im_lo), c11(r.re_hi, r.im_hi),
            c01(r.re_lo, r.im_hi);
        return edge(c00, c10) + edge(c10, c11) + edge(c11, c01) + edge(c01, c00);
    }

    int winding(const Rect& r)
    {
        double total = contour(r);
        return static_cast<int>(std::lround(total / (2.0 * kPi)));
    }

    // Winding of a rectangle given as split pieces, assembled from the edges
    // of the pieces so that the cache is reused.
    const Evaluator& f() const { return f_; }

private:
    double segment(cplx A, cplx B, cplx fa, cplx fb, int depth)
    {
        double scale = std::max(std::abs(fa), std::abs(fb));
        if (std::abs(fa) < 1e-14 * scale || std::abs(fb) < 1e-14 * scale || scale == 0.0)
            throw BoundaryTooClose();
        double d = std::arg(fb / fa);
        if (std::abs(d) < max_arg_ && std::abs(B - A) <= max_segment_)
            return d;
        if (depth >= max_refine_)
            throw BoundaryTooClose();
        cplx M = (A + B) * 0.5;
        cplx fm = eval(M);
        return segment(A, M, fa, fm, depth + 1) + segment(M, B, fm, fb, depth + 1);
    }

    const Evaluator& f_;
    int max_refine_;
    double max_arg_;
    double max_segment_;
    std::unordered_map<std::pair<double, double>, cplx, PointHash> values_;
    std::map<std::tuple<double, double, double, double>, double> edges_;
};

double segment_limit(const Rect& r) { return std::max(std::max(r.width(), r.height()) / 8.0, 1e-12) ; }

}  // namespace

int winding_count(const Evaluator& f, const Rect& rect, int max_refine)
{
    ArgTracker tr(f, max_refine, kPi / 4.0, std::min(0.25, segment_limit(rect)));
    try {
        return tr.winding(rect);
    } catch (const BoundaryTooClose&) {
        throw Error(ErrorKind::Numerical,
                    "winding: refinement budget exhausted, zero near the boundary; nudge the "
                    "rectangle by about 1e-3");
    }
}

namespace {

struct Finder {
    const Evaluator& f;
    const EvaluatorD& fd;
    FindOptions opts;
    ArgTracker tracker;
    std::vector<Zero> found;

    Finder(const Evaluator& f_, const EvaluatorD& fd_, const FindOptions& o, double seg)
        : f(f_), fd(fd_), opts(o), tracker(f_, 30, kPi / 4.0, seg)
    {
    }

    std::pair<cplx, cplx> value_and_derivative(cplx z)
    {
        if (fd)
            return fd(z);
        double h = 1e-5 * std::max(1.0, std::abs(z));
        cplx fp = f(z + h), fm = f(z - h);
        return {f(z), (fp - fm) / (2.0 * h)};
    }

    bool newton(cplx z0, int mult, const Rect& cell, cplx& out)
    {
        cplx z = z0;
        double slack = 1e-6 * std::max(cell.width(), cell.height());
        for (int it = 0; it < 80; ++it) {
            auto [v, d] = value_and_derivative(z);
            if (v == 0.0) {
                out = z;
                return cell.contains(z, slack);
            }
            if (d == 0.0 || !std::isfinite(std::abs(d)))
                return false;
            cplx step = static_cast<double>(mult) * v / d;
            z -= step;
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                return false;
            if (std::abs(z - z0) > 4.0 * std::max(cell.width(), cell.height()))
                return false;
            if (std::abs(step) <= opts.tol * std::max(1.0, std::abs(z))) {
                out = z;
                return cell.contains(z, slack);
            }
        }
        return false;
    }

    void process(const Rect& cell, int w, int depth)
    {
        if (w <= 0)
            return;
        double size = std::max(cell.width(), cell.height());
        cplx center(0.5 * (cell.re_lo + cell.re_hi), 0.5 * (cell.im_lo + cell.im_hi));
        bool small = size < 1e-4 * std::max(1.0, std::abs(center));
        if (w == 1 || small) {
            cplx z;
            if (newton(center, w, cell, z)) {
                found.push_back({z, w, false});
                return;
            }
        } else {
            // A multiple zero: accept Newton's point when a tiny box around it
            // carries the whole winding number.
            cplx z;
            if (newton(center, w, cell, z)) {
                double r = 1e-5 * std::max(1.0, std::abs(z));
                Rect box{z.real() - r, z.real() + 1.01 * r, z.imag() - 0.99 * r, z.imag() + r};
                try {
                    if (cell.contains(z) && tracker.winding(box) == w) {
                        found.push_back({z, w, false});
                        return;
                    }
                } catch (const BoundaryTooClose&) {
                }
            }
        }
        if (size < opts.min_cell || depth > 60) {
            found.push_back({center, w, true});
            return;
        }
        static const double fracs[] = {0.5, 0.4637, 0.5389, 0.4213, 0.5771};
        for (double fx : fracs) {
            for (double fy : fracs) {
                double xm = cell.re_lo + fx * cell.width();
                double ym = cell.im_lo + fy * cell.height();
                Rect kids[4] = {{cell.re_lo, xm, cell.im_lo, ym},
                                {xm, cell.re_hi, cell.im_lo, ym},
                                {cell.re_lo, xm, ym, cell.im_hi},
                                {xm, cell.re_hi, ym, cell.im_hi}};
                int ws[4];
                try {
                    int sum = 0;
                    for (int c = 0; c < 4; ++c) {
                        ws[c] = tracker.winding(kids[c]);
                        sum += ws[c];
                    }
                    if (sum != w)
                        continue;
                } catch (const BoundaryTooClose&) {
                    continue;
                }
                for (int c = 0; c < 4; ++c)
                    process(kids[c], ws[c], depth + 1);
                return;
            }
        }
        found.push_back({center, w, true});
    }
};

}  // namespace

ZeroSet find_zeros(const Evaluator& f, const Rect& region, const EvaluatorD& fd,
                   const FindOptions& opts)
{
    if (!(region.width() > 0.0) || !(region.height() > 0.0))
        throw Error(ErrorKind::Parameter, "find_zeros: empty region");
    Finder finder(f, fd, opts, std::min(0.25, segment_limit(region)));
    Rect reg = region;
    int w = 0;
    bool ok = false;
    for (int attempt = 0; attempt < 6 && !ok; ++attempt) {
        try {
            w = finder.tracker.winding(reg);
            ok = true;
        } catch (const BoundaryTooClose&) {
            double nud = 1e-3 * (attempt + 1) * std::max(reg.width(), reg.height()) * 1e-2;
            reg.re_lo -= nud;
            reg.re_hi += nud;
            reg.im_lo -= nud;
            if (region.im_hi != 0.0)
                reg.im_hi += nud;
            else
                reg.im_hi -= nud;
        }
    }
    if (!ok)
        throw Error(ErrorKind::Numerical, "find_zeros: cannot place the region boundary");
    finder.process(reg, w, 0);
    // Merge clusters closer than the cluster tolerance.
    std::vector<Zero> merged;
    for (const auto& z : finder.found) {
        bool done = false;
        for (auto& m : merged) {
            if (std::abs(m.location - z.location) < opts.cluster_tol) {
                double tot = m.multiplicity + z.multiplicity;
                m.location = (m.location * static_cast<double>(m.multiplicity) +
                              z.location * static_cast<double>(z.multiplicity)) /
                             tot;
                m.multiplicity += z.multiplicity;
                m.cluster = m.cluster || z.cluster;
                done = true;
                break;
            }
        }
        if (!done)
            merged.push_back(z);
    }
    ZeroSet zs;
    zs.region = reg;
    zs.zeros = merged;
    sort_zeros(zs.zeros);
    for (const auto& z : zs.zeros)
        zs.residual_bound = std::max(zs.residual_bound, std::abs(f(z.location)));
    return zs;
}

CountingReport counting_function(const ZeroSet& zeros, const std::vector<double>& radii,
                                 double delta)
{
    if (delta < 0.0 || delta > kPi / 2.0)
        throw Error(ErrorKind::Parameter, "counting_function: delta must lie in [0, pi/2]");
    CountingReport rep;
    rep.radii = radii;
    rep.delta = delta;
    const Rect& R = zeros.region;
    for (double r : radii) {
        if (!zeros.zeros.empty() || R.width() > 0.0) {
            bool covered = R.re_lo <= -r && R.re_hi >= r;
            if (!covered && !zeros.zeros.empty())
                throw Error(ErrorKind::Parameter, "counting_function: radius exceeds the region");
        }
        int np = 0, nm = 0;
        for (const auto& z : zeros.zeros) {
            cplx k = z.location;
            if (std::abs(k) > r)
                continue;
            double ang = std::abs(std::arg(k));
            bool in_sector = delta == 0.0 || (ang > delta && ang < kPi - delta);
            if (!in_sector)
                continue;
            if (k.real() >= 0.0)
                np += z.multiplicity;
            if (k.real() <= 0.0)
                nm += z.multiplicity;
        }
        rep.counts_plus.push_back(np);
        rep.counts_minus.push_back(nm);
    }
    if (radii.size() >= 2) {
        Eigen::MatrixXd A(radii.size(), 2);
        Eigen::VectorXd y(radii.size());
        for (std::size_t i = 0; i < radii.size(); ++i) {
            A(i, 0) = radii[i];
            A(i, 1) = 1.0;
            y(i) = 0.5 * (rep.counts_plus[i] + rep.counts_minus[i]);
        }
        Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
        rep.fitted_slope = c(0);
    }
    return rep;
}

ForbiddenDomainFit forbidden_fit(const ZeroSet& res, double gamma, double epsilon,
                                 const std::vector<double>& strip_depths)
{
    if (!(gamma > 0.0) || !(epsilon > 0.0))
        throw Error(ErrorKind::Parameter, "forbidden_fit: gamma and epsilon must be positive");
    if (res.zeros.empty())
        throw Error(ErrorKind::Precondition, "forbidden_fit: no resonances");
    ForbiddenDomainFit fit;
    fit.epsilon = epsilon;
    for (const auto& z : res.zeros) {
        if (z.location.imag() >= 0.0)
            throw Error(ErrorKind::Class, "forbidden_fit: resonance outside the lower half-plane");
        double m = std::abs(z.location);
        fit.C = std::max(fit.C, m * (std::exp(2.0 * gamma * z.location.imag()) - epsilon));
    }
    for (std::size_t i = 0; i < res.zeros.size(); ++i) {
        cplx k = res.zeros[i].location;
        double lhs = 2.0 * gamma * k.imag();
        double rhs = std::log(epsilon + fit.C / std::abs(k));
        if (lhs > rhs + 1e-12 * std::max(1.0, std::abs(rhs)))
            fit.violations.push_back(static_cast<int>(i));
    }
    for (double A : strip_depths) {
        int c = 0;
        for (const auto& z : res.zeros)
            if (z.location.imag() > -A)
                c += z.multiplicity;
        fit.strip_depths.push_back(A);
        fit.strip_counts.push_back(c);
    }
    return fit;
}

Rect default_resonance_region(double gamma)
{
    return {-40.0 / gamma, 40.0 / gamma, -12.0 / gamma, 0.0};
}

}  // namespace dirac
