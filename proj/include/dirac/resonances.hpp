#ifndef DIRAC_RESONANCES_HPP
#define DIRAC_RESONANCES_HPP

#include "dirac/common.hpp"

namespace dirac {

struct Rect {
    double re_lo = -1.0, re_hi = 1.0, im_lo = -1.0, im_hi = 1.0;

    bool contains(cplx z, double slack = 0.0) const
    {
        return z.real() >= re_lo - slack && z.real() <= re_hi + slack &&
               z.imag() >= im_lo - slack && z.imag() <= im_hi + slack;
    }
    double width() const { return re_hi - re_lo; }
    double height() const { return im_hi - im_lo; }
};

struct Zero {
    cplx location;
    int multiplicity = 1;
    bool cluster = false;  // Newton did not converge; location is a centroid
};

struct ZeroSet {
    std::vector<Zero> zeros;
    Rect region;
    double residual_bound = 0.0;

    int total_multiplicity() const;
};

// Sorts by modulus, then by argument.
void sort_zeros(std::vector<Zero>& zeros);

struct WindingOptions {
    int max_refine = 24;
    double max_step_arg = kPi / 4.0;
};

// Zeros (with multiplicity) of f inside rect by the argument principle.
int winding_count(const Evaluator& f, const Rect& rect, int max_refine = 24);

struct FindOptions {
    double tol = 1e-12;            // Newton step tolerance (relative to scale)
    double cluster_tol = 1e-6;     // merge distance
    double min_cell = 1e-7;        // smallest cell edge before giving up
};

// Quadtree subdivision by winding number plus Newton refinement. fd, when
// given, supplies derivatives; otherwise central differences are used.
ZeroSet find_zeros(const Evaluator& f, const Rect& region, const EvaluatorD& fd = nullptr,
                   const FindOptions& opts = {});

struct CountingReport {
    std::vector<double> radii;
    std::vector<int> counts_plus, counts_minus;
    double fitted_slope = 0.0;
    double delta = 0.0;
};

// N+-(r, delta). delta = 0 counts every zero of the half-plane; for delta > 0
// only zeros with delta < |arg k| < pi - delta are counted.
CountingReport counting_function(const ZeroSet& zeros, const std::vector<double>& radii,
                                 double delta);

struct ForbiddenDomainFit {
    double epsilon = 0.0;
    double C = 0.0;
    std::vector<int> violations;
    // Resonances with Im k > -A for each tested A.
    std::vector<double> strip_depths;
    std::vector<int> strip_counts;
};

ForbiddenDomainFit forbidden_fit(const ZeroSet& resonances, double gamma, double epsilon,
                                 const std::vector<double>& strip_depths = {0.05});

// Default resonance window [-40/gamma, 40/gamma] x [-12/gamma, 0).
Rect default_resonance_region(double gamma);

}  // namespace dirac

#endif
