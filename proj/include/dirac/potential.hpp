#ifndef DIRAC_POTENTIAL_HPP
#define DIRAC_POTENTIAL_HPP

#include "dirac/common.hpp"

#include <cstdint>
#include <map>

namespace dirac {

// Sampled potential supported on [offset, offset + gamma].
//
// The value at x is exp(i(phase + 2 carrier x)) times the piecewise-linear
// interpolant of the samples. Keeping phase, carrier and offset as separate
// fields lets the symmetry transforms act exactly, without resampling.
struct Potential {
    double gamma = 1.0;
    double offset = 0.0;
    double carrier = 0.0;
    double phase = 0.0;
    std::vector<cplx> samples;

    int n() const { return static_cast<int>(samples.size()); }
    double step() const { return gamma / (n() - 1); }
    double node(int j) const { return offset + j * step(); }
    double lo() const { return offset; }
    double hi() const { return offset + gamma; }

    // q(x_j) including phase and carrier.
    cplx value_at_node(int j) const;
    // q(x), zero outside the support.
    cplx operator()(double x) const;
    // Node values with phase and carrier applied.
    std::vector<cplx> node_values() const;
    // Sample indices where the interpolant has a kink (ends always included).
    std::vector<int> breakpoints() const;

    double max_abs() const;
    double l2_norm() const;
    void validate() const;
};

enum class PotentialKind { Zero, Constant, Bump, RandomBandlimited };

// params: "c_re", "c_im" (constant); "amplitude", "width" (bump);
// "amplitude", "bands" (random_bandlimited).
Potential generate(PotentialKind kind, double gamma, int n,
                   const std::map<std::string, double>& params = {}, std::uint64_t seed = 0);

PotentialKind parse_potential_kind(const std::string& name);

Potential from_function(const std::function<cplx(double)>& f, double gamma, int n);

enum class TransformKind { Reflect, Conjugate, Phase, Shift, Modulate };

TransformKind parse_transform_kind(const std::string& name);

Potential transform(const Potential& q, TransformKind kind, double param = 0.0);

// Moves the support back to [0, gamma] and bakes phase and carrier into the
// samples. Returns the offset that was removed.
Potential canonical_form(const Potential& q, double* removed_offset = nullptr);

struct SymmetryFlags {
    bool even = false;
    bool odd = false;
    bool real = false;
    double tolerance = 0.0;
};

SymmetryFlags classify_symmetry(const Potential& q, double tol = 1e-8);

// Relative L2 distance between two potentials sampled on the same grid.
double relative_l2(const Potential& q, const Potential& ref);
// L2 distance ||q - p|| evaluated on the union grid of both supports.
double l2_distance(const Potential& q, const Potential& p);

// Point values g of a smooth potential on the nodes give a piecewise-linear
// interpolant whose cell averages are off by h^2 g''/12. These samples,
// g - (h^2/12) g'', reproduce the low-frequency content of g instead.
std::vector<cplx> samples_from_point_values(const std::vector<cplx>& g);

// True if both end samples exceed tol * max|q| (class convention).
bool satisfies_hull_convention(const Potential& q, double tol = 1e-6);

}  // namespace dirac

#endif
