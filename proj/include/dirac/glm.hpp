#ifndef DIRAC_GLM_HPP
#define DIRAC_GLM_HPP

#include "dirac/fourier.hpp"
#include "dirac/jost.hpp"

#include <optional>

namespace dirac {

enum class Side { Left, Right };

Side parse_side(const std::string& name);

// Reflection coefficient on a k-grid plus its kernel F = F^-1 r sampled on a
// u-window. For q supported on [d, d + gamma] the right kernel is needed on
// [-(d + gamma), -d] and the left kernel on [d, d + gamma].
struct ReflectionData {
    Side side = Side::Left;
    SpectralGrid r;
    Profile kernel;
    double truncation_estimate = 0.0;
};

// r+ = -conj(b)/a or r- = b/a on the grid.
SpectralGrid reflection_from_ab(const SpectralGrid& a, const SpectralGrid& b, Side side);

// Kernel on n nodes spanning the window above. The edge model handles the
// slowly decaying tail caused by jumps of q at the support ends.
ReflectionData make_reflection_data(const SpectralGrid& r, Side side, double support_lo,
                                    double gamma, int n, bool edge_model = true);

// Off-diagonal entry Omega_12(u) on u_p = u0 + p h. Omega_21 = conj(Omega_12).
// Right: Omega_12(u) = F+(-u), vanishing for u beyond the last node.
// Left: Omega_12(u) = conj F-(u), vanishing before the first node.
struct OmegaKernel {
    Side side = Side::Left;
    double u0 = 0.0;
    double h = 1.0;
    std::vector<cplx> omega12;

    int size() const { return static_cast<int>(omega12.size()); }
};

OmegaKernel glm_kernel(const ReflectionData& r);

// Gamma(x, s) on the s-window at one x. Gamma11 = conj Gamma22 and
// Gamma21 = conj Gamma12, so two entries are stored.
struct TransformationKernel {
    double x = 0.0;
    std::vector<double> s;
    std::vector<cplx> g11, g12;
};

struct GlmSolution {
    std::vector<double> x;
    std::vector<cplx> q;
    std::vector<TransformationKernel> kernels;
    double max_condition = 1.0;
};

// Solves the GLM equation at x_i = u0 + i h for i in [0, size) by trapezoid
// Nystrom discretization of the scalar reduction; q(x) = -Gamma+_12(x, 0)
// (right) or Gamma-_12(x, 0) (left).
GlmSolution solve_glm(const OmegaKernel& omega, bool keep_kernels = false);

// Spectral grid used for inversion.
struct InversionGrid {
    double kmax = 96.0;
    double dk = kPi / 32.0;
};

InversionGrid default_inversion_grid(double gamma);

// Other-side reflection coefficient via the outer function of 1 - |r|^2.
SpectralGrid left_right(const SpectralGrid& r, Side from);

// Potential on [support_lo, support_lo + gamma] from reflection data. With
// extrapolate the Nystrom solve runs at spacings h and h/2 and the two are
// combined to cancel the h^2 term. edge_model = false is for data that already
// decays inside the k-window.
Potential invert_reflection(const SpectralGrid& r, Side side, double gamma, int n,
                            double support_lo = 0.0, double* condition = nullptr,
                            bool extrapolate = true, bool edge_model = true);

struct InvertReport {
    Potential q;
    bool class_p = false;
    double hull_lo = 0.0, hull_hi = 0.0;
    double condition = 1.0;
};

// b -> a (outer function, unless a is supplied) -> r -> GLM.
InvertReport invert_from_b(const Evaluator& b, double gamma, int n, Side side = Side::Left,
                           const Evaluator& a = nullptr,
                           std::optional<InversionGrid> grid = std::nullopt);

// Forward data for a potential on the inversion grid.
struct ForwardGrid {
    SpectralGrid a, b;
};
ForwardGrid forward_grid(const Potential& q, const InversionGrid& grid, double tol = 1e-10);

}  // namespace dirac

#endif
