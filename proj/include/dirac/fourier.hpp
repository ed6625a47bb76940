#ifndef DIRAC_FOURIER_HPP
#define DIRAC_FOURIER_HPP

#include "dirac/common.hpp"

#include <optional>

namespace dirac {

// Convention used everywhere:
//   (F g)(k)    = int g(s) e^{2iks} ds
//   (F^-1 f)(s) = (1/pi) int f(k) e^{-2iks} dk

// Values on the uniform grid k_j = k0 + j dk.
struct SpectralGrid {
    double k0 = 0.0;
    double dk = 1.0;
    std::vector<cplx> values;

    int size() const { return static_cast<int>(values.size()); }
    double k(int j) const { return k0 + j * dk; }
    double kmax() const { return k(size() - 1); }
    std::vector<double> k_values() const;
};

// Symmetric grid with nk nodes on [-kmax, kmax].
SpectralGrid make_grid(double kmax, int nk);
// Grid on [-kmax, kmax] with spacing close to dk (node count rounded up).
SpectralGrid make_grid_spacing(double kmax, double dk);
SpectralGrid sample(const Evaluator& f, const SpectralGrid& shape);

// Values on the uniform grid s_j = s0 + j ds.
struct Profile {
    double s0 = 0.0;
    double ds = 1.0;
    std::vector<cplx> values;

    int size() const { return static_cast<int>(values.size()); }
    double s(int j) const { return s0 + j * ds; }
};

// Trapezoid quadrature of F g on the requested grid, FFT-accelerated when the
// grids are commensurate. Rejects grids violating dk <= pi / (2 window).
SpectralGrid forward_transform(const Profile& g, double k0, double dk, int nk);

struct InverseResult {
    Profile profile;
    bool tail_warning = false;
    double tail_ratio = 0.0;  // max |f| at the edges over max |f|
};

// F^-1 on the s-grid implied by the k-grid (ds = pi / (M dk)), centred at 0.
InverseResult inverse_transform(const SpectralGrid& f, int pad = 2);

// Known edge structure for the tail-corrected inverse. Jumps and kinks at
// support starts are represented by one-sided exponentials that are closed on
// the inside of the support; the remainder decays fast and is summed directly.
struct EdgeModel {
    std::vector<double> starts;
    std::vector<double> ends;
    double mu = 4.0;
    int orders = 5;
    double band_lo = 0.5;
    double band_hi = 0.95;
};

// F^-1 f evaluated at s_j = s0 + j ds by direct summation, with the 1/k tail
// handled analytically when a model is given.
Profile inverse_transform_at(const SpectralGrid& f, double s0, double ds, int ns,
                             const std::optional<EdgeModel>& model = std::nullopt);

// Riesz projection C+ = F chi_+ F^-1 on the grid. pad > 1 zero-extends the
// k-window before the transform.
SpectralGrid hardy_project(const SpectralGrid& f, int pad = 1);

// Boundary values of the function analytic in the upper half-plane whose real
// part on the line is u (u real), vanishing at infinity: u + i H u.
SpectralGrid analytic_completion(const SpectralGrid& u, int pad = 16);

struct SupportEstimate {
    double inf_supp = 0.0;
    double sup_supp = 0.0;
    double tau_plus = 0.0;
    double tau_minus = 0.0;
    bool has_types = false;
};

// Support hull of F^-1 f. With an off-axis evaluator the types tau+- are fitted
// from log|f(+-iy)| on y in [10, 40] / scale and the hull is [-tau+/2, tau-/2];
// otherwise the hull is thresholded from a tapered inverse transform.
SupportEstimate support_hull(const SpectralGrid& f, double threshold = 1e-6,
                             const Evaluator& off_axis = nullptr, double scale = 1.0);

// Exponential types along +i infinity and -i infinity.
std::pair<double, double> exponential_types(const Evaluator& f, double scale = 1.0);

double l2_norm(const SpectralGrid& f);
double l2_norm(const Profile& g);

}  // namespace dirac

#endif
