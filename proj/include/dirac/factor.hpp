#ifndef DIRAC_FACTOR_HPP
#define DIRAC_FACTOR_HPP

#include "dirac/fourier.hpp"
#include "dirac/resonances.hpp"

#include <optional>

namespace dirac {

// Phase of the leading Taylor coefficient of b at 0 and the signs of Im z_n
// over the nonzero zeros of b. Zeros are ordered by modulus, ties broken by
// real part, so that z and conj(z) take the same slot.
struct XiSequence {
    bool defined = false;
    cplx xi0{1.0};
    int p = 0;
    std::vector<int> signs;
    std::vector<cplx> zeros;  // multiplicity-expanded, in sign order
    double realness_tol = 1e-6;
};

void sort_for_xi(std::vector<cplx>& zeros);

// Order p of the zero at 0 and f^{(p)}(0)/p!, from contour integrals on |k| = radius.
std::pair<int, cplx> leading_coefficient(const Evaluator& f, double radius = 0.1);

// b identically zero gives defined = false.
XiSequence xi_of(const Evaluator& b, const ZeroSet& zeros, double realness_tol = 1e-6);

// B = a a* - 1 with a*(k) = conj(a(conj k)).
Evaluator modulus_function(const Evaluator& a);

// exp(u + i H u) on the grid, u = log|a|, with an analytic correction for the
// c/k^2 tail of u beyond the window.
SpectralGrid outer_from_log_modulus(const SpectralGrid& u, int pad = 16);

// Outer-function reconstruction of a from b on the grid of b.
SpectralGrid a_from_b_grid(const SpectralGrid& b);

struct AFromB {
    SpectralGrid a;
    Evaluator eval;  // Cauchy integral above the line, a a* - b b* = 1 below
};

AFromB a_from_b(const SpectralGrid& b, const Evaluator& b_eval = nullptr);

struct BFromA {
    Evaluator eval;       // tail-corrected truncated product
    Evaluator raw;        // plain truncated product over |zeta| <= R
    Evaluator raw_half;   // plain truncated product over |zeta| <= R/2
    double abs_C = 0.0;
    int p = 0;
    int factors = 0;
    double convergence_estimate = 0.0;
};

// Hadamard product b = xi0 |C|^{1/2} k^p e^{i gamma k} prod (1 - k/zeta_n) with
// zeta_n = z_n or conj z_n per the sign data. zeros_B are the zeros of
// B = a a* - 1 in the closed upper half-plane (real zeros carry even
// multiplicity). For support [d, d + gamma] the exponential factor is
// e^{ik(gamma + 2d)}. The grid, when given, is used for the convergence estimate.
BFromA b_from_a_xi(const Evaluator& a, const XiSequence& xi, const ZeroSet& zeros_B,
                   double gamma, double truncation_radius, double support_lo = 0.0,
                   const std::vector<double>& check_grid = {});

// Search box for the zeros of b with |Re| <= R. The edges are offset so that
// no edge runs along the real axis, where the zeros of real-type b sit.
Rect b_zero_region(double gamma, double R);

// Zeros of B = a a* - 1 with Im >= 0 inside |Re| <= R.
ZeroSet modulus_zeros(const Evaluator& a, double gamma, double R);

// g(k)/(k - z) for g entire with g(z) = 0, smooth through k = z.
cplx divide_out(const Evaluator& g, cplx z, cplx k, double radius = 1e-3);

// b' = b e^{i alpha} prod_G (1 - k/conj z_n)(1 - k/z_n)^{-1}.
Evaluator iso_factor(const Evaluator& b, const ZeroSet& zeros, const std::vector<int>& flip,
                     double alpha, double realness_tol = 1e-6);

// b' = b (k - z_to)/(k - z_from), or b/(k - z_from) when z_to is empty.
Evaluator shift_zero(const Evaluator& b, cplx z_from, std::optional<cplx> z_to);

bool is_symmetric_a(const Evaluator& a, double tol = 1e-8);
bool resonance_move_admissible(cplx k_from, cplx k_to);

// a' = a (k - k_to)(k + conj k_to) / ((k - k_from)(k + conj k_from)).
Evaluator shift_resonance(const Evaluator& a, cplx k_from, cplx k_to);

}  // namespace dirac

#endif
