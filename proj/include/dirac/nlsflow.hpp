#ifndef DIRAC_NLSFLOW_HPP
#define DIRAC_NLSFLOW_HPP

#include "dirac/factor.hpp"
#include "dirac/glm.hpp"

namespace dirac {

// rho(k) = (1/pi) log|a(k)|.
std::vector<double> action_direct(const Evaluator& a, const std::vector<double>& k);

struct ActionSeries {
    std::vector<double> k;
    std::vector<double> series;       // truncated at |k_n| <= R
    std::vector<double> series_half;  // truncated at |k_n| <= R/2
    std::vector<double> corrected;    // series plus the density estimate of the tail
    double radius = 0.0;
    double tail_estimate = 0.0;       // max |series - series_half|
    bool insufficient_radius = false; // the resonance window does not reach R
};

// (1/pi) (log|a(0)| + sum log|1 - k/k_n|) over resonances with |k_n| <= R.
ActionSeries action_series(const ZeroSet& resonances, double log_abs_a0,
                           const std::vector<double>& k, double R, double gamma);

struct AngleProfile {
    std::vector<double> k;
    std::vector<double> formula;   // arg xi0 + gamma k - pi I(k) + int_0^k w, plus 4 k^2 t
    std::vector<double> direct;    // unwrapped arg b plus 4 k^2 t; empty without b
    std::vector<char> valid;       // 0 at nodes on a real zero
    std::vector<double> jumps;     // real zeros inside the grid range
    double t = 0.0;
    double tail_bound = 0.0;
};

// Angle from the zero data. xi carries the zeros of b; those with |z| <= R
// enter w. For support [d, d + gamma] the linear term is (gamma + 2d) k.
AngleProfile angle(const XiSequence& xi, const std::vector<double>& k, double t, double gamma,
                   double support_lo = 0.0, double R = 1e300, const Evaluator& b = nullptr);

// int |q'|^2 + |q|^4 by quadrature on the nodes.
double nls_energy(const Potential& q);

struct EvolveResult {
    Potential q;
    double window_lo = 0.0, window_hi = 0.0;
    double tail_ratio = 0.0;   // kernel size outside the window over its maximum
    double condition = 1.0;
};

// b -> e^{4itk^2} b with a fixed, then left GLM on the window where the new
// kernel exceeds 1e-6 of its maximum. The node spacing of q is kept.
EvolveResult evolve(const Potential& q, double t, std::optional<InversionGrid> grid = std::nullopt);

}  // namespace dirac

#endif
