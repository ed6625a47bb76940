#ifndef DIRAC_JOST_HPP
#define DIRAC_JOST_HPP

#include "dirac/potential.hpp"

#include <array>
#include <memory>

namespace dirac {

// 2x2 complex matrix stored row-major.
struct Mat2 {
    cplx m11{1.0}, m12{0.0}, m21{0.0}, m22{1.0};

    static Mat2 identity() { return {}; }
    cplx det() const { return m11 * m22 - m12 * m21; }
    Mat2 operator*(const Mat2& o) const
    {
        return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
                m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
    }
    double max_abs_diff(const Mat2& o) const;
};

// e^{i k x sigma3}
Mat2 free_propagator(cplx k, double x);

enum class Gauge { Raw, Reduced };

struct JostState {
    double x = 0.0;
    Mat2 matrix;
    cplx k{0.0};
    Gauge gauge = Gauge::Raw;
};

struct PropagateStats {
    long steps = 0;
    long rejected = 0;
};

// Solution at x_to of f' = (Q + i k sigma3) f with f(x_from) = init. Integrated
// in the reduced gauge m = f e^{-ikx sigma3} by an adaptive Dormand-Prince
// 4(5) pair; tol bounds the local error per unit length.
Mat2 propagate(const Potential& q, cplx k, double x_from, double x_to, const Mat2& init,
               double tol = 1e-10, PropagateStats* stats = nullptr);

struct Transition {
    cplx a, b;
};

struct TransitionD {
    cplx a, b, da, db;
};

// Full transition matrix A(k) with f+ = f- A.
Mat2 transition_matrix(const Potential& q, cplx k, double tol = 1e-10);
Transition transition(const Potential& q, cplx k, double tol = 1e-10);
// Values and k-derivatives from the variational system.
TransitionD transition_with_derivative(const Potential& q, cplx k, double tol = 1e-10);

struct TransitionCoefficients {
    double gamma = 1.0;
    std::vector<double> k;
    std::vector<cplx> a, b;
    Evaluator eval_a, eval_b;
    EvaluatorD eval_a_d, eval_b_d;
};

// Grid values at real k plus evaluators valid anywhere in the plane.
TransitionCoefficients transition_coefficients(const Potential& q, const std::vector<double>& k,
                                               double tol = 1e-10);

struct ScatteringMatrixValue {
    double k = 0.0;
    cplx transmission, r_plus, r_minus;
    Mat2 matrix;  // [[1/a, -conj(b)/a], [b/a, 1/a]]
};

ScatteringMatrixValue scattering_matrix(const Potential& q, double k, double tol = 1e-10);

// Residuals of b(k) = +-e^{2i s k} b(-k) (even, odd) and b(k) = conj b(-k)
// (real) over real k, relative to max |b|; s = gamma + 2 offset.
struct BClassResiduals {
    double even = 0.0, odd = 0.0, real = 0.0;
};
BClassResiduals b_class_residuals(const Evaluator& b, const std::vector<double>& k, double s);

}  // namespace dirac

#endif
