#ifndef DIRAC_CANONICAL_HPP
#define DIRAC_CANONICAL_HPP

#include "dirac/jost.hpp"
#include "dirac/potential.hpp"

namespace dirac {

// Real symmetric 2x2 matrix function on a grid.
struct Hamiltonian {
    std::vector<double> x;
    std::vector<double> h11, h12, h22;
    bool normalized = false;

    int n() const { return static_cast<int>(x.size()); }
    double det(int j) const { return h11[j] * h22[j] - h12[j] * h12[j]; }
    // Positive-definite at every node, grid strictly increasing.
    void validate() const;
    // det = 1 to tol and h(x0) = I to 1e-10.
    bool is_normalized(double tol = 1e-8) const;
};

// h_q = r^T r with r = M(x, 0), M' = J V_q M, M(x0) = I, J = [[0, 1], [-1, 0]],
// V_q = [[q1, q2], [q2, -q1]] and q = -q2 + i q1. Output on the nodes of q.
Hamiltonian hamiltonian_of(const Potential& q, int substeps = 8);

// Inverse map on a normalized Hamiltonian over a uniform grid.
Potential potential_of(const Hamiltonian& h);

struct NormalizationData {
    std::vector<double> x;      // input grid
    std::vector<double> rho;    // sqrt(det h)
    std::vector<double> theta;  // int rho, from the first node
    // Upper-triangular C with C^T C = h(x0) / sqrt(det h(x0)).
    double c11 = 1.0, c12 = 0.0, c22 = 1.0;
    // h0 at theta(x_j) before resampling, for the exact factorization identity.
    Hamiltonian h0_at_nodes;
};

struct Normalized {
    Hamiltonian h0;  // on the uniform theta grid
    NormalizationData data;
};

// h = rho C^T (h0 o theta) C.
Normalized normalize(const Hamiltonian& h);

// rho C^T (h0 o theta) C on the input grid. With exact_nodes the unresampled
// values are used; otherwise h0 is interpolated at theta(x_j).
Hamiltonian reassemble(const Normalized& n, bool exact_nodes = true);

struct HamiltonianScattering {
    double h0_11 = 1.0, h0_12 = 0.0, h0_22 = 1.0;  // h at the first node
    std::vector<double> det;                        // det h profile
    Potential q;                                    // potential of the normalized part
    std::vector<ScatteringMatrixValue> s;
};

HamiltonianScattering scattering_of_hamiltonian(const Hamiltonian& h, const std::vector<double>& k,
                                                double tol = 1e-10);

}  // namespace dirac

#endif
