#ifndef DIRAC_IO_HPP
#define DIRAC_IO_HPP

#include "dirac/canonical.hpp"
#include "dirac/factor.hpp"
#include "dirac/fourier.hpp"
#include "dirac/potential.hpp"
#include "dirac/resonances.hpp"

#include <map>

namespace dirac {

// Text formats. Every reader throws Error(IO) on malformed input.

// "# dirac-potential v1 gamma=<g> n=<n>", then "x re im" per node. Phase and
// carrier are baked into the values; the offset is the first x.
void write_potential(const std::string& path, const Potential& q);
Potential read_potential(const std::string& path);

// k with a and b columns.
struct ScatteringTable {
    std::vector<double> k;
    std::vector<cplx> a, b;

    int size() const { return static_cast<int>(k.size()); }
    // Uniform grid view of a column; throws if k is not uniform.
    SpectralGrid grid_a() const;
    SpectralGrid grid_b() const;
};

// "# dirac-scattering v1 nk=<n>", then "k re_a im_a re_b im_b".
void write_scattering(const std::string& path, const ScatteringTable& t);
ScatteringTable read_scattering(const std::string& path);

// JSON array of {"re", "im", "mult"}.
void write_zeros(const std::string& path, const ZeroSet& z);
ZeroSet read_zeros(const std::string& path);

// JSON {"xi0_re", "xi0_im", "p", "signs"}; the zeros the signs refer to are
// kept under "zeros" so the angle can be recomputed. Undefined sign data has
// null xi0 entries.
void write_xi(const std::string& path, const XiSequence& xi);
XiSequence read_xi(const std::string& path);

// "# canonical-hamiltonian v1 n=<n>", then "x p q" when normalized
// (h = [[p, q], [q, (1 + q^2)/p]]) or "x h11 h12 h22".
void write_hamiltonian(const std::string& path, const Hamiltonian& h);
Hamiltonian read_hamiltonian(const std::string& path);

// Two-column "x y" text.
void write_columns(const std::string& path, const std::vector<double>& x,
                   const std::vector<double>& y);

// Sidecar "<path>.meta" as JSON: the given entries plus tool version and a
// timestamp.
void write_meta(const std::string& path, const std::map<std::string, std::string>& entries);

const char* tool_version();

}  // namespace dirac

#endif
