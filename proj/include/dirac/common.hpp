#ifndef DIRAC_COMMON_HPP
#define DIRAC_COMMON_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dirac {

using cplx = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;
constexpr cplx kI{0.0, 1.0};

// Error kinds map onto CLI exit codes: IO -> 2, everything else -> 1.
enum class ErrorKind { Parameter, Precondition, Class, Numerical, IO };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Complex function of a complex variable.
using Evaluator = std::function<cplx(cplx)>;
// Value and derivative at a point.
using EvaluatorD = std::function<std::pair<cplx, cplx>(cplx)>;

// Worker count from DIRAC_SCATTER_THREADS, defaulting to all cores.
int thread_count();

// Runs body(i) for i in [0, n). Each index is independent, so results do not
// depend on the number of workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Uniform grid helper: n points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace dirac

#endif
