#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace dirac::detail {

namespace {

std::mutex plan_lock;
std::map<std::pair<int, int>, fftw_plan> plans;

fftw_plan plan_for(int n, int sign)
{
    std::lock_guard<std::mutex> g(plan_lock);
    auto key = std::make_pair(n, sign);
    auto it = plans.find(key);
    if (it != plans.end())
        return it->second;
    fftw_complex* buf = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(n, buf, buf, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    plans[key] = p;
    return p;
}

}  // namespace

void fft_inplace(std::vector<cplx>& data, int sign)
{
    if (data.empty())
        return;
    fftw_plan p = plan_for(static_cast<int>(data.size()), sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, ptr, ptr);
}

int good_fft_size(int n)
{
    for (int m = std::max(n, 1);; ++m) {
        int r = m;
        for (int f : {2, 3, 5})
            while (r % f == 0)
                r /= f;
        if (r == 1)
            return m;
    }
}

}  // namespace dirac::detail
