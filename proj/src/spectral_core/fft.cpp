#include "fnls/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace fnls {

namespace {

// FFTW's planner is not thread safe; execution with new-array calls is.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int d, int n, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_tuple(d, n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::size_t total = 1;
        for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(n);
        std::vector<int> dims(d, n);
        fftw_complex* scratch = fftw_alloc_complex(total);
        fftw_plan p = fftw_plan_dft(d, dims.data(), scratch, scratch, sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(scratch);
        plans_.emplace(key, p);
        return p;
    }

    ~PlanCache() {
        for (auto& kv : plans_) fftw_destroy_plan(kv.second);
    }

private:
    std::mutex mu_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

void execute(std::span<cplx> data, const SpectralGrid& g, int sign) {
    fftw_plan p = PlanCache::instance().get(g.dim(), g.n(), sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, ptr, ptr);
}

}  // namespace

void fft_forward(std::span<cplx> data, const SpectralGrid& g) { execute(data, g, FFTW_FORWARD); }

void fft_inverse(std::span<cplx> data, const SpectralGrid& g) {
    execute(data, g, FFTW_BACKWARD);
    const double s = 1.0 / static_cast<double>(g.size());
    const std::size_t n = data.size();
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) data[i] *= s;
}

}  // namespace fnls
