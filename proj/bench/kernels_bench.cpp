// Serial reference vs OpenMP kernels on flattened fields.
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "fnls/kernels.hpp"

using namespace fnls::kernels;

namespace {

double seconds(const std::function<void()>& f, int reps) {
    f();
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

volatile double sink = 0.0;

}  // namespace

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? std::stoul(argv[1]) : (1u << 20);
    const int reps = argc > 2 ? std::stoi(argv[2]) : 20;
    std::vector<cplx> a(n), b(n);
    std::vector<double> w(n), out(n);
    std::vector<std::uint8_t> mask(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = {std::sin(0.001 * i), std::cos(0.002 * i)};
        b[i] = {std::cos(0.003 * i), 0.5};
        w[i] = 1.0 + 0.5 * std::sin(0.01 * i);
        mask[i] = (i % 3) != 0;
    }
    std::printf("size %zu, reps %d, omp threads %d\n", n, reps, omp_get_max_threads());
    std::printf("%-22s %12s %12s %8s\n", "kernel", "serial [ms]", "omp [ms]", "speedup");

    auto row = [&](const char* name, const std::function<void()>& s, const std::function<void()>& p) {
        const double ts = seconds(s, reps), tp = seconds(p, reps);
        std::printf("%-22s %12.3f %12.3f %8.2f\n", name, 1e3 * ts, 1e3 * tp, ts / tp);
    };
    row("linear_phase", [&] { serial::linear_phase(a, w, 1e-9, mask); }, [&] { omp::linear_phase(a, w, 1e-9, mask); });
    row("phase_rotate", [&] { serial::phase_rotate(a, w, 1e-9); }, [&] { omp::phase_rotate(a, w, 1e-9); });
    row("scale", [&] { serial::scale(a, w); }, [&] { omp::scale(a, w); });
    row("abs_pow", [&] { serial::abs_pow(a, 6.0, out); }, [&] { omp::abs_pow(a, 6.0, out); });
    row("sum_abs2", [&] { sink = serial::sum_abs2(a); }, [&] { sink = omp::sum_abs2(a); });
    row("weighted_abs2", [&] { sink = serial::weighted_abs2(a, w); }, [&] { sink = omp::weighted_abs2(a, w); });
    row("sum_abs_pow", [&] { sink = serial::sum_abs_pow(a, 8.0 / 3.0); }, [&] { sink = omp::sum_abs_pow(a, 8.0 / 3.0); });
    row("max_abs", [&] { sink = serial::max_abs(a); }, [&] { sink = omp::max_abs(a); });
    row("inner", [&] { sink = serial::inner(a, b).real(); }, [&] { sink = omp::inner(a, b).real(); });
    row("real_weighted_inner", [&] { sink = serial::real_weighted_inner(a, w, b); },
        [&] { sink = omp::real_weighted_inner(a, w, b); });

    // agreement of the two paths
    const double rs = serial::sum_abs2(a), ro = omp::sum_abs2(a);
    std::printf("sum_abs2 relative difference serial/omp: %.2e\n", std::abs(rs - ro) / rs);
    return 0;
}
