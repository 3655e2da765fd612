#pragma once

#include <complex>
#include <cstdint>
#include <span>

namespace fnls::kernels {

using cplx = std::complex<double>;

// Pointwise maps and reductions over flattened fields. The serial versions
// are the reference; the omp versions split the index range into a fixed
// number of blocks so reductions do not depend on the thread count.

namespace serial {
void scale(std::span<cplx> a, std::span<const double> m);
// a *= exp(-i tau s); entries with mask == 0 are zeroed. An empty mask keeps all.
void linear_phase(std::span<cplx> a, std::span<const double> s, double tau,
                  std::span<const std::uint8_t> mask);
// u *= exp(i tau v)
void phase_rotate(std::span<cplx> u, std::span<const double> v, double tau);
void abs_pow(std::span<const cplx> u, double p, std::span<double> out);
double sum_abs2(std::span<const cplx> a);
double weighted_abs2(std::span<const cplx> a, std::span<const double> w);
double sum_abs_pow(std::span<const cplx> a, double r);
double max_abs(std::span<const cplx> a);
double max_value(std::span<const double> a);
// sum a * conj(b)
cplx inner(std::span<const cplx> a, std::span<const cplx> b);
// sum w * Re(a * conj(b))
double real_weighted_inner(std::span<const cplx> a, std::span<const double> w,
                           std::span<const cplx> b);
}  // namespace serial

namespace omp {
void scale(std::span<cplx> a, std::span<const double> m);
void linear_phase(std::span<cplx> a, std::span<const double> s, double tau,
                  std::span<const std::uint8_t> mask);
void phase_rotate(std::span<cplx> u, std::span<const double> v, double tau);
void abs_pow(std::span<const cplx> u, double p, std::span<double> out);
double sum_abs2(std::span<const cplx> a);
double weighted_abs2(std::span<const cplx> a, std::span<const double> w);
double sum_abs_pow(std::span<const cplx> a, double r);
double max_abs(std::span<const cplx> a);
double max_value(std::span<const double> a);
cplx inner(std::span<const cplx> a, std::span<const cplx> b);
double real_weighted_inner(std::span<const cplx> a, std::span<const double> w,
                           std::span<const cplx> b);
}  // namespace omp

using namespace omp;

}  // namespace fnls::kernels
