#pragma once

#include <span>

#include "fnls/field.hpp"

namespace fnls {

// In-place d-dimensional transforms over a whole grid. Forward is
// unnormalized, inverse carries the 1/N so that inverse(forward(f)) = f.
// Plans are created once per (d, n, direction) and shared; execution is
// reentrant.
void fft_forward(std::span<cplx> data, const SpectralGrid& g);
void fft_inverse(std::span<cplx> data, const SpectralGrid& g);

}  // namespace fnls
