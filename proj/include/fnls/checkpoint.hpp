#pragma once

#include <string>
#include <vector>

#include "fnls/field.hpp"
#include "fnls/model.hpp"

namespace fnls {

// "FNLS1" | d u8 | n u32 | L f64 | alpha f64 | branch u8 | t f64 | n^d (re, im) f64 pairs,
// all little-endian, payload row-major with axis 0 slowest.
struct Checkpoint {
    int d = 0;
    int n = 0;
    double L = 0.0;
    double alpha = 0.0;
    Branch branch = Branch::Power;
    double t = 0.0;
    std::vector<cplx> payload;
};

inline constexpr std::size_t kCheckpointHeaderBytes = 5 + 1 + 4 + 8 + 8 + 1 + 8;

std::vector<unsigned char> encode_checkpoint(const Checkpoint& c);
Checkpoint decode_checkpoint(const std::vector<unsigned char>& bytes);

void write_checkpoint(const std::string& path, const ComplexField& u, const ModelParams& p, double t);
Checkpoint read_checkpoint(const std::string& path);

// Field on `grid`; Dimension error when d, n or L differ.
ComplexField checkpoint_field(const Checkpoint& c, const GridPtr& grid);

}  // namespace fnls
