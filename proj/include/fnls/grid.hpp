#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

namespace fnls {

// Periodic box [-L, L)^d with n points per axis. Flattened storage is
// row-major with axis 0 slowest; sample j on an axis sits at x = -L + j*dx,
// so the origin is index n/2. Spectral tables use FFT ordering.
class SpectralGrid {
public:
    SpectralGrid(int d, int n_per_dim, double half_length);

    int dim() const { return d_; }
    int n() const { return n_; }
    double half_length() const { return L_; }
    double dx() const { return dx_; }
    std::size_t size() const { return size_; }
    double cell_volume() const;
    double box_volume() const;

    double coordinate(int j) const { return -L_ + j * dx_; }
    double wavenumber(int j) const;
    // Largest retained |k_j| under the 2/3 rule.
    double dealias_cutoff() const;

    std::size_t origin_index() const;
    void unravel(std::size_t idx, int* multi) const;

    const std::vector<double>& k_squared() const;
    const std::vector<double>& r_squared() const;
    const std::vector<std::uint8_t>& dealias_mask() const;

    // Exact lattice shells: points whose integer offsets from the origin have
    // the same squared length share a shell and hence the same |x|.
    const std::vector<std::uint32_t>& shell_of() const;
    std::size_t shell_count() const;
    double shell_radius(std::size_t shell) const;

    bool same_as(const SpectralGrid& o) const;

private:
    void build_shells() const;

    int d_;
    int n_;
    double L_;
    double dx_;
    std::size_t size_;

    mutable std::once_flag k2_once_, r2_once_, mask_once_, shell_once_;
    mutable std::vector<double> k2_, r2_;
    mutable std::vector<std::uint8_t> mask_;
    mutable std::vector<std::uint32_t> shell_of_;
    mutable std::vector<std::uint32_t> shell_key_;
};

using GridPtr = std::shared_ptr<const SpectralGrid>;

GridPtr make_grid(int d, int n_per_dim, double half_length);

void require_same_grid(const SpectralGrid& a, const SpectralGrid& b);

}  // namespace fnls
