#include "fnls/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fnls/errors.hpp"

namespace fnls {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

SpectralGrid::SpectralGrid(int d, int n_per_dim, double half_length)
    : d_(d), n_(n_per_dim), L_(half_length) {
    if (d < 2 || d > 5) throw InvalidInput("grid dimension must lie in [2, 5], got " + std::to_string(d));
    if (!power_of_two(n_per_dim) || n_per_dim < 4)
        throw InvalidInput("n_per_dim must be a power of two >= 4, got " + std::to_string(n_per_dim));
    if (d >= 5 && n_per_dim > 32) throw InvalidInput("n_per_dim <= 32 required for d >= 5");
    if (!(half_length > 0.0) || !std::isfinite(half_length))
        throw InvalidInput("box half length must be positive and finite");
    dx_ = 2.0 * L_ / n_;
    size_ = 1;
    for (int a = 0; a < d_; ++a) size_ *= static_cast<std::size_t>(n_);
}

double SpectralGrid::cell_volume() const { return std::pow(dx_, d_); }

double SpectralGrid::box_volume() const { return std::pow(2.0 * L_, d_); }

double SpectralGrid::wavenumber(int j) const {
    int m = j < n_ / 2 ? j : j - n_;
    return std::numbers::pi / L_ * m;
}

double SpectralGrid::dealias_cutoff() const { return std::numbers::pi / L_ * (n_ / 3); }

std::size_t SpectralGrid::origin_index() const {
    std::size_t idx = 0;
    for (int a = 0; a < d_; ++a) idx = idx * n_ + n_ / 2;
    return idx;
}

void SpectralGrid::unravel(std::size_t idx, int* multi) const {
    for (int a = d_ - 1; a >= 0; --a) {
        multi[a] = static_cast<int>(idx % n_);
        idx /= n_;
    }
}

const std::vector<double>& SpectralGrid::k_squared() const {
    std::call_once(k2_once_, [this] {
        std::vector<double> k1(n_);
        for (int j = 0; j < n_; ++j) k1[j] = wavenumber(j) * wavenumber(j);
        k2_.assign(size_, 0.0);
        int m[5];
#pragma omp parallel for private(m) schedule(static)
        for (std::size_t i = 0; i < size_; ++i) {
            unravel(i, m);
            double s = 0.0;
            for (int a = 0; a < d_; ++a) s += k1[m[a]];
            k2_[i] = s;
        }
    });
    return k2_;
}

const std::vector<double>& SpectralGrid::r_squared() const {
    std::call_once(r2_once_, [this] {
        std::vector<double> x1(n_);
        for (int j = 0; j < n_; ++j) x1[j] = coordinate(j) * coordinate(j);
        r2_.assign(size_, 0.0);
        int m[5];
#pragma omp parallel for private(m) schedule(static)
        for (std::size_t i = 0; i < size_; ++i) {
            unravel(i, m);
            double s = 0.0;
            for (int a = 0; a < d_; ++a) s += x1[m[a]];
            r2_[i] = s;
        }
    });
    return r2_;
}

const std::vector<std::uint8_t>& SpectralGrid::dealias_mask() const {
    std::call_once(mask_once_, [this] {
        const int keep = n_ / 3;
        mask_.assign(size_, 0);
        int m[5];
#pragma omp parallel for private(m) schedule(static)
        for (std::size_t i = 0; i < size_; ++i) {
            unravel(i, m);
            bool ok = true;
            for (int a = 0; a < d_ && ok; ++a) {
                int s = m[a] < n_ / 2 ? m[a] : m[a] - n_;
                ok = std::abs(s) <= keep;
            }
            mask_[i] = ok ? 1 : 0;
        }
    });
    return mask_;
}

void SpectralGrid::build_shells() const {
    std::call_once(shell_once_, [this] {
        const std::size_t max_key = static_cast<std::size_t>(d_) * (n_ / 2) * (n_ / 2);
        std::vector<std::uint32_t> keys(size_);
        std::vector<std::uint8_t> used(max_key + 1, 0);
        int m[5];
        for (std::size_t i = 0; i < size_; ++i) {
            unravel(i, m);
            std::uint32_t key = 0;
            for (int a = 0; a < d_; ++a) {
                int o = m[a] - n_ / 2;
                key += static_cast<std::uint32_t>(o * o);
            }
            keys[i] = key;
            used[key] = 1;
        }
        std::vector<std::uint32_t> index_of(max_key + 1, 0);
        for (std::size_t k = 0; k <= max_key; ++k) {
            if (used[k]) {
                index_of[k] = static_cast<std::uint32_t>(shell_key_.size());
                shell_key_.push_back(static_cast<std::uint32_t>(k));
            }
        }
        shell_of_.resize(size_);
        for (std::size_t i = 0; i < size_; ++i) shell_of_[i] = index_of[keys[i]];
    });
}

const std::vector<std::uint32_t>& SpectralGrid::shell_of() const {
    build_shells();
    return shell_of_;
}

std::size_t SpectralGrid::shell_count() const {
    build_shells();
    return shell_key_.size();
}

double SpectralGrid::shell_radius(std::size_t shell) const {
    build_shells();
    return dx_ * std::sqrt(static_cast<double>(shell_key_.at(shell)));
}

bool SpectralGrid::same_as(const SpectralGrid& o) const {
    return d_ == o.d_ && n_ == o.n_ && L_ == o.L_;
}

GridPtr make_grid(int d, int n_per_dim, double half_length) {
    return std::make_shared<const SpectralGrid>(d, n_per_dim, half_length);
}

void require_same_grid(const SpectralGrid& a, const SpectralGrid& b) {
    if (!a.same_as(b)) throw GridMismatch("fields live on different grids");
}

}  // namespace fnls
