#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fnls/grid.hpp"

namespace fnls {

using cplx = std::complex<double>;

enum class Representation { Physical, Spectral };

class ComplexField {
public:
    ComplexField() = default;
    explicit ComplexField(GridPtr grid, Representation rep = Representation::Physical);
    ComplexField(GridPtr grid, std::vector<cplx> values, Representation rep = Representation::Physical);

    const SpectralGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    Representation representation() const { return rep_; }
    bool is_physical() const { return rep_ == Representation::Physical; }

    std::vector<cplx>& values() { return values_; }
    const std::vector<cplx>& values() const { return values_; }
    std::span<cplx> span() { return values_; }
    std::span<const cplx> span() const { return values_; }
    std::size_t size() const { return values_.size(); }
    cplx& operator[](std::size_t i) { return values_[i]; }
    const cplx& operator[](std::size_t i) const { return values_[i]; }

    ComplexField& operator*=(cplx s);
    ComplexField& operator+=(const ComplexField& o);
    ComplexField& operator-=(const ComplexField& o);

    bool all_finite() const;

private:
    GridPtr grid_;
    std::vector<cplx> values_;
    Representation rep_ = Representation::Physical;
};

ComplexField operator*(cplx s, ComplexField f);
ComplexField operator+(ComplexField a, const ComplexField& b);
ComplexField operator-(ComplexField a, const ComplexField& b);

struct RealField {
    GridPtr grid;
    std::vector<double> values;
};

ComplexField to_spectral(const ComplexField& f);
ComplexField to_physical(const ComplexField& f);

// Samples f(x) with x pointing at d coordinates.
template <class F>
ComplexField sample_field(const GridPtr& g, F&& f) {
    ComplexField out(g);
    const int d = g->dim();
    int m[5];
    double x[5];
    for (std::size_t i = 0; i < g->size(); ++i) {
        g->unravel(i, m);
        for (int a = 0; a < d; ++a) x[a] = g->coordinate(m[a]);
        out[i] = f(static_cast<const double*>(x));
    }
    return out;
}

template <class F>
ComplexField sample_radial(const GridPtr& g, F&& f) {
    ComplexField out(g);
    const auto& r2 = g->r_squared();
    for (std::size_t i = 0; i < g->size(); ++i) out[i] = f(std::sqrt(r2[i]));
    return out;
}

}  // namespace fnls
